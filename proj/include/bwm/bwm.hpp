#ifndef BWM_BWM_HPP
#define BWM_BWM_HPP

#include "bwm/census.hpp"
#include "bwm/error.hpp"
#include "bwm/io.hpp"
#include "bwm/llsm.hpp"
#include "bwm/model.hpp"
#include "bwm/montecarlo.hpp"
#include "bwm/ordinal.hpp"
#include "bwm/rational.hpp"
#include "bwm/session.hpp"
#include "bwm/spanning_tree.hpp"

#endif  // BWM_BWM_HPP
