#ifndef BWM_MONTECARLO_HPP
#define BWM_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bwm/census.hpp"
#include "bwm/error.hpp"
#include "bwm/model.hpp"
#include "bwm/ordinal.hpp"
#include "bwm/rational.hpp"

namespace bwm {

struct McConfig {
  std::size_t n = 6;
  std::vector<Rational> scale = {2, 3, 4, 5, 6, 7, 8, 9};
  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  // Run the census for the exact event probability when the sample space
  // fits within this many matrices; 0 disables it.
  std::uint64_t exact_budget = kDefaultCensusBudget;
};

struct McReport {
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t violating_count = 0;
  double estimated_probability = 0.0;
  std::optional<std::uint64_t> exact_event_count;
  std::optional<std::uint64_t> exact_space_size;
  std::optional<double> exact_event_probability;
  double q_no_detection = 1.0;
  std::string rng = "splitmix64";
};

// Counter-based SplitMix64: the stream for draw i depends only on (seed, i).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index) : state_(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform on [0, range) by rejection.
  std::uint64_t below(std::uint64_t range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (true) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % range;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

inline void validate_config(const McConfig& cfg) {
  if (cfg.samples < 1) throw Error(Errc::InvalidConfig, "need at least one sample");
  if (cfg.scale.empty()) throw Error(Errc::InvalidScale, "empty scale");
  if (cfg.n < 3) throw Error(Errc::TooSmall, "need at least 3 alternatives");
}

// Draw `index` of the stream: best = 1, worst = n, every free judgment iid
// uniform over the scale.
inline BwmInstance sample_bwm(const McConfig& cfg, std::uint64_t index) {
  CounterRng rng(cfg.seed, index);
  std::vector<Rational> entries(2 * cfg.n - 3);
  for (auto& e : entries) e = cfg.scale[rng.below(cfg.scale.size())];
  return BwmInstance::from_free_entries(cfg.n, 0, cfg.n - 1, entries);
}

// q = (1 - p)^K, the chance that K independent draws all miss an event of
// probability p.
inline double detection_q(double p_viol, std::uint64_t k) {
  if (!(p_viol > 0.0 && p_viol < 1.0)) throw Error(Errc::DegenerateP, "event probability must lie in (0, 1)");
  return std::exp(static_cast<double>(k) * std::log1p(-p_viol));
}

// Smallest K with (1 - p)^K < threshold.
inline std::uint64_t min_runs(double p_viol, double threshold) {
  if (!(p_viol > 0.0 && p_viol < 1.0)) throw Error(Errc::DegenerateP, "event probability must lie in (0, 1)");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw Error(Errc::DegenerateP, "threshold must lie in (0, 1]");
  const long double log_keep = std::log1p(-static_cast<long double>(p_viol));
  const long double keep = 1.0L - static_cast<long double>(p_viol);
  const long double t = threshold;
  // Boundary decisions use direct powering in extended precision.
  const auto q = [&](std::uint64_t k) { return std::pow(keep, static_cast<long double>(k)); };
  auto k = static_cast<std::uint64_t>(std::max(1.0L, std::ceil(std::log(t) / log_keep)));
  while (q(k) >= t) ++k;
  while (k > 1 && q(k - 1) < t) --k;
  return k;
}

// Runs the exact detector on `samples` draws produced by sampler(index).
template <typename Sampler>
McReport estimate_with_sampler(const McConfig& cfg, Sampler&& sampler) {
  validate_config(cfg);
  const unsigned jobs = std::max(1u, cfg.jobs);
  std::vector<std::uint64_t> hits(jobs, 0);
  const std::uint64_t k = cfg.samples;
  const auto worker = [&](unsigned id) {
    const std::uint64_t lo = k * id / jobs;
    const std::uint64_t hi = k * (id + 1) / jobs;
    for (std::uint64_t i = lo; i < hi; ++i)
      if (detect_bwm_violations_exact(sampler(i)).has_violation()) ++hits[id];
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
  }

  McReport r;
  r.n = cfg.n;
  r.samples = k;
  r.seed = cfg.seed;
  for (auto h : hits) r.violating_count += h;
  r.estimated_probability = static_cast<double>(r.violating_count) / static_cast<double>(k);
  return r;
}

namespace detail {

inline void attach_exact(const McConfig& cfg, McReport& r) {
  if (cfg.exact_budget == 0) return;
  CensusOptions opt;
  opt.n = cfg.n;
  opt.scale.clear();
  for (const auto& v : cfg.scale) {
    if (!v.is_integer() || v.num() < 2 || v.num() > 9) return;
    opt.scale.push_back(v.num());
  }
  opt.budget = cfg.exact_budget;
  opt.jobs = std::max(1u, cfg.jobs);
  // The census enumerates distinct values; repeated scale values would
  // weight the sampler differently.
  std::vector<std::int64_t> sorted = opt.scale;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
  try {
    const auto census = enumerate_census(opt);
    r.exact_event_count = census.violating;
    r.exact_space_size = census.total;
    r.exact_event_probability = static_cast<double>(census.violating) / static_cast<double>(census.total);
  } catch (const Error& e) {
    if (e.code() != Errc::BudgetExceeded) throw;
  }
}

}  // namespace detail

inline McReport estimate_violation_probability(const McConfig& cfg) {
  auto r = estimate_with_sampler(cfg, [&](std::uint64_t i) { return sample_bwm(cfg, i); });
  detail::attach_exact(cfg, r);
  const double p = r.exact_event_probability.value_or(r.estimated_probability);
  r.q_no_detection = (p > 0.0 && p < 1.0) ? detection_q(p, r.samples) : (p <= 0.0 ? 1.0 : 0.0);
  return r;
}

}  // namespace bwm

#endif  // BWM_MONTECARLO_HPP
