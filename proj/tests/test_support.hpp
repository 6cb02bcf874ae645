#ifndef BWM_TEST_SUPPORT_HPP
#define BWM_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bwm/bwm.hpp"

namespace bwm::test {

// Six alternatives, best = 1, worst = 6: a_1j = 2, a_26 = 9, a_j6 = 2.
inline BwmInstance example1(std::int64_t a26 = 9) {
  BwmInput raw;
  raw.n = 6;
  raw.best = 0;
  raw.worst = 5;
  for (std::size_t j = 1; j <= 4; ++j) {
    raw.best_to_others[j] = Rational(2);
    raw.others_to_worst[j] = Rational(2);
  }
  raw.others_to_worst[1] = Rational(a26);
  raw.best_to_worst = Rational(2);
  return validate_bwm(raw);
}

inline BwmInstance uniform_instance(std::size_t n, const Rational& value) {
  std::vector<Rational> entries(2 * n - 3, value);
  return BwmInstance::from_free_entries(n, 0, n - 1, entries);
}

// Uniform rational with a small random denominator in [lo, hi]; falls back
// to an endpoint when no such fraction exists.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  static constexpr std::int64_t kDens[] = {1, 2, 3, 4, 5, 7, 8, 16};
  const std::int64_t den = kDens[std::uniform_int_distribution<int>(0, 7)(rng)];
  // ceil(lo * den), floor(hi * den)
  const std::int64_t lo_num = (lo.num() * den + lo.den() - 1) / lo.den();
  const std::int64_t hi_num = (hi.num() * den) / hi.den();
  if (lo_num > hi_num) return std::uniform_int_distribution<int>(0, 1)(rng) ? lo : hi;
  return Rational(std::uniform_int_distribution<std::int64_t>(lo_num, hi_num)(rng), den);
}

struct RandomBwm {
  std::size_t min_n = 3;
  std::size_t max_n = 12;
  bool on_scale = true;

  BwmInstance operator()(std::mt19937_64& rng) const {
    const auto n = std::uniform_int_distribution<std::size_t>(min_n, max_n)(rng);
    const auto best = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    auto worst = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
    if (worst >= best) ++worst;
    std::vector<Rational> entries(2 * n - 3);
    for (auto& e : entries) {
      if (on_scale)
        e = Rational(std::uniform_int_distribution<std::int64_t>(2, 9)(rng));
      else
        e = random_rational(rng, Rational(17, 16), Rational(9));
      if (e <= Rational(1)) e = Rational(2);
    }
    return BwmInstance::from_free_entries(n, best, worst, entries);
  }
};

// Random instance meeting the Theorem 1 premises for a random p: every
// judgment in [p, p^3] (capped at 9). A quarter of the judgments sit
// exactly on an endpoint so that tight and tied cases are exercised.
inline BwmInstance theorem1_instance(std::mt19937_64& rng, Rational* p_out = nullptr) {
  const auto n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
  const Rational p = random_rational(rng, Rational(17, 16), Rational(3));
  const auto cube = p * p * p;
  const Rational hi = cube < Rational(9) ? cube : Rational(9);
  std::vector<Rational> entries(2 * n - 3);
  for (auto& e : entries) {
    const int pick = std::uniform_int_distribution<int>(0, 7)(rng);
    e = pick == 0 ? p : (pick == 1 ? hi : random_rational(rng, p, hi));
  }
  if (p_out) *p_out = p;
  const auto best = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  return BwmInstance::from_free_entries(n, best, best == 0 ? n - 1 : 0, entries);
}

// Random instance meeting the Theorem 2 premises: n >= 4, a_BW the largest
// judgment and max^{n-3} <= p^{3n-5}. Some draws are built exactly on the
// bound (p = t^{n-3}, max = t^{3n-5}).
inline BwmInstance theorem2_instance(std::mt19937_64& rng, Rational* p_out = nullptr) {
  while (true) {
    auto n = std::uniform_int_distribution<std::size_t>(4, 12)(rng);
    Rational p;
    Rational top;
    if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
      // Tight: t = (k+1)/k with k >= 3n keeps t^{3n-5} below e; n <= 6
      // keeps k^{3n-5} inside 64 bits.
      n = std::uniform_int_distribution<std::size_t>(4, 6)(rng);
      const auto lo = 3 * static_cast<std::int64_t>(n);
      const std::int64_t k = std::uniform_int_distribution<std::int64_t>(lo, lo + 4)(rng);
      const Rational t(k + 1, k);
      p = Rational(1);
      top = Rational(1);
      for (std::size_t e = 0; e < n - 3; ++e) p = p * t;
      for (std::size_t e = 0; e < 3 * n - 5; ++e) top = top * t;
      if (top > Rational(9)) continue;
    } else {
      p = random_rational(rng, Rational(17, 16), Rational(9, 4));
      const double bound = std::min(9.0, std::pow(p.to_double(), (3.0 * n - 5.0) / (n - 3.0)));
      const Rational hi(static_cast<std::int64_t>(std::floor(bound * 64.0)), 64);
      if (hi < p) continue;
      top = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? hi : random_rational(rng, p, hi);
    }
    std::vector<Rational> entries(2 * n - 3);
    for (auto& e : entries) {
      const int pick = std::uniform_int_distribution<int>(0, 7)(rng);
      e = pick == 0 ? p : (pick == 1 ? top : random_rational(rng, p, top));
    }
    entries[n - 2] = top;  // a_BW
    const auto inst = BwmInstance::from_free_entries(n, 0, n - 1, entries);
    if (!check_theorem2(inst, p).theorem2->pass) continue;
    if (p_out) *p_out = p;
    return inst;
  }
}

// Complete consistent matrix a_ij = v_i / v_j from integer v in [1, 9].
inline IncompletePcm consistent_pcm(std::mt19937_64& rng, std::size_t n, std::vector<std::int64_t>& v) {
  v.resize(n);
  for (auto& x : v) x = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
  IncompletePcm pcm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pcm.set(i, j, ComparisonValue::make(Rational(v[i], v[j])));
  return pcm;
}

// O(n^2) recount of conflicting pairs straight from the definition.
inline std::pair<std::size_t, std::size_t> brute_force_conflicts(const IncompletePcm& pcm, const std::vector<double>& w) {
  std::size_t strict = 0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < pcm.size(); ++i)
    for (std::size_t j = 0; j < pcm.size(); ++j) {
      if (i == j || !pcm.known(i, j) || pcm.at(i, j)->to_double() <= 1.0) continue;
      const double scale = std::max({1.0, std::abs(w[i]), std::abs(w[j])});
      if (std::abs(w[i] - w[j]) <= 1e-9 * scale)
        ++ties;
      else if (w[i] < w[j])
        ++strict;
    }
  return {strict, ties};
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace bwm::test

#endif  // BWM_TEST_SUPPORT_HPP
