#ifndef BWM_CENSUS_HPP
#define BWM_CENSUS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "bwm/error.hpp"
#include "bwm/model.hpp"
#include "bwm/ordinal.hpp"
#include "bwm/rational.hpp"

namespace bwm {

inline constexpr std::uint64_t kDefaultCensusBudget = 134217728;  // 8^9

struct CensusOptions {
  std::size_t n = 6;
  std::vector<std::int64_t> scale = {2, 3, 4, 5, 6, 7, 8, 9};
  Rational fixed_p = Rational(2);
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultCensusBudget;
  // Also classify every matrix through floating-point closed-form weights
  // and count disagreements with the exact test.
  bool float_cross_check = false;
};

struct CensusReport {
  std::size_t n = 0;
  std::vector<std::int64_t> scale;
  Rational fixed_p;
  std::uint64_t total = 0;
  std::uint64_t theorem1_fixed_p = 0;
  std::uint64_t theorem1_best_p = 0;
  std::uint64_t violating = 0;
  std::uint64_t ties_only = 0;  // exact ties but no strict violation
  std::uint64_t float_mismatches = 0;
  bool float_cross_checked = false;
  std::vector<BwmInstance> witnesses;      // sorted by free entries
  std::vector<BwmInstance> tie_witnesses;  // sorted by free entries
  double wall_time = 0.0;
  unsigned jobs = 1;
};

// Results that must not depend on thread count or iteration order.
inline bool same_counts_and_witnesses(const CensusReport& a, const CensusReport& b) {
  return a.total == b.total && a.theorem1_fixed_p == b.theorem1_fixed_p &&
         a.theorem1_best_p == b.theorem1_best_p && a.violating == b.violating && a.ties_only == b.ties_only &&
         a.float_mismatches == b.float_mismatches && a.witnesses == b.witnesses && a.tie_witnesses == b.tie_witnesses;
}

namespace detail {

using Digits = std::vector<std::uint8_t>;

struct CensusPartial {
  std::uint64_t total = 0;
  std::uint64_t theorem1_fixed_p = 0;
  std::uint64_t theorem1_best_p = 0;
  std::uint64_t float_mismatches = 0;
  std::vector<Digits> violating;
  std::vector<Digits> ties;
};

struct CensusTables {
  std::size_t n = 0;
  std::size_t entries = 0;  // 2n - 3
  std::vector<std::int64_t> scale;
  std::vector<bool> within_fixed_p;
  std::vector<double> log_value;
};

// Exact classification of one matrix given as scale digits in free-entry
// order (a_Bj..., a_BW, a_jW...). Returns bit 0 for a strict violation,
// bit 1 for a tie.
template <typename Int>
int classify_exact(const CensusTables& t, const Digits& d, const std::vector<Int>& power_n) {
  const std::size_t m = t.n - 2;
  Int product = 1;
  for (std::size_t e = 0; e < t.entries; ++e) product *= Int(t.scale[d[e]]);
  product *= Int(t.scale[d[m]]);  // a_BW sits in both PB and PW
  int flags = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const Int& ab = power_n[d[k]];
    const Int& aw = power_n[d[m + 1 + k]];
    const Int up = ab * product;
    if (aw > up) flags |= 1;
    else if (aw == up) flags |= 2;
    const Int down = product * aw;
    if (down < ab) flags |= 1;
    else if (down == ab) flags |= 2;
  }
  return flags;
}

inline int classify_float(const CensusTables& t, const Digits& d) {
  const std::size_t m = t.n - 2;
  const double nn = static_cast<double>(t.n);
  double sb = t.log_value[d[m]];
  double sw = -t.log_value[d[m]];
  for (std::size_t k = 0; k < m; ++k) {
    sb += t.log_value[d[k]];
    sw -= t.log_value[d[m + 1 + k]];
  }
  const double yb = sb / nn;
  const double yw = sw / nn;
  int flags = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double yj = (t.log_value[d[m + 1 + k]] - t.log_value[d[k]] + yb + yw) / 2.0;
    if (float_tie(yj, yb)) flags |= 2;
    else if (yj > yb) flags |= 1;
    if (float_tie(yj, yw)) flags |= 2;
    else if (yj < yw) flags |= 1;
  }
  return flags;
}

template <typename Int>
void census_chunk(const CensusTables& t, const CensusOptions& opt, std::size_t prefix_len, std::uint64_t prefix,
                  CensusPartial& out) {
  const std::size_t radix = t.scale.size();
  std::vector<Int> power_n(radix);
  for (std::size_t v = 0; v < radix; ++v) {
    Int x = 1;
    for (std::size_t k = 0; k < t.n; ++k) x *= Int(t.scale[v]);
    power_n[v] = x;
  }

  Digits d(t.entries, 0);
  for (std::size_t e = prefix_len; e-- > 0;) {
    d[e] = static_cast<std::uint8_t>(prefix % radix);
    prefix /= radix;
  }
  while (true) {
    ++out.total;
    bool t1 = true;
    std::uint8_t lo = d[0];
    std::uint8_t hi = d[0];
    for (auto v : d) {
      t1 = t1 && t.within_fixed_p[v];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (t1) ++out.theorem1_fixed_p;
    const std::int64_t plo = t.scale[lo];
    if (t.scale[hi] <= plo * plo * plo) ++out.theorem1_best_p;

    const int flags = classify_exact<Int>(t, d, power_n);
    if (flags & 1)
      out.violating.push_back(d);
    else if (flags & 2)
      out.ties.push_back(d);
    if (opt.float_cross_check && classify_float(t, d) != flags) ++out.float_mismatches;

    bool advanced = false;
    for (std::size_t e = t.entries; e > prefix_len && !advanced;) {
      --e;
      if (++d[e] < radix)
        advanced = true;
      else
        d[e] = 0;
    }
    if (!advanced) return;
  }
}

inline std::vector<BwmInstance> to_instances(const CensusTables& t, std::vector<Digits> digits) {
  std::sort(digits.begin(), digits.end());
  std::vector<BwmInstance> out;
  out.reserve(digits.size());
  std::vector<Rational> entries(t.entries);
  for (const auto& d : digits) {
    for (std::size_t e = 0; e < t.entries; ++e) entries[e] = Rational(t.scale[d[e]]);
    out.push_back(BwmInstance::from_free_entries(t.n, 0, t.n - 1, entries));
  }
  return out;
}

}  // namespace detail

// Every best-worst matrix with best = 1, worst = n and all 2n-3 judgments
// drawn from the integer scale, classified exactly.
inline CensusReport enumerate_census(const CensusOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (opt.n < 3) throw Error(Errc::TooSmall, "census needs n >= 3");
  if (opt.scale.empty()) throw Error(Errc::InvalidScale, "empty scale");
  std::set<std::int64_t> uniq(opt.scale.begin(), opt.scale.end());
  for (auto v : uniq)
    if (v < 2 || v > 9) throw Error(Errc::InvalidScale, "census scale values must be integers in 2..9");
  if (opt.fixed_p <= Rational(1)) throw Error(Errc::InvalidP, "fixed p must exceed 1");

  detail::CensusTables t;
  t.n = opt.n;
  t.entries = 2 * opt.n - 3;
  t.scale.assign(uniq.begin(), uniq.end());
  const std::size_t radix = t.scale.size();

  std::uint64_t total = 1;
  for (std::size_t e = 0; e < t.entries; ++e) {
    if (total > opt.budget / radix + 1) throw Error(Errc::BudgetExceeded, "census exceeds work budget");
    total *= radix;
  }
  if (total > opt.budget) throw Error(Errc::BudgetExceeded, "census of " + std::to_string(total) + " matrices exceeds budget");

  const auto cube = pow(opt.fixed_p, 3);
  for (auto v : t.scale) {
    t.within_fixed_p.push_back(Rational(v) >= opt.fixed_p && compare(pow(Rational(v), 1), cube) <= 0);
    t.log_value.push_back(std::log(static_cast<double>(v)));
  }

  // Partition on the leading digits into at least 64 chunks when possible.
  std::size_t prefix_len = 0;
  std::uint64_t chunks = 1;
  while (prefix_len < t.entries && chunks < 64) {
    chunks *= radix;
    ++prefix_len;
  }

  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<detail::CensusPartial> partials(jobs);
  std::atomic<std::uint64_t> next{0};
  const double magnitude_bits = static_cast<double>(3 * opt.n - 2) * std::log2(static_cast<double>(t.scale.back()));

  const auto worker = [&](unsigned id) {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      if (magnitude_bits < 62.0)
        detail::census_chunk<std::int64_t>(t, opt, prefix_len, c, partials[id]);
      else if (magnitude_bits < 126.0)
        detail::census_chunk<__int128>(t, opt, prefix_len, c, partials[id]);
      else
        detail::census_chunk<BigInt>(t, opt, prefix_len, c, partials[id]);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
  }

  CensusReport report;
  report.n = opt.n;
  report.scale = t.scale;
  report.fixed_p = opt.fixed_p;
  report.jobs = jobs;
  report.float_cross_checked = opt.float_cross_check;
  std::vector<detail::Digits> violating;
  std::vector<detail::Digits> ties;
  for (auto& p : partials) {
    report.total += p.total;
    report.theorem1_fixed_p += p.theorem1_fixed_p;
    report.theorem1_best_p += p.theorem1_best_p;
    report.float_mismatches += p.float_mismatches;
    violating.insert(violating.end(), p.violating.begin(), p.violating.end());
    ties.insert(ties.end(), p.ties.begin(), p.ties.end());
  }
  report.violating = violating.size();
  report.ties_only = ties.size();
  report.witnesses = detail::to_instances(t, std::move(violating));
  report.tie_witnesses = detail::to_instances(t, std::move(ties));
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// The 56 violating six-alternative matrices built by hand: alternative i
// gets a_1i = 2, a_i6 = 9 with every other judgment 2 (one of the six
// judgments of the other three middle alternatives may be raised to 3),
// which lets i outrank the best; the mirror images let i sink below the
// worst.
inline std::vector<BwmInstance> violation_witness_family() {
  constexpr std::size_t n = 6;
  constexpr std::size_t m = n - 2;
  std::vector<BwmInstance> family;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> base(2 * n - 3, Rational(2));
    base[m + 1 + i] = Rational(9);
    std::vector<std::vector<Rational>> variants{base};
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      auto up_best = base;
      up_best[j] = Rational(3);
      variants.push_back(up_best);
      auto up_worst = base;
      up_worst[m + 1 + j] = Rational(3);
      variants.push_back(up_worst);
    }
    for (const auto& v : variants) family.push_back(BwmInstance::from_free_entries(n, 0, n - 1, v));
  }
  const std::size_t half = family.size();
  for (std::size_t k = 0; k < half; ++k) family.push_back(family[k].mirrored());
  return family;
}

}  // namespace bwm

#endif  // BWM_CENSUS_HPP
