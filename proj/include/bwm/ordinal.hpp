#ifndef BWM_ORDINAL_HPP
#define BWM_ORDINAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bwm/error.hpp"
#include "bwm/llsm.hpp"
#include "bwm/model.hpp"
#include "bwm/rational.hpp"

namespace bwm {

// Log-weights closer than this (relative to max(1, |y|)) are treated as a
// tie by the floating-point detector.
inline constexpr double kTieTolerance = 1e-9;

// Known pair (i, j) with a_ij > 1 whose weights disagree: w_i < w_j for a
// violation, w_i == w_j for a tie.
struct PairConflict {
  std::size_t i;
  std::size_t j;
  Rational a_ij;

  friend bool operator==(const PairConflict&, const PairConflict&) = default;
  friend auto operator<=>(const PairConflict& a, const PairConflict& b) {
    return std::tie(a.i, a.j) <=> std::tie(b.i, b.j);
  }
};

struct AlternativeFlags {
  std::size_t alternative;
  bool above_best = false;   // y_j > y_B
  bool ties_best = false;    // y_j == y_B
  bool below_worst = false;  // y_j < y_W
  bool ties_worst = false;   // y_j == y_W

  friend bool operator==(const AlternativeFlags&, const AlternativeFlags&) = default;
};

struct ViolationReport {
  std::vector<PairConflict> violations;
  std::vector<PairConflict> ties;
  std::vector<AlternativeFlags> bwm_summary;  // empty for general matrices
  bool exact = false;

  std::size_t count() const { return violations.size(); }
  bool has_violation() const { return !violations.empty(); }

  // Middle alternatives that outrank the best or fall below the worst.
  std::vector<std::size_t> offending_alternatives() const {
    std::vector<std::size_t> out;
    for (const auto& f : bwm_summary)
      if (f.above_best || f.below_worst) out.push_back(f.alternative);
    return out;
  }
};

namespace detail {

inline bool float_tie(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

inline ViolationReport detect_violations(const IncompletePcm& pcm, const PriorityVector& w) {
  const std::size_t n = pcm.size();
  if (w.size() != n) throw Error(Errc::LengthMismatch, "weight vector length differs from matrix size");
  ViolationReport report;
  const Rational one(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = pcm.at(i, j);
      if (i == j || !a || a->value() <= one) continue;
      if (detail::float_tie(w[i], w[j]))
        report.ties.push_back({i, j, a->value()});
      else if (w[i] < w[j])
        report.violations.push_back({i, j, a->value()});
    }
  }
  return report;
}

// Floating-point detection on a best-worst matrix, with the per-alternative
// summary filled in.
inline ViolationReport detect_bwm_violations(const BwmInstance& inst, const PriorityVector& w) {
  auto report = detect_violations(to_incomplete_pcm(inst), w);
  const auto b = inst.best();
  const auto wi = inst.worst();
  for (auto j : inst.middles()) {
    AlternativeFlags f{j};
    f.ties_best = detail::float_tie(w[j], w[b]);
    f.above_best = !f.ties_best && w[j] > w[b];
    f.ties_worst = detail::float_tie(w[j], w[wi]);
    f.below_worst = !f.ties_worst && w[j] < w[wi];
    report.bwm_summary.push_back(f);
  }
  return report;
}

// Exact detection for the LLSM weights of a best-worst matrix. With
// PB = prod_{k != B} a_Bk and PW = prod_{k != W} a_kW:
//   y_j > y_B  <=>  a_jW^n > a_Bj^n * PB * PW
//   y_j < y_W  <=>  PB * PW * a_jW^n < a_Bj^n
// and equality gives a tie. y_B > 0 > y_W always, so the pair (B, W) never
// conflicts.
inline ViolationReport detect_bwm_violations_exact(const BwmInstance& inst) {
  const std::size_t n = inst.n();
  const auto b = inst.best();
  const auto w = inst.worst();
  BigFraction product;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != b) product *= inst.a_best(k).value();
    if (k != w) product *= inst.a_worst(k).value();
  }
  const auto exponent = static_cast<unsigned>(n);

  ViolationReport report;
  report.exact = true;
  for (auto j : inst.middles()) {
    const auto aw = pow(inst.a_worst(j).value(), exponent);
    const auto ab = pow(inst.a_best(j).value(), exponent);
    AlternativeFlags f{j};
    const int up = compare(aw, ab * product);
    f.above_best = up > 0;
    f.ties_best = up == 0;
    const int down = compare(product * aw, ab);
    f.below_worst = down < 0;
    f.ties_worst = down == 0;

    if (f.above_best) report.violations.push_back({b, j, inst.a_best(j).value()});
    if (f.ties_best) report.ties.push_back({b, j, inst.a_best(j).value()});
    if (f.below_worst) report.violations.push_back({j, w, inst.a_worst(j).value()});
    if (f.ties_worst) report.ties.push_back({j, w, inst.a_worst(j).value()});
    report.bwm_summary.push_back(f);
  }
  std::sort(report.violations.begin(), report.violations.end());
  std::sort(report.ties.begin(), report.ties.end());
  return report;
}

// Largest uniform dominance bound: min over a_Bj (j != B) and a_jW (j != W).
inline Rational derive_p(const BwmInstance& inst) {
  Rational p = inst.best_to_worst().value();
  for (auto j : inst.middles()) p = std::min({p, inst.a_best(j).value(), inst.a_worst(j).value()});
  return p;
}

// Largest known judgment. Every a_Bj and a_jW exceeds 1, so reciprocals and
// the diagonal never attain it.
inline Rational max_entry(const BwmInstance& inst) {
  Rational m = inst.best_to_worst().value();
  for (auto j : inst.middles()) m = std::max({m, inst.a_best(j).value(), inst.a_worst(j).value()});
  return m;
}

enum class PMode { Given, DerivedMin };

struct ConditionVerdict {
  bool pass = false;
  std::optional<std::string> bound_exact;  // set when the bound is rational
  std::optional<double> bound;              // absent when undefined (n = 3)
  std::optional<double> margin;             // bound - max_entry
};

struct ConditionDiagnosis {
  Rational p;
  PMode p_mode = PMode::Given;
  Rational max_entry;
  bool dominance = false;   // every a_Bj >= p and a_jW >= p
  bool bw_maximal = false;  // a_BW >= every known entry
  std::optional<ConditionVerdict> theorem1;
  std::optional<ConditionVerdict> theorem2;
  std::optional<ConditionVerdict> corollary2;

  bool certified() const {
    return (theorem1 && theorem1->pass) || (theorem2 && theorem2->pass) || (corollary2 && corollary2->pass);
  }
};

namespace detail {

inline ConditionDiagnosis base_diagnosis(const BwmInstance& inst, const Rational& p) {
  ConditionDiagnosis d;
  d.p = p;
  d.max_entry = max_entry(inst);
  d.dominance = derive_p(inst) >= p;
  d.bw_maximal = inst.best_to_worst().value() == d.max_entry;
  return d;
}

inline std::string fraction_string(const BigFraction& f) {
  return f.den == 1 ? f.num.str() : f.num.str() + "/" + f.den.str();
}

// p^{4/(n-3)+3} = p^{(3n-5)/(n-3)}
inline double theorem2_bound(double p, std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::exp(std::log(p) * (3.0 * nn - 5.0) / (nn - 3.0));
}

inline void require_p(const Rational& p) {
  if (p <= Rational(1)) throw Error(Errc::InvalidP, "p must exceed 1, got " + p.str());
}

}  // namespace detail

// Lower bound p on every a_Bj and a_jW, and no judgment above p^3.
inline ConditionDiagnosis check_theorem1(const BwmInstance& inst, const Rational& p) {
  detail::require_p(p);
  auto d = detail::base_diagnosis(inst, p);
  const auto cube = pow(p, 3);
  ConditionVerdict v;
  v.pass = d.dominance && compare(pow(d.max_entry, 1), cube) <= 0;
  v.bound_exact = detail::fraction_string(cube);
  v.bound = std::pow(p.to_double(), 3.0);
  v.margin = *v.bound - d.max_entry.to_double();
  d.theorem1 = v;
  return d;
}

// Theorem 1's lower bound, a_BW maximal, and no judgment above
// p^{4/(n-3)+3}. The bound test is evaluated exactly as
// max^{n-3} <= p^{3n-5}.
inline ConditionDiagnosis check_theorem2(const BwmInstance& inst, const Rational& p) {
  detail::require_p(p);
  const std::size_t n = inst.n();
  if (n <= 3) throw Error(Errc::TooSmallN, "the p^{4/(n-3)+3} bound needs n >= 4");
  auto d = detail::base_diagnosis(inst, p);
  ConditionVerdict v;
  const bool within = compare(pow(d.max_entry, static_cast<unsigned>(n - 3)), pow(p, static_cast<unsigned>(3 * n - 5))) <= 0;
  v.pass = d.dominance && d.bw_maximal && within;
  v.bound = detail::theorem2_bound(p.to_double(), n);
  v.margin = *v.bound - d.max_entry.to_double();
  d.theorem2 = v;
  return d;
}

// Saaty-scale special case with p = 2: integer judgments, a_BW maximal and
// n <= 26, the largest n with 2^{4/(n-3)+3} > 9.
inline ConditionDiagnosis check_corollary2(const BwmInstance& inst) {
  const Rational two(2);
  auto d = detail::base_diagnosis(inst, two);
  bool on_scale = true;
  for (const auto& e : inst.free_entries()) on_scale = on_scale && e.is_integer();
  ConditionVerdict v;
  v.pass = on_scale && d.dominance && d.bw_maximal && inst.n() <= 26;
  if (inst.n() > 3) {
    v.bound = detail::theorem2_bound(2.0, inst.n());
    v.margin = *v.bound - d.max_entry.to_double();
  }
  d.corollary2 = v;
  return d;
}

// All three checks at once. Without an explicit p the largest admissible
// one (derive_p) is used.
inline ConditionDiagnosis diagnose(const BwmInstance& inst, std::optional<Rational> p = std::nullopt) {
  const PMode mode = p ? PMode::Given : PMode::DerivedMin;
  const Rational used = p ? *p : derive_p(inst);
  auto d = check_theorem1(inst, used);
  d.p_mode = mode;
  if (inst.n() > 3) {
    d.theorem2 = check_theorem2(inst, used).theorem2;
  } else {
    d.theorem2 = ConditionVerdict{};
  }
  d.corollary2 = check_corollary2(inst).corollary2;
  return d;
}

}  // namespace bwm

#endif  // BWM_ORDINAL_HPP
