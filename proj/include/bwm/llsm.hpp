#ifndef BWM_LLSM_HPP
#define BWM_LLSM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "bwm/error.hpp"
#include "bwm/model.hpp"

namespace bwm {

// Laplacian formulation of the incomplete logarithmic least squares problem:
// L y = r with sum(y) = 0, r_i = sum of log a_ij over known j.
struct LaplacianSystem {
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd rhs;

  std::size_t size() const { return static_cast<std::size_t>(rhs.size()); }
};

// Log-weights y with sum(y) = 0 and the two positive weight views.
class PriorityVector {
 public:
  PriorityVector() = default;
  explicit PriorityVector(std::vector<double> y) : y_(std::move(y)) {}

  std::size_t size() const { return y_.size(); }
  const std::vector<double>& log_weights() const { return y_; }
  double operator[](std::size_t i) const { return y_[i]; }

  // w_i = exp(y_i); product of all weights is 1.
  std::vector<double> product_one() const {
    std::vector<double> w(y_.size());
    std::transform(y_.begin(), y_.end(), w.begin(), [](double v) { return std::exp(v); });
    return w;
  }

  // Same ratios, rescaled to sum to 1.
  std::vector<double> sum_one() const {
    auto w = product_one();
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= total;
    return w;
  }

 private:
  std::vector<double> y_;
};

enum class Normalization { ProductOne, SumOne };

inline std::vector<double> normalize(const PriorityVector& pv, Normalization mode) {
  return mode == Normalization::ProductOne ? pv.product_one() : pv.sum_one();
}

inline LaplacianSystem build_laplacian(const IncompletePcm& pcm) {
  if (!is_connected(pcm)) throw Error(Errc::Disconnected, "comparison graph is not connected");
  const auto n = static_cast<Eigen::Index>(pcm.size());
  LaplacianSystem sys{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& a = pcm.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!a) continue;
      sys.laplacian(i, j) = -1.0;
      sys.laplacian(i, i) += 1.0;
      sys.rhs(i) += a->log();
    }
  }
  return sys;
}

namespace detail {

inline bool laplacian_connected(const Eigen::MatrixXd& L) {
  const auto n = static_cast<std::size_t>(L.rows());
  ComparisonGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) g.add_edge(i, j);
  return g.connected();
}

}  // namespace detail

// Unique zero-sum solution of L y = r. The kernel of a connected Laplacian
// is span(1), so L + 1 1^T is positive definite and its solution already
// has sum(y) = 0 whenever sum(r) = 0.
inline PriorityVector solve_llsm_general(const LaplacianSystem& sys) {
  const auto n = sys.laplacian.rows();
  if (n == 0 || sys.laplacian.cols() != n || sys.rhs.size() != n)
    throw Error(Errc::LengthMismatch, "Laplacian and right-hand side disagree in size");
  if (!detail::laplacian_connected(sys.laplacian))
    throw Error(Errc::SingularSystem, "Laplacian kernel has dimension > 1");

  const Eigen::MatrixXd shifted = sys.laplacian + Eigen::MatrixXd::Ones(n, n);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
  Eigen::VectorXd y = ldlt.solve(sys.rhs);
  // One refinement step keeps the residual well under 1e-10 for larger n.
  y += ldlt.solve(sys.rhs - shifted * y);
  y.array() -= y.mean();
  return PriorityVector(std::vector<double>(y.data(), y.data() + n));
}

inline PriorityVector solve_llsm(const IncompletePcm& pcm) { return solve_llsm_general(build_laplacian(pcm)); }

// O(n) solution for a best-worst matrix:
//   n y_B = sum_k log a_Bk,  n y_W = sum_k log a_Wk,
//   2 y_j = log(a_jB a_jW) + y_B + y_W  for every other j.
inline PriorityVector solve_llsm_bwm_closed_form(const BwmInstance& inst) {
  const std::size_t n = inst.n();
  const auto b = inst.best();
  const auto w = inst.worst();
  double sum_best = 0.0;
  double sum_worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != b) sum_best += inst.a_best(k).log();
    if (k != w) sum_worst -= inst.a_worst(k).log();  // log a_Wk = -log a_kW
  }
  std::vector<double> y(n);
  y[b] = sum_best / static_cast<double>(n);
  y[w] = sum_worst / static_cast<double>(n);
  for (auto j : inst.middles()) y[j] = (inst.a_worst(j).log() - inst.a_best(j).log() + y[b] + y[w]) / 2.0;
  return PriorityVector(std::move(y));
}

inline double residual_inf(const LaplacianSystem& sys, const PriorityVector& pv) {
  const Eigen::Map<const Eigen::VectorXd> y(pv.log_weights().data(), static_cast<Eigen::Index>(pv.size()));
  return (sys.laplacian * y - sys.rhs).lpNorm<Eigen::Infinity>();
}

}  // namespace bwm

#endif  // BWM_LLSM_HPP
