#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "test_support.hpp"

namespace {

using namespace bwm;

// Independently computed (dense least squares over the nine known
// log-ratios plus the zero-sum row).
const std::vector<double> kExample1Y = {0.57762265, 0.62669892, -0.12533978, -0.12533978, -0.12533978, -0.82830222};
const std::vector<double> kExample1Printed = {0.2645, 0.2778, 0.1310, 0.1310, 0.1310, 0.0648};

TEST(BuildLaplacian, ExampleOne) {
  const auto sys = build_laplacian(to_incomplete_pcm(test::example1()));
  EXPECT_EQ(sys.laplacian(0, 0), 5.0);
  EXPECT_EQ(sys.laplacian(5, 5), 5.0);
  for (int j = 1; j <= 4; ++j) EXPECT_EQ(sys.laplacian(j, j), 2.0);
  EXPECT_EQ(sys.laplacian(1, 2), 0.0);
  EXPECT_EQ(sys.laplacian(1, 5), -1.0);
  EXPECT_NEAR(sys.rhs(0), std::log(32.0), 1e-14);
  EXPECT_NEAR(sys.rhs(5), std::log(1.0 / 144.0), 1e-14);
  EXPECT_NEAR(sys.rhs.sum(), 0.0, 1e-13);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(sys.laplacian.row(i).sum(), 0.0, 0.0);
}

TEST(BuildLaplacian, IdentityCase) {
  IncompletePcm pcm(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) pcm.set(i, j, ComparisonValue::make(Rational(1)));
  const auto sys = build_laplacian(pcm);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(sys.rhs(i), 0.0);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(sys.laplacian(i, j), i == j ? 2.0 : -1.0);
  }
}

TEST(BuildLaplacian, DisconnectedRejected) {
  IncompletePcm pcm(4);
  pcm.set(0, 1, ComparisonValue::make(Rational(2)));
  pcm.set(2, 3, ComparisonValue::make(Rational(2)));
  try {
    build_laplacian(pcm);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Disconnected);
  }
  LaplacianSystem sys{Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3)};
  sys.laplacian(0, 0) = 1;
  sys.laplacian(1, 1) = 1;
  sys.laplacian(0, 1) = sys.laplacian(1, 0) = -1;
  try {
    solve_llsm_general(sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularSystem);
  }
}

TEST(SolveGeneral, ExampleOneGolden) {
  const auto pcm = to_incomplete_pcm(test::example1());
  const auto sys = build_laplacian(pcm);
  const auto pv = solve_llsm_general(sys);
  EXPECT_LE(residual_inf(sys, pv), 1e-10);
  EXPECT_LE(test::max_abs_diff(pv.log_weights(), kExample1Y), 1e-8);
  EXPECT_LE(test::max_abs_diff(pv.sum_one(), kExample1Printed), 5e-4);
}

TEST(SolveGeneral, ConsistentRecovery) {
  IncompletePcm pcm(3);
  pcm.set(0, 1, ComparisonValue::make(Rational(1, 2)));
  pcm.set(0, 2, ComparisonValue::make(Rational(1, 4)));
  pcm.set(1, 2, ComparisonValue::make(Rational(1, 2)));
  const auto pv = solve_llsm(pcm);
  const double mean = (std::log(1.0) + std::log(2.0) + std::log(4.0)) / 3.0;
  EXPECT_NEAR(pv[0], std::log(1.0) - mean, 1e-12);
  EXPECT_NEAR(pv[1], std::log(2.0) - mean, 1e-12);
  EXPECT_NEAR(pv[2], std::log(4.0) - mean, 1e-12);
}

TEST(ClosedForm, ExampleOne) {
  const auto pv = solve_llsm_bwm_closed_form(test::example1());
  const double y1 = std::log(32.0) / 6.0;
  const double y6 = -std::log(144.0) / 6.0;
  EXPECT_NEAR(pv[0], y1, 1e-15);
  EXPECT_NEAR(pv[5], y6, 1e-15);
  EXPECT_NEAR(pv[1], (std::log(4.5) + y1 + y6) / 2.0, 1e-15);
  EXPECT_LE(test::max_abs_diff(pv.sum_one(), kExample1Printed), 5e-4);
}

TEST(ClosedForm, SymmetricInstanceHasEqualMiddles) {
  for (std::size_t n : {3u, 5u, 9u}) {
    const auto pv = solve_llsm_bwm_closed_form(test::uniform_instance(n, Rational(3)));
    for (std::size_t j = 1; j + 1 < n; ++j) EXPECT_NEAR(pv[j], 0.0, 1e-15);
  }
}

TEST(Normalize, Views) {
  const PriorityVector zero(std::vector<double>(4, 0.0));
  for (double w : normalize(zero, Normalization::SumOne)) EXPECT_DOUBLE_EQ(w, 0.25);
  const auto pv = solve_llsm_bwm_closed_form(test::example1());
  const auto prod = normalize(pv, Normalization::ProductOne);
  const auto sum = normalize(pv, Normalization::SumOne);
  double log_prod = 0.0;
  for (double w : prod) log_prod += std::log(w);
  EXPECT_NEAR(log_prod, 0.0, 1e-12);
  EXPECT_NEAR(std::accumulate(sum.begin(), sum.end(), 0.0), 1.0, 1e-12);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(prod[i] / prod[j], sum[i] / sum[j], 1e-12);
  EXPECT_EQ(std::max_element(prod.begin(), prod.end()) - prod.begin(), std::max_element(sum.begin(), sum.end()) - sum.begin());
  EXPECT_EQ(std::min_element(prod.begin(), prod.end()) - prod.begin(), std::min_element(sum.begin(), sum.end()) - sum.begin());
}

TEST(LlsmProperty, ClosedFormMatchesGeneralSolver) {
  std::mt19937_64 rng(11);
  for (bool on_scale : {true, false}) {
    const test::RandomBwm gen{3, 12, on_scale};
    for (int trial = 0; trial < 2000; ++trial) {
      const auto inst = gen(rng);
      const auto sys = build_laplacian(to_incomplete_pcm(inst));
      const auto general = solve_llsm_general(sys);
      const auto closed = solve_llsm_bwm_closed_form(inst);
      ASSERT_LE(test::max_abs_diff(general.log_weights(), closed.log_weights()), 1e-10);
      ASSERT_LE(residual_inf(sys, general), 1e-10);
      ASSERT_LE(residual_inf(sys, closed), 1e-10);
      const auto& y = closed.log_weights();
      ASSERT_LE(std::abs(std::accumulate(y.begin(), y.end(), 0.0)), 1e-12);
    }
  }
}

TEST(LlsmProperty, ReciprocalAntisymmetryAndPermutation) {
  std::mt19937_64 rng(12);
  const test::RandomBwm gen{3, 10, false};
  for (int trial = 0; trial < 500; ++trial) {
    const auto pcm = to_incomplete_pcm(gen(rng));
    const auto y = solve_llsm(pcm).log_weights();
    const auto flipped = solve_llsm(pcm.reciprocal_transposed()).log_weights();
    for (std::size_t i = 0; i < y.size(); ++i) ASSERT_NEAR(flipped[i], -y[i], 1e-12);

    std::vector<std::size_t> perm(pcm.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto permuted = solve_llsm(pcm.permuted(perm)).log_weights();
    for (std::size_t i = 0; i < y.size(); ++i) ASSERT_NEAR(permuted[perm[i]], y[i], 1e-12);
  }
}

TEST(LlsmProperty, ConsistentRecoveryAndIncompleteConnected) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::int64_t> v;
    const auto n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    auto pcm = test::consistent_pcm(rng, n, v);
    double mean = 0.0;
    for (auto x : v) mean += std::log(static_cast<double>(x));
    mean /= static_cast<double>(n);
    const auto y = solve_llsm(pcm).log_weights();
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(y[i], std::log(static_cast<double>(v[i])) - mean, 1e-12);

    // Dropping edges while keeping the graph connected must not change a
    // consistent solution.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 2; j < n; ++j)
        if (std::uniform_int_distribution<int>(0, 1)(rng)) pcm.erase(i, j);
    const auto y2 = solve_llsm(pcm).log_weights();
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(y2[i], y[i], 1e-12);
  }
}

}  // namespace
