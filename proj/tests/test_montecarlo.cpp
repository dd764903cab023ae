#include <gtest/gtest.h>

#include "bayeserr/montecarlo.hpp"
#include "oracles.hpp"

using namespace bayeserr;

namespace {

const MultivariateT kT1(6.0, SymMatrix::identity(2));
const MultivariateT kT10(6.0, SymMatrix::scaled_identity(2, 10.0));
const MultivariateT kT3(6.0, SymMatrix::scaled_identity(2, 3.0));

}  // namespace

TEST(EstimateTv, IdenticalPairIsExactlyZero) {
  const Estimate e = estimate_tv(kT1, kT1, 5000, 1);
  EXPECT_EQ(e.value, 0.0);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.n, 5000u);
  EXPECT_EQ(e.seed, 1u);
}

TEST(EstimateTv, ConvergesToRadialQuadrature) {
  const double truth = oracle::isotropic_t_tv(2, 6.0, 1.0, 10.0);
  EXPECT_NEAR(truth, 0.62679, 1e-5);
  const Estimate e = estimate_tv(kT1, kT10, 100000, 7);
  EXPECT_NEAR(e.value, truth, 4 * e.std_error);
  EXPECT_LT(e.ci_low, truth);
  EXPECT_GT(e.ci_high, truth);
  EXPECT_NEAR(e.ci_high - e.ci_low, 2 * 1.96 * e.std_error, 1e-15);
}

TEST(EstimateTv, UnivariateAgainstExactTv) {
  // Gaussians N(0,1), N(1,1): TV = erf(1/(2 sqrt 2))
  const Estimate e = estimate_tv(UnivariateGaussian(0, 1), UnivariateGaussian(1, 1), 200000, 3);
  EXPECT_NEAR(e.value, oracle::erf_taylor(0.5 / std::sqrt(2.0)), 4 * e.std_error);
}

TEST(EstimateTv, PrefixConsistentAcrossN) {
  const auto small = sharded_samples(kT1, 5000, 9);
  const auto large = sharded_samples(kT1, 20000, 9);
  for (std::size_t i = 0; i < small.size(); ++i) ASSERT_EQ(small[i], large[i]);
}

TEST(EstimateTv, Deterministic) {
  const Estimate a = estimate_tv(kT1, kT10, 30000, 5), b = estimate_tv(kT1, kT10, 30000, 5);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  const Estimate c = estimate_tv(kT1, kT10, 30000, 6);
  EXPECT_NE(a.value, c.value);
}

TEST(EstimateTv, WorkerCountDoesNotChangeResult) {
  auto stat = [](RandomStream& rng, Vector& x) {
    x.resize(1);
    x(0) = rng.normal();
    return x(0) * x(0);
  };
  const RunningStats one = run_sharded(50000, 11, stat, 1);
  const RunningStats four = run_sharded(50000, 11, stat, 4);
  EXPECT_EQ(one.n, four.n);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.m2, four.m2);
}

TEST(EstimateTv, Errors) {
  EXPECT_THROW(estimate_tv(kT1, MultivariateT(6, SymMatrix::identity(3)), 100, 0), DimensionMismatch);
  EXPECT_THROW(estimate_tv(kT1, kT10, 1, 0), DomainError);
}

TEST(EstimatePe, IdenticalPairIsHalf) {
  for (auto method : {PeMethod::MixtureMinimum, PeMethod::TotalVariation}) {
    const Estimate e = estimate_pe(kT1, kT1, 0.5, 0.5, 4000, 2, method);
    EXPECT_EQ(e.value, 0.5);
    EXPECT_EQ(e.std_error, 0.0);
  }
}

TEST(EstimatePe, TableRowAgainstRadialQuadrature) {
  const double truth = oracle::isotropic_t_pe(2, 6.0, 1.0, 3.0);
  EXPECT_NEAR(truth, 0.3302, 0.005);
  const Estimate e = estimate_pe(kT3, kT1, 0.5, 0.5, 10000, 0);
  EXPECT_NEAR(e.value, 0.3302, 0.02);
  EXPECT_NEAR(e.value, truth, 4 * e.std_error);
}

TEST(EstimatePe, CauchyAgainstClosedForm) {
  const double truth = 1 - 2 / oracle::pi * std::atan(std::sqrt(5.0));
  const Estimate e = estimate_pe(CauchyScale(10), CauchyScale(50), 0.5, 0.5, 100000, 4);
  EXPECT_NEAR(e.value, 0.2677, 0.005);
  EXPECT_NEAR(e.value, truth, 4 * e.std_error);
  const Estimate tv = estimate_pe(CauchyScale(10), CauchyScale(50), 0.5, 0.5, 100000, 4, PeMethod::TotalVariation);
  EXPECT_NEAR(tv.value, truth, 4 * tv.std_error);
}

TEST(EstimatePe, UnequalPriorsAgainstQuadrature) {
  const double w1 = 0.3, w2 = 0.7;
  const double truth = oracle::integrate_real_line(
      [&](double x) { return std::min(w1 * oracle::gauss_pdf(x, 0, 1), w2 * oracle::gauss_pdf(x, 1, 2)); }, 0.0, 2.0);
  for (auto method : {PeMethod::MixtureMinimum, PeMethod::TotalVariation}) {
    const Estimate e = estimate_pe(UnivariateGaussian(0, 1), UnivariateGaussian(1, 2), w1, w2, 100000, 8, method);
    EXPECT_NEAR(e.value, truth, 4 * e.std_error);
  }
  EXPECT_THROW(estimate_pe(kT1, kT3, 0.3, 0.6, 100, 0), DomainError);
}

TEST(ConvergenceTable, ShapeAndShrinkingError) {
  const auto rows = convergence_table(kT1, kT10, {100, 1000, 10000, 100000}, 7);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].second.std_error, rows[i - 1].second.std_error);
  EXPECT_EQ(rows.back().second.value, estimate_tv(kT1, kT10, 100000, 7).value);
  const auto zero = convergence_table(kT1, kT1, {100, 1000}, 1);
  for (const auto& r : zero) EXPECT_EQ(r.second.value, 0.0);
  const auto single = convergence_table(kT1, kT3, {2048}, 3);
  EXPECT_EQ(single[0].second.value, estimate_tv(kT1, kT3, 2048, 3).value);
  EXPECT_THROW(convergence_table(kT1, kT3, {1000, 100}, 3), DomainError);
}

TEST(RunningStats, MergeMatchesSinglePass) {
  auto g = oracle::rng(61);
  RunningStats all, a, b;
  for (int i = 0; i < 1000; ++i) {
    const double v = oracle::uniform(g, -5, 5);
    all.add(v);
    (i < 377 ? a : b).add(v);
  }
  a.merge(b);
  EXPECT_EQ(a.n, all.n);
  EXPECT_NEAR(a.mean, all.mean, 1e-14);
  EXPECT_NEAR(a.m2, all.m2, 1e-10);
}
