#include <gtest/gtest.h>

#include "bayeserr/distributions.hpp"
#include "oracles.hpp"

using namespace bayeserr;

TEST(Pdf, Examples) {
  EXPECT_NEAR(pdf(UnivariateGaussian(0, 1), 0.0), 1.0 / std::sqrt(2.0 * oracle::pi), 1e-15);
  for (double s : {0.5, 1.0, 10.0}) EXPECT_NEAR(pdf(CauchyScale(s), 0.0), 1.0 / (oracle::pi * s), 1e-15);
  const MultivariateT t(6.0, SymMatrix::identity(2));
  EXPECT_NEAR(pdf(t, Vector::Zero(2)), 1.0 / (2.0 * oracle::pi), 1e-14);
}

TEST(Pdf, MatchesHandWrittenDensities) {
  auto g = oracle::rng(21);
  for (int i = 0; i < 100; ++i) {
    const double mu = oracle::uniform(g, -3, 3), sigma = oracle::uniform(g, 0.2, 4);
    const double s = oracle::uniform(g, 0.1, 20), x = oracle::uniform(g, -10, 10);
    EXPECT_NEAR(pdf(UnivariateGaussian(mu, sigma), x), oracle::gauss_pdf(x, mu, sigma), 1e-14);
    EXPECT_NEAR(pdf(CauchyScale(s), x), oracle::cauchy_pdf(x, s), 1e-14);
  }
}

TEST(Pdf, MultivariateNormalizes) {
  // Radial integral of the isotropic densities over the whole plane / space.
  for (int d : {1, 2, 3}) {
    const MultivariateT t(6.0, SymMatrix::scaled_identity(d, 2.0));
    const PearsonVII p(d / 2.0 + 1.3, SymMatrix::scaled_identity(d, 0.7));
    const MultivariateGaussian n(Vector::Zero(d), SymMatrix::scaled_identity(d, 3.0));
    for (const Distribution& dist : {Distribution(t), Distribution(p), Distribution(n)}) {
      auto radial = [&](double r) {
        Vector x = Vector::Zero(d);
        x(0) = r;
        return pdf(dist, x) * oracle::sphere_area(d) * std::pow(r, d - 1);
      };
      const double total = oracle::integrate_half_line(radial, 1.0, 400000);
      EXPECT_NEAR(total, 1.0, 1e-6) << family_name(dist) << " d=" << d;
    }
  }
}

TEST(Pdf, PearsonContainsMultivariateT) {
  // t with nu dof and scale Sigma equals Pearson VII with lambda = (nu+d)/2 and scale nu*Sigma.
  auto g = oracle::rng(22);
  const Eigen::MatrixXd s = (Eigen::MatrixXd(2, 2) << 2.0, 0.4, 0.4, 1.0).finished();
  for (double nu : {1.0, 3.0, 6.5}) {
    const MultivariateT t(nu, SymMatrix(s));
    const PearsonVII p((nu + 2) / 2.0, SymMatrix(nu * s));
    for (int i = 0; i < 20; ++i) {
      const auto x = linalg::make_vector({oracle::uniform(g, -5, 5), oracle::uniform(g, -5, 5)});
      EXPECT_NEAR(t.log_pdf(x), p.log_pdf(x), 1e-12);
    }
  }
}

TEST(Pdf, MvnMatchesProductOfUnivariates) {
  const MultivariateGaussian n(linalg::make_vector({1.0, -2.0}), SymMatrix::diagonal({4.0, 0.25}));
  const auto x = linalg::make_vector({0.3, -1.1});
  EXPECT_NEAR(pdf(n, x), oracle::gauss_pdf(0.3, 1.0, 2.0) * oracle::gauss_pdf(-1.1, -2.0, 0.5), 1e-15);
}

TEST(Cdf, Examples) {
  EXPECT_DOUBLE_EQ(cdf(CauchyScale(1), 0.0), 0.5);
  EXPECT_NEAR(cdf(CauchyScale(2), 2.0), 0.75, 1e-15);
  // Quadrature of the density from -inf to 0.5.
  const double q = 0.5 + oracle::simpson([](double x) { return oracle::gauss_pdf(x, 0, 1); }, 0.0, 0.5, 2000);
  EXPECT_NEAR(cdf(UnivariateGaussian(0, 1), 0.5), q, 1e-13);
  EXPECT_NEAR(cdf(UnivariateGaussian(0, 1), 0.5), 0.6914625, 1e-7);
  EXPECT_THROW(cdf(MultivariateGaussian(Vector::Zero(2), SymMatrix::identity(2)), 0.0), Unsupported);
}

TEST(Erf, AgainstTaylorSeries) {
  EXPECT_EQ(bayeserr::erf(0.0), 0.0);
  EXPECT_NEAR(bayeserr::erf(0.5), 0.5204999, 1e-7);
  for (double x = -3.0; x <= 3.0; x += 0.125) {
    EXPECT_NEAR(bayeserr::erf(x), oracle::erf_taylor(x), 1e-15);
    EXPECT_EQ(bayeserr::erf(x), -bayeserr::erf(-x));
  }
}

TEST(Construction, Invariants) {
  EXPECT_THROW(UnivariateGaussian(0, 0), DomainError);
  EXPECT_THROW(CauchyScale(-1), DomainError);
  EXPECT_THROW(PearsonVII(1.0, SymMatrix::identity(2)), DomainError);  // lambda must exceed d/2
  EXPECT_THROW(MultivariateT(0.5, SymMatrix::identity(2)), DomainError);
  EXPECT_THROW(MultivariateGaussian(Vector::Zero(3), SymMatrix::identity(2)), DimensionMismatch);
  EXPECT_THROW(MultivariateGaussian(Vector::Zero(2), SymMatrix::diagonal({1, -1})), NotPositiveDefinite);
  EXPECT_EQ(MultivariateT(6, SymMatrix::identity(2)).t(), -4.0);
}

TEST(Sample, DeterministicPerSeed) {
  const Distribution t = MultivariateT(6.0, SymMatrix::identity(3));
  RandomStream a(42), b(42), c(43);
  const auto xa = sample(t, a, 100), xb = sample(t, b, 100), xc = sample(t, c, 100);
  for (std::size_t i = 0; i < xa.size(); ++i) EXPECT_EQ(xa[i], xb[i]);
  EXPECT_NE(xa[0], xc[0]);
}

TEST(Sample, GaussianMean) {
  RandomStream rng(1);
  const std::size_t n = 100000;
  const auto xs = sample(UnivariateGaussian(0, 1), rng, n);
  double m = 0;
  for (const auto& x : xs) m += x(0);
  m /= n;
  EXPECT_LT(std::abs(m), 4.0 / std::sqrt(double(n)));
}

TEST(Sample, MultivariateTCovariance) {
  RandomStream rng(2);
  const std::size_t n = 100000;
  const auto xs = sample(MultivariateT(6.0, SymMatrix::identity(2)), rng, n);
  Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
  for (const auto& x : xs) c += x * x.transpose();
  c /= n;
  EXPECT_NEAR(c(0, 0), 1.5, 0.15);
  EXPECT_NEAR(c(1, 1), 1.5, 0.15);
  EXPECT_NEAR(c(0, 1), 0.0, 0.15);
}

TEST(Sample, PearsonCovariance) {
  // Cov = Sigma / (2 lambda - d - 2) for lambda > d/2 + 1.
  RandomStream rng(3);
  const std::size_t n = 200000;
  const PearsonVII p(4.0, SymMatrix::diagonal({2.0, 1.0}));
  const auto xs = sample(p, rng, n);
  Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
  for (const auto& x : xs) c += x * x.transpose();
  c /= n;
  EXPECT_NEAR(c(0, 0), 2.0 / 4.0, 0.05);
  EXPECT_NEAR(c(1, 1), 1.0 / 4.0, 0.025);
}

TEST(Sample, CauchyQuartiles) {
  RandomStream rng(4);
  const std::size_t n = 100000;
  const auto xs = sample(CauchyScale(3.0), rng, n);
  std::size_t inside = 0;
  for (const auto& x : xs) inside += std::abs(x(0)) < 3.0;
  EXPECT_NEAR(double(inside) / n, 0.5, 0.01);
}

TEST(RandomStream, UniformOpenInterval) {
  RandomStream rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, ChiSquaredMean) {
  RandomStream rng(6);
  for (double k : {1.0, 2.5, 6.0, 80.0}) {
    double m = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) m += rng.chi_squared(k);
    m /= n;
    EXPECT_NEAR(m, k, 5.0 * std::sqrt(2.0 * k / n)) << k;
  }
}
