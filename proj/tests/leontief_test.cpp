#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pricelab/leontief.hpp"

namespace pricelab {
namespace {

using Economy = LeontiefEconomy<double>;

Economy two_goods() {
  Economy e;
  e.a.resize(2, 2);
  e.a << 0.0, 0.2, 0.3, 0.0;
  e.labor = Eigen::Vector2d(1.0, 1.0);
  return e;
}

Economy random_economy(std::mt19937_64& rng, Index n, double max_row_sum) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Economy e;
  e.a = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return unit(rng) < 0.4 ? unit(rng) : 0.0; });
  for (Index i = 0; i < n; ++i) {
    const double s = e.a.row(i).sum();
    if (s > 0) e.a.row(i) *= max_row_sum * unit(rng) / s;
  }
  e.labor = Eigen::VectorXd::NullaryExpr(n, [&] { return 0.05 + unit(rng); });
  return e;
}

TEST(Productive, Examples) {
  Economy zero;
  zero.a = Eigen::MatrixXd::Zero(3, 3);
  zero.labor = Eigen::Vector3d(1, 2, 3);
  EXPECT_TRUE(is_productive(zero));

  Economy over;
  over.a = Eigen::MatrixXd::Constant(1, 1, 1.1);
  over.labor = Eigen::VectorXd::Ones(1);
  EXPECT_FALSE(is_productive(over));

  EXPECT_TRUE(is_productive(two_goods()));
  EXPECT_NEAR(spectral_radius(two_goods().a), std::sqrt(0.06), 1e-9);
}

TEST(Productive, RejectsMalformedEconomies) {
  Economy e = two_goods();
  e.a(0, 1) = -0.1;
  EXPECT_THROW(is_productive(e), ValidationError);
  e = two_goods();
  e.a.conservativeResize(2, 3);
  EXPECT_THROW(is_productive(e), ValidationError);
  e = two_goods();
  e.labor[1] = 0.0;
  EXPECT_THROW(is_productive(e), ValidationError);
}

TEST(SpectralRadius, IsACertifiedUpperBound) {
  // defective (e.g. nilpotent) matrices converge only like 1/k, so sparse
  // instances are checked as a bound and dense positive ones for accuracy
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < 50; ++trial) {
    const Economy e = random_economy(rng, 1 + trial % 12, 1.3);
    const double rho = e.a.eigenvalues().cwiseAbs().maxCoeff();
    const double estimate = spectral_radius(e.a);
    EXPECT_GE(estimate, rho - 1e-9);
    EXPECT_LE(estimate, rho + 1e-3);
  }
}

TEST(SpectralRadius, MatchesEigenSolverOnPositiveMatrices) {
  std::mt19937_64 rng(403);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 20;
    const Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return unit(rng); }) / double(n);
    const double rho = a.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_NEAR(spectral_radius(a), rho, 1e-10 * (1 + rho));
  }
}

TEST(SolvePrices, NoMaterialInputsPriceAtLabor) {
  Economy e;
  e.a = Eigen::MatrixXd::Zero(2, 2);
  e.labor = Eigen::Vector2d(1.0, 2.0);
  EXPECT_EQ(solve_prices(e), Eigen::Vector2d(1.0, 2.0));
}

TEST(SolvePrices, TwoGoodExample) {
  // by hand: p1 = 1 + 0.2 p2, p2 = 1 + 0.3 p1  =>  p1 = 1.2 / 0.94
  const Eigen::VectorXd p = solve_prices(two_goods());
  EXPECT_NEAR(p[0], 1.2 / 0.94, 1e-14);
  EXPECT_NEAR(p[1], 1.0 + 0.3 * 1.2 / 0.94, 1e-14);
  EXPECT_NEAR(p[0], 1.27660, 1e-5);
  EXPECT_NEAR(p[1], 1.38298, 1e-5);
}

TEST(SolvePrices, NonProductiveIsRejected) {
  Economy over;
  over.a = Eigen::MatrixXd::Constant(1, 1, 1.1);
  over.labor = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(solve_prices(over), NoEquilibriumError);
}

TEST(Neumann, ZeroMatrixConvergesImmediately) {
  Economy e;
  e.a = Eigen::MatrixXd::Zero(2, 2);
  e.labor = Eigen::Vector2d(1.0, 2.0);
  const auto r = neumann_prices(e, 1e-12);
  EXPECT_EQ(r.prices, e.labor);
  EXPECT_LE(r.terms, 2);
}

TEST(Neumann, AgreesWithDirectSolve) {
  const auto r = neumann_prices(two_goods(), 1e-12);
  EXPECT_LE((r.prices - solve_prices(two_goods())).lpNorm<Eigen::Infinity>(), 1e-11);
}

TEST(Neumann, NearCriticalTermCount) {
  // one good with a = 0.999: terms a^k <= tol after ceil(log(tol) / log(a)) steps
  Economy e;
  e.a = Eigen::MatrixXd::Constant(1, 1, 0.999);
  e.labor = Eigen::VectorXd::Ones(1);
  const double tol = 1e-10;
  const auto r = neumann_prices(e, tol);
  const auto bound = Index(std::ceil(std::log(tol) / std::log(0.999))) + 1;
  EXPECT_LE(r.terms, bound);
  EXPECT_NEAR(r.prices[0], 1000.0, tol * 0.999 / 0.001 * 1.01);
  EXPECT_NEAR(solve_prices(e)[0], 1000.0, 1e-9);
}

TEST(Neumann, DivergenceIsDetected) {
  Economy e;
  e.a = Eigen::MatrixXd::Constant(1, 1, 1.0);
  e.labor = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(neumann_prices(e, 1e-12), NoEquilibriumError);
}

TEST(UnitCost, FixedPointAndHandCheck) {
  const Economy e = two_goods();
  const Eigen::VectorXd p = solve_prices(e);
  for (Index k = 0; k < 2; ++k) EXPECT_NEAR(unit_cost(e, p, k), p[k], 1e-14);
  EXPECT_NEAR(1.0 + 0.2 * 1.38298, 1.27660, 1e-5);
  EXPECT_THROW(unit_cost(e, p, 2), ValidationError);

  Economy zero;
  zero.a = Eigen::MatrixXd::Zero(2, 2);
  zero.labor = Eigen::Vector2d(3.0, 4.0);
  EXPECT_EQ(unit_cost(zero, Eigen::Vector2d(9.0, 9.0), 1), 4.0);
}

TEST(LeontiefProperties, RandomEconomies) {
  std::mt19937_64 rng(402);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    Economy e = random_economy(rng, 1 + trial % 50, 0.9);
    const Eigen::VectorXd p = solve_prices(e);
    const double scale = e.labor.lpNorm<Eigen::Infinity>();
    EXPECT_LE((p - (e.labor + e.a * p)).lpNorm<Eigen::Infinity>(), 1e-10 * scale);
    EXPECT_TRUE(((p - e.labor).array() >= -1e-12).all());

    // homogeneity in the wage numeraire
    Economy scaled = e;
    const double lambda = 0.5 + 3.0 * unit(rng);
    scaled.labor *= lambda;
    EXPECT_LE((solve_prices(scaled) - lambda * p).lpNorm<Eigen::Infinity>(), 1e-10 * lambda * p.maxCoeff());

    // more labor anywhere never lowers any price
    Economy bumped = e;
    bumped.labor[Index(trial) % e.goods()] += 0.5;
    EXPECT_TRUE(((solve_prices(bumped) - p).array() >= -1e-12).all());
  }
}

TEST(LeontiefProperties, LongDoubleScalar) {
  LeontiefEconomy<long double> e;
  e.a.resize(2, 2);
  e.a << 0.0L, 0.2L, 0.3L, 0.0L;
  e.labor = Eigen::Matrix<long double, 2, 1>(1.0L, 1.0L);
  const auto p = solve_prices(e);
  EXPECT_NEAR(double(p[0]), 1.2 / 0.94, 1e-15);
}

}  // namespace
}  // namespace pricelab
