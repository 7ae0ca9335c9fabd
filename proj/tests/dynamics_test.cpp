#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pricelab/dynamics.hpp"
#include "pricelab/equilibrium.hpp"

namespace pricelab {
namespace {

const Schedule kTextbook({10, 8, 6}, {3, 5, 7});

TEST(StepPrice, RisesUnderExcessDemand) {
  EXPECT_GT(step_price(kTextbook, 2.0, 0.1, 1.0), 2.0);
}

TEST(StepPrice, FallsUnderExcessSupply) {
  EXPECT_LT(step_price(kTextbook, 9.0, 0.1, 1.0), 9.0);
}

TEST(StepPrice, FixedInsideClearingInterval) {
  for (double p : {6.0, 6.5, 7.0}) EXPECT_EQ(step_price(kTextbook, p, 3.0, 1.0), p);
}

TEST(StepPrice, TextbookEulerStep) {
  // D(4) = 3 and S(4) = 1, so 4 + 0.5 * 2
  EXPECT_EQ(oracle::demand({{10, 8, 6}, {3, 5, 7}}, 4.0), 3);
  EXPECT_EQ(oracle::supply({{10, 8, 6}, {3, 5, 7}}, 4.0), 1);
  EXPECT_DOUBLE_EQ(step_price(kTextbook, 4.0, 0.5, 1.0), 5.0);
}

TEST(StepPrice, ClampedAtTheClearingInterval) {
  EXPECT_DOUBLE_EQ(step_price(kTextbook, 4.0, 100.0, 1.0), 6.0);
  EXPECT_DOUBLE_EQ(step_price(kTextbook, 9.5, 100.0, 1.0), 7.0);
}

TEST(StepPrice, RejectsBadRates) {
  EXPECT_THROW(step_price(kTextbook, 4.0, 0.0, 1.0), ConfigError);
  EXPECT_THROW(step_price(kTextbook, 4.0, 1.0, -1.0), ConfigError);
  EXPECT_THROW(step_price(kTextbook, -4.0, 1.0, 1.0), ConfigError);
}

TEST(StepPrice, ContinuousMarketStopsAtRoot) {
  const ContinuousMarket m(Exponential{5.0, 0.0}, Exponential{11.0, 0.0}, 1.0);
  const double root = clear_continuous(m, RootOptions{0.0, 0.0});
  const double up = step_price(m, 1.0, 1000.0, 1.0);
  EXPECT_LE(up, root);
  EXPECT_NEAR(up, root, 1e-9);
  const double small = step_price(m, 1.0, 0.1, 1.0);
  EXPECT_GT(small, 1.0);
  EXPECT_LT(small, root);
  EXPECT_GT(step_price(m, 20.0, 0.1, 1.0), root);
  EXPECT_LT(step_price(m, 20.0, 0.1, 1.0), 20.0);
}

TEST(Integrate, StartInsideIntervalIsSinglePoint) {
  const auto path = integrate(kTextbook, 6.5, 1.0, 1.0, 100);
  EXPECT_EQ(path.size(), 1u);
  EXPECT_TRUE(path.converged());
}

TEST(Integrate, BilateralHandIteration) {
  // gain*dt = 0.25 and excess 1 below 4: 0, 0.25, ..., 4 in 16 steps
  const auto path = integrate(Schedule({10}, {4}), 0.0, 0.25, 1.0, 1000);
  ASSERT_TRUE(path.converged());
  ASSERT_EQ(path.size(), 17u);
  for (std::size_t k = 0; k < path.size(); ++k) {
    EXPECT_DOUBLE_EQ(path.prices[k], 0.25 * double(k));
  }
  EXPECT_EQ(path.termination, Termination::entered_interval);
}

TEST(Integrate, NonConvergenceIsReportedNotThrown) {
  const auto path = integrate(kTextbook, 0.0, 1e-3, 1.0, 5);
  EXPECT_FALSE(path.converged());
  EXPECT_EQ(path.size(), 6u);
}

TEST(Integrate, ToleranceStopsOnSmallExcess) {
  const auto path = integrate(kTextbook, 2.0, 0.01, 1.0, 10000, 2.0);
  EXPECT_EQ(path.termination, Termination::balanced);
  EXPECT_LE(std::abs(double(path.excess.back())), 2.0);
}

TEST(DynamicsProperties, LyapunovDescentAndConvergence) {
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> start(0.0, 30.0), gain(0.01, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto raw = oracle::random_market(rng, 15, 15);
    const Schedule m(raw.values, raw.costs);
    const auto clearing = clear_discrete(m);
    if (!clearing.trades()) continue;
    const auto path = integrate(m, start(rng), gain(rng), 1.0, 100000);
    ASSERT_TRUE(path.converged());
    EXPECT_TRUE(clearing.interval->contains(path.prices.back()));

    auto gap = [&](double p) {
      return std::max({0.0, clearing.price_lo() - p, p - clearing.price_hi()});
    };
    for (std::size_t k = 1; k < path.size(); ++k) {
      EXPECT_LE(path.v_series[k], path.v_series[k - 1]);
      EXPECT_LE(gap(path.prices[k]), gap(path.prices[k - 1]));
      const double move = path.prices[k] - path.prices[k - 1];
      const Index e = path.excess[k - 1];
      EXPECT_TRUE(move == 0.0 || (move > 0) == (e > 0));
    }
  }
}

TEST(DynamicsProperties, DefaultStepSpansFivePercent) {
  const ExcessDemandLaw law(kTextbook);
  const double k = law.default_gain_dt(0.0);
  EXPECT_DOUBLE_EQ(k * 3.0, 0.05 * 10.0);
}

}  // namespace
}  // namespace pricelab
