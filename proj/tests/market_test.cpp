#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pricelab/distribution.hpp"
#include "pricelab/market.hpp"

namespace pricelab {
namespace {

const Schedule kTextbook({10, 8, 6}, {3, 5, 7});

TEST(MarketSchedule, CanonicalOrder) {
  const Schedule m({6, 10, 8}, {7, 3, 5});
  EXPECT_EQ(m.values(), (Eigen::Vector3d(10, 8, 6)));
  EXPECT_EQ(m.costs(), (Eigen::Vector3d(3, 5, 7)));
  EXPECT_EQ(m, kTextbook);
}

TEST(MarketSchedule, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(Schedule({-1.0}, {}), ConfigError);
  EXPECT_THROW(Schedule({}, {std::nan("")}), ConfigError);
  EXPECT_THROW(Schedule({std::numeric_limits<double>::infinity()}, {1.0}), ConfigError);
}

TEST(MarketSchedule, DemandCountsValuesAtOrAbovePrice) {
  EXPECT_EQ(demand_at(kTextbook, 7.0), 2);
  EXPECT_EQ(demand_at(kTextbook, 11.0), 0);
  EXPECT_EQ(demand_at(kTextbook, 6.0), 3);
  EXPECT_EQ(demand_at(kTextbook, 0.0), 3);
}

TEST(MarketSchedule, SupplyCountsCostsAtOrBelowPrice) {
  EXPECT_EQ(supply_at(kTextbook, 5.0), 2);
  EXPECT_EQ(supply_at(kTextbook, 2.0), 0);
  EXPECT_EQ(supply_at(kTextbook, 100.0), 3);
}

TEST(MarketSchedule, EmptyScheduleCountsZero) {
  const Schedule empty;
  EXPECT_EQ(demand_at(empty, 1.0), 0);
  EXPECT_EQ(supply_at(empty, 1.0), 0);
}

TEST(MarketSchedule, Abundance) {
  EXPECT_DOUBLE_EQ(abundance(kTextbook), 1.0);
  const Schedule scarce(std::vector<double>(100, 1.0), {0.5});
  EXPECT_DOUBLE_EQ(abundance(scarce), 0.01);
  EXPECT_THROW(abundance(Schedule({}, {1.0})), DegenerateMarketError);
}

TEST(MarketSchedule, LongDoubleScalar) {
  const MarketSchedule<long double> m({10.0L, 8.0L, 6.0L}, {3.0L, 5.0L, 7.0L});
  EXPECT_EQ(demand_at(m, 7.0L), 2);
  EXPECT_EQ(supply_at(m, 5.0L), 2);
}

TEST(MarketProperties, CountsAreMonotoneAndInRange) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> price(-1.0, 25.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto raw = oracle::random_market(rng, 15, 15, 10, 0);
    const Schedule m(raw.values, raw.costs);
    double p1 = price(rng), p2 = price(rng);
    if (p1 > p2) std::swap(p1, p2);
    EXPECT_GE(demand_at(m, p1), demand_at(m, p2));
    EXPECT_LE(supply_at(m, p1), supply_at(m, p2));
    EXPECT_EQ(demand_at(m, p1), oracle::demand(raw, p1));
    EXPECT_EQ(supply_at(m, p2), oracle::supply(raw, p2));
    EXPECT_LE(demand_at(m, p1), m.buyers());
    EXPECT_LE(supply_at(m, p2), m.sellers());
  }
}

TEST(MarketProperties, CanonicalizationIgnoresInputOrder) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto raw = oracle::random_real_market(rng, 20, 20);
    const Schedule a(raw.values, raw.costs);
    std::shuffle(raw.values.begin(), raw.values.end(), rng);
    std::shuffle(raw.costs.begin(), raw.costs.end(), rng);
    const Schedule b(raw.values, raw.costs);
    EXPECT_EQ(a, b);
    // idempotent
    const Schedule c = Schedule::from_eigen(a.values(), a.costs());
    EXPECT_EQ(a, c);
  }
}

const ContinuousMarket kFigure1(Exponential{5.0, 0.0}, Exponential{11.0, 0.0}, 1.0);

TEST(SampleSchedule, EmptyWhenNoBuyers) {
  const Schedule s = sample_schedule(kFigure1, 0, 3);
  EXPECT_TRUE(s.empty());
}

TEST(SampleSchedule, DeterministicGivenSeed) {
  EXPECT_EQ(sample_schedule(kFigure1, 500, 99), sample_schedule(kFigure1, 500, 99));
  EXPECT_FALSE(sample_schedule(kFigure1, 500, 99) == sample_schedule(kFigure1, 500, 100));
}

TEST(SampleSchedule, SellerCountFollowsAlpha) {
  const ContinuousMarket scarce(Exponential{5.0, 0.0}, Exponential{11.0, 2.0}, 0.01);
  const Schedule s = sample_schedule(scarce, 1000, 5);
  EXPECT_EQ(s.buyers(), 1000);
  EXPECT_EQ(s.sellers(), 10);
  EXPECT_GE(s.costs().minCoeff(), 2.0);
}

TEST(SampleSchedule, ExponentialMeanByLawOfLargeNumbers) {
  // standard error of the mean is 5 / sqrt(1e5) ~ 0.016, so 0.1 is > 6 sigma
  const Schedule s = sample_schedule(kFigure1, 100000, 2024);
  EXPECT_NEAR(s.values().mean(), 5.0, 0.1);
  EXPECT_NEAR(s.costs().mean(), 11.0, 0.2);
}

TEST(Distribution, RejectsImproperParameters) {
  EXPECT_THROW(Distribution(Exponential{0.0, 0.0}), ConfigError);
  EXPECT_THROW(Distribution(Exponential{-2.0, 0.0}), ConfigError);
  EXPECT_THROW(Distribution(Uniform{3.0, 3.0}), ConfigError);
  EXPECT_THROW(Distribution(Uniform{-1.0, 3.0}), ConfigError);
  EXPECT_THROW(ContinuousMarket(Exponential{}, Exponential{}, 0.0), ConfigError);
  EXPECT_THROW(ContinuousMarket(Exponential{}, Exponential{}, -1.0), ConfigError);
}

TEST(Distribution, ShiftedExponentialFunctions) {
  const Distribution d(Exponential{11.0, 2.0});
  EXPECT_DOUBLE_EQ(d.cdf(2.0), 0.0);
  EXPECT_DOUBLE_EQ(d.survival(1.0), 1.0);
  EXPECT_NEAR(d.cdf(13.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(d.quantile(d.cdf(7.5)), 7.5, 1e-12);
  EXPECT_DOUBLE_EQ(d.lower_support(), 2.0);
  EXPECT_TRUE(std::isinf(d.upper_support()));
  EXPECT_DOUBLE_EQ(d.mean(), 13.0);
}

TEST(Distribution, UniformFunctions) {
  const Distribution d(Uniform{2.0, 12.0});
  EXPECT_DOUBLE_EQ(d.cdf(7.0), 0.5);
  EXPECT_DOUBLE_EQ(d.survival(7.0), 0.5);
  EXPECT_DOUBLE_EQ(d.density(5.0), 0.1);
  EXPECT_DOUBLE_EQ(d.density(13.0), 0.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.25), 4.5);
}

}  // namespace
}  // namespace pricelab
