#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pricelab/distribution.hpp"
#include "pricelab/market.hpp"

namespace pricelab {

template <typename Scalar>
struct PriceInterval {
  Scalar lo;
  Scalar hi;

  Scalar midpoint() const { return lo + (hi - lo) / Scalar(2); }
  bool contains(Scalar p) const { return lo <= p && p <= hi; }
  friend bool operator==(const PriceInterval&, const PriceInterval&) = default;
};

/// Outcome of clearing a discrete market. `interval` is empty when no unit
/// can trade without a loss.
template <typename Scalar>
struct ClearingResult {
  std::optional<PriceInterval<Scalar>> interval;
  Index quantity = 0;
  Scalar max_surplus = Scalar(0);

  bool trades() const { return interval.has_value(); }
  Scalar price_lo() const { return interval ? interval->lo : std::numeric_limits<Scalar>::quiet_NaN(); }
  Scalar price_hi() const { return interval ? interval->hi : std::numeric_limits<Scalar>::quiet_NaN(); }
  Scalar canonical_price() const {
    return interval ? interval->midpoint() : std::numeric_limits<Scalar>::quiet_NaN();
  }
};

/**
 * Competitive clearing of a discrete schedule.
 *
 * Q is the largest k with v_(k) >= c_(k). The clearing interval is
 * [max(c_(Q), v_(Q+1)), min(v_(Q), c_(Q+1))]: the marginal pair bounds it from
 * inside and the first excluded buyer and seller bound it from outside.
 */
template <typename Scalar>
ClearingResult<Scalar> clear_discrete(const MarketSchedule<Scalar>& market) {
  if (market.empty()) {
    throw DegenerateMarketError("cannot clear a market with no traders");
  }
  const auto& v = market.values();
  const auto& c = market.costs();
  const Index pairs = std::min(v.size(), c.size());

  Index q = 0;
  while (q < pairs && v[q] >= c[q]) ++q;

  ClearingResult<Scalar> result;
  result.quantity = q;
  if (q == 0) return result;

  Scalar lo = c[q - 1];
  if (q < v.size()) lo = std::max(lo, v[q]);
  Scalar hi = v[q - 1];
  if (q < c.size()) hi = std::min(hi, c[q]);

  result.interval = PriceInterval<Scalar>{lo, hi};
  result.max_surplus = (v.head(q) - c.head(q)).sum();
  return result;
}

/// Bisection settings for continuous clearing. Zero tolerances run the
/// bracket down to adjacent doubles.
struct RootOptions {
  /// on |G - alpha F| relative to max(G, alpha F)
  double residual_tol = 1e-9;
  double width_tol = 1e-9;
  int max_iterations = 400;
};

/// Upper end of the initial search bracket [0, hi].
double clearing_bracket_hi(const ContinuousMarket& market);

/// Solves G(p) = alpha F(p) by bisection.
double clear_continuous(const ContinuousMarket& market, const RootOptions& options = {});

enum class SweepStatus { ok, no_crossing };

struct ScarcityPoint {
  double alpha;
  double p_star;  // NaN when status != ok
  SweepStatus status;
  std::string message;
};

/// One clearing solve per alpha, returned in ascending alpha order. A point
/// that fails is marked and the sweep continues.
std::vector<ScarcityPoint> scarcity_curve(const ContinuousMarket& family,
                                          std::vector<double> alphas,
                                          const RootOptions& options = {});

/// dp*/dalpha = F(p*) / (G'(p*) - alpha F'(p*)) from the implicit function theorem.
double scarcity_derivative(const ContinuousMarket& family, double alpha,
                           const RootOptions& options = {});

}  // namespace pricelab
