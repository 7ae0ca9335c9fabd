#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pricelab/market.hpp"
#include "pricelab/session_log.hpp"

namespace pricelab {

/// Price-value distance by direct summation:
/// V(p) = sum_{v_i >= p} |v_i - p| + sum_{c_j <= p} |c_j - p|.
template <typename Scalar>
Scalar v_direct(const MarketSchedule<Scalar>& market, Scalar p) {
  using std::abs;
  Scalar total(0);
  for (Index i = 0; i < market.buyers(); ++i) {
    const Scalar v = market.values()[i];
    if (v >= p) total += abs(v - p);
  }
  for (Index j = 0; j < market.sellers(); ++j) {
    const Scalar c = market.costs()[j];
    if (c <= p) total += abs(c - p);
  }
  return total;
}

/**
 * V(p) tabulated as an integral of excess supply.
 *
 * Knots are 0 followed by the merged distinct values and costs. On each open
 * segment between knots S(x) - D(x) is a constant integer, so V is rebuilt
 * from V(0) = sum of values by accumulating slope * width. Queries are a
 * binary search plus one linear step.
 */
template <typename Scalar>
class VProfile {
 public:
  using Vector = VectorX<Scalar>;

  explicit VProfile(const MarketSchedule<Scalar>& market) {
    std::vector<Scalar> values(market.values().data(),
                               market.values().data() + market.buyers());
    std::vector<Scalar> costs(market.costs().data(), market.costs().data() + market.sellers());
    std::sort(values.begin(), values.end());
    // costs are already ascending

    std::vector<Scalar> merged;
    merged.reserve(values.size() + costs.size() + 1);
    merged.push_back(Scalar(0));
    std::merge(values.begin(), values.end(), costs.begin(), costs.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    const std::size_t k = merged.size();
    knots_ = Eigen::Map<const Vector>(merged.data(), Index(k));
    v_at_.resize(Index(k));
    slope_after_.resize(Index(k));

    // sweep: supplied = #{c <= x}, above = #{v > x} at the current knot x
    std::size_t supplied = 0;
    std::size_t at_or_below = 0;
    Scalar acc(0);
    for (Scalar v : values) acc += v;
    for (std::size_t i = 0; i < k; ++i) {
      const Scalar x = merged[i];
      while (supplied < costs.size() && costs[supplied] <= x) ++supplied;
      while (at_or_below < values.size() && values[at_or_below] <= x) ++at_or_below;
      const auto above = Index(values.size() - at_or_below);
      if (i > 0) acc += Scalar(slope_after_[Index(i - 1)]) * (x - merged[i - 1]);
      v_at_[Index(i)] = acc;
      slope_after_[Index(i)] = Index(supplied) - above;
    }

    // V is convex, so the slopes increase across knots
    Index first = 0;
    while (first < Index(k) && slope_after_[first] < 0) ++first;
    argmin_lo_ = first < Index(k) ? knots_[first] : knots_[Index(k) - 1];
    Index last = first;
    while (last < Index(k) && slope_after_[last] <= 0) ++last;
    argmin_hi_ = last < Index(k) ? knots_[last] : std::numeric_limits<Scalar>::infinity();
  }

  /// 0 followed by the distinct values and costs, ascending.
  const Vector& breakpoints() const { return knots_; }
  const Vector& v_at() const { return v_at_; }
  /// Integer slope S - D on the segment starting at each breakpoint.
  const Eigen::Matrix<Index, Eigen::Dynamic, 1>& slopes() const { return slope_after_; }

  Scalar argmin_lo() const { return argmin_lo_; }
  /// +infinity when the market has buyers only.
  Scalar argmin_hi() const { return argmin_hi_; }
  Scalar min_value() const { return (*this)(argmin_lo_); }

  Scalar operator()(Scalar p) const {
    if (p < Scalar(0)) throw ConfigError("V is defined for prices p >= 0");
    const Scalar* first = knots_.data();
    const Scalar* last = first + knots_.size();
    const Index seg = Index(std::upper_bound(first, last, p) - first) - 1;
    return v_at_[seg] + Scalar(slope_after_[seg]) * (p - knots_[seg]);
  }

 private:
  Vector knots_;
  Vector v_at_;
  Eigen::Matrix<Index, Eigen::Dynamic, 1> slope_after_;
  Scalar argmin_lo_;
  Scalar argmin_hi_;
};

/// V(p) = V(0) + integral_0^p [S(x) - D(x)] dx.
template <typename Scalar>
Scalar v_integral(const MarketSchedule<Scalar>& market, Scalar p) {
  return VProfile<Scalar>(market)(p);
}

/// Argmin interval of V, the generalized median of the traders' valuations.
template <typename Scalar>
std::pair<Scalar, Scalar> v_argmin(const MarketSchedule<Scalar>& market) {
  if (market.empty()) throw DegenerateMarketError("V has no argmin on an empty market");
  VProfile<Scalar> profile(market);
  return {profile.argmin_lo(), profile.argmin_hi()};
}

/// Total gains from executed trades, sum of (v - c); the price only splits it.
inline double realized_surplus(const SessionLog& log) {
  double total = 0.0;
  for (const Transaction& t : log.transactions) {
    total += (t.buyer_value - t.price) + (t.price - t.seller_cost);
  }
  return total;
}

}  // namespace pricelab
