#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pricelab/errors.hpp"

namespace pricelab {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/**
 * Reservation-price schedule of a single-good market.
 *
 * Each entry is one unit: a buyer value v_i or a seller cost c_j. Traders who
 * want several units appear several times. The schedule is kept in canonical
 * form, values sorted descending and costs sorted ascending, so two schedules
 * built from permutations of the same lists compare equal.
 */
template <typename Scalar>
class MarketSchedule {
 public:
  using Vector = VectorX<Scalar>;

  MarketSchedule() = default;

  MarketSchedule(std::vector<Scalar> values, std::vector<Scalar> costs) {
    check_entries(values, "value");
    check_entries(costs, "cost");
    std::sort(values.begin(), values.end(), std::greater<Scalar>());
    std::sort(costs.begin(), costs.end());
    values_ = Eigen::Map<const Vector>(values.data(), Index(values.size()));
    costs_ = Eigen::Map<const Vector>(costs.data(), Index(costs.size()));
  }

  template <typename DerivedV, typename DerivedC>
  static MarketSchedule from_eigen(const Eigen::MatrixBase<DerivedV>& values,
                                   const Eigen::MatrixBase<DerivedC>& costs) {
    return MarketSchedule(std::vector<Scalar>(values.derived().data(),
                                              values.derived().data() + values.size()),
                          std::vector<Scalar>(costs.derived().data(),
                                              costs.derived().data() + costs.size()));
  }

  /// Buyer values, descending.
  const Vector& values() const { return values_; }
  /// Seller costs, ascending.
  const Vector& costs() const { return costs_; }

  Index buyers() const { return values_.size(); }
  Index sellers() const { return costs_.size(); }
  bool empty() const { return buyers() == 0 && sellers() == 0; }

  friend bool operator==(const MarketSchedule& a, const MarketSchedule& b) {
    return a.values_.size() == b.values_.size() && a.costs_.size() == b.costs_.size() &&
           a.values_ == b.values_ && a.costs_ == b.costs_;
  }

 private:
  static void check_entries(const std::vector<Scalar>& xs, const char* what) {
    for (const Scalar& x : xs) {
      using std::isfinite;
      if (!isfinite(x) || x < Scalar(0)) {
        throw ConfigError(std::string("market ") + what +
                          " entries must be finite and non-negative");
      }
    }
  }

  Vector values_;
  Vector costs_;
};

using Schedule = MarketSchedule<double>;

/// Units demanded at price p: #{i : v_i >= p}.
template <typename Scalar>
Index demand_at(const MarketSchedule<Scalar>& market, Scalar p) {
  const auto& v = market.values();
  const Scalar* first = v.data();
  const Scalar* last = v.data() + v.size();
  // values are descending, so the qualifying entries form a prefix
  return Index(std::partition_point(first, last, [p](Scalar x) { return x >= p; }) - first);
}

/// Units supplied at price p: #{j : c_j <= p}.
template <typename Scalar>
Index supply_at(const MarketSchedule<Scalar>& market, Scalar p) {
  const auto& c = market.costs();
  const Scalar* first = c.data();
  const Scalar* last = c.data() + c.size();
  return Index(std::partition_point(first, last, [p](Scalar x) { return x <= p; }) - first);
}

/// Excess demand D(p) - S(p) in units.
template <typename Scalar>
Index excess_demand_at(const MarketSchedule<Scalar>& market, Scalar p) {
  return demand_at(market, p) - supply_at(market, p);
}

/// Abundance ratio alpha = m / n.
template <typename Scalar>
Scalar abundance(const MarketSchedule<Scalar>& market) {
  if (market.buyers() == 0) {
    throw DegenerateMarketError("abundance undefined: market has no buyers");
  }
  return Scalar(market.sellers()) / Scalar(market.buyers());
}

}  // namespace pricelab
