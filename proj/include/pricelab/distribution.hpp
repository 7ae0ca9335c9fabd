#pragma once

#include <cstdint>
#include <variant>

#include "pricelab/market.hpp"

namespace pricelab {

/// shift + Exp(mean): `mean` is the scale of the exponential part, so the
/// lower support point is `shift` and the overall mean is shift + mean.
struct Exponential {
  double mean = 1.0;
  double shift = 0.0;
  friend bool operator==(const Exponential&, const Exponential&) = default;
};

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const Uniform&, const Uniform&) = default;
};

/// Reservation-price distribution for one side of a large market.
class Distribution {
 public:
  using Family = std::variant<Exponential, Uniform>;

  Distribution() : Distribution(Exponential{}) {}
  Distribution(Exponential e);  // NOLINT(google-explicit-constructor)
  Distribution(Uniform u);      // NOLINT(google-explicit-constructor)

  const Family& family() const { return family_; }

  /// P(X >= p).
  double survival(double p) const;
  /// P(X <= p).
  double cdf(double p) const;
  double density(double p) const;
  double quantile(double u) const;
  double lower_support() const;
  /// +infinity for unbounded families.
  double upper_support() const;
  double mean() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Family family_;
};

/// Parametric large market: value and cost distributions plus abundance m/n.
struct ContinuousMarket {
  Distribution value_dist;
  Distribution cost_dist;
  double alpha = 1.0;

  ContinuousMarket() = default;
  ContinuousMarket(Distribution values, Distribution costs, double abundance);

  /// Share of buyers willing at p, G(p) = P(v >= p).
  double demand_share(double p) const { return value_dist.survival(p); }
  /// Share of sellers willing at p, F(p) = P(c <= p).
  double supply_share(double p) const { return cost_dist.cdf(p); }
  /// Per-buyer excess demand G(p) - alpha F(p).
  double excess(double p) const { return demand_share(p) - alpha * supply_share(p); }

  friend bool operator==(const ContinuousMarket&, const ContinuousMarket&) = default;
};

/// Throws ConfigError unless alpha is positive and both distributions are proper.
void validate(const ContinuousMarket& market);

/// Draws n buyer values and round(alpha*n) seller costs by inverse-CDF sampling.
Schedule sample_schedule(const ContinuousMarket& market, Index n, std::uint64_t seed);

}  // namespace pricelab
