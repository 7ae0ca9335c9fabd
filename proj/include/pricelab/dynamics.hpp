#pragma once

#include <vector>

#include "pricelab/distribution.hpp"
#include "pricelab/lyapunov.hpp"
#include "pricelab/market.hpp"

namespace pricelab {

/**
 * Price adjustment dp/dt = gain * (D(p) - S(p)) on a discrete schedule,
 * discretized with an overshoot clamp.
 *
 * A raw Euler step can jump across the clearing set and oscillate. Each step
 * is therefore truncated at the first breakpoint where excess demand changes
 * sign, which keeps the direction of every step equal to the sign of excess
 * demand and V(p) nonincreasing along the path.
 */
class ExcessDemandLaw {
 public:
  explicit ExcessDemandLaw(const Schedule& market);

  const Schedule& market() const { return *market_; }

  Index excess(double p) const { return excess_demand_at(*market_, p); }

  /// True when 0 lies in the subdifferential of V at p, i.e. p is a
  /// competitive clearing price. Only counts at p are used.
  bool clears(double p) const;

  /// One clamped step of size gain_dt * excess(p); never returns p < 0.
  double step(double p, double gain_dt) const;

  /// Step size for which the first move from p0 spans 5% of the price range.
  double default_gain_dt(double p0) const;

 private:
  Index strictly_above(double p) const;  // #{v > p}
  Index strictly_below(double p) const;  // #{c < p}

  const Schedule* market_;
  std::vector<double> knots_;
};

double step_price(const Schedule& market, double p, double gain, double dt);

/// Large-market counterpart: the step follows G(p) - alpha F(p) and is
/// clamped at the clearing root when it would cross it.
double step_price(const ContinuousMarket& market, double p, double gain, double dt);

enum class Termination { balanced, entered_interval, max_steps };

struct Trajectory {
  std::vector<double> times;
  std::vector<double> prices;
  std::vector<double> v_series;
  std::vector<Index> excess;
  Termination termination = Termination::max_steps;

  bool converged() const { return termination != Termination::max_steps; }
  std::size_t size() const { return prices.size(); }
};

/// Iterates step_price from p0 until |D - S| <= tol, the clearing set is
/// entered, or max_steps steps have been taken. Non-convergence is reported
/// through `termination`.
Trajectory integrate(const Schedule& market, double p0, double gain, double dt,
                     Index max_steps, double tol = 0.0);

}  // namespace pricelab
