#include "pricelab/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace pricelab {

namespace {

void check_rate(double gain, double dt) {
  if (!(std::isfinite(gain) && gain > 0.0)) throw ConfigError("gain must be finite and > 0");
  if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("dt must be finite and > 0");
}

void check_price(double p) {
  if (!(std::isfinite(p) && p >= 0.0)) throw ConfigError("price must be finite and >= 0");
}

}  // namespace

ExcessDemandLaw::ExcessDemandLaw(const Schedule& market) : market_(&market) {
  const auto& v = market.values();
  const auto& c = market.costs();
  knots_.reserve(std::size_t(v.size() + c.size() + 1));
  knots_.push_back(0.0);
  knots_.insert(knots_.end(), v.data(), v.data() + v.size());
  knots_.insert(knots_.end(), c.data(), c.data() + c.size());
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
}

Index ExcessDemandLaw::strictly_above(double p) const {
  const auto& v = market_->values();
  return Index(std::partition_point(v.data(), v.data() + v.size(), [p](double x) { return x > p; }) -
               v.data());
}

Index ExcessDemandLaw::strictly_below(double p) const {
  const auto& c = market_->costs();
  return Index(std::partition_point(c.data(), c.data() + c.size(), [p](double x) { return x < p; }) -
               c.data());
}

bool ExcessDemandLaw::clears(double p) const {
  const Index left_slope = strictly_below(p) - demand_at(*market_, p);
  const Index right_slope = supply_at(*market_, p) - strictly_above(p);
  return left_slope <= 0 && right_slope >= 0;
}

double ExcessDemandLaw::step(double p, double gain_dt) const {
  if (clears(p)) return p;
  const Index e = excess(p);
  const double target = p + gain_dt * double(e);

  if (e > 0) {
    // first knot above p where excess demand just to its right is <= 0
    auto it = std::partition_point(
        std::upper_bound(knots_.begin(), knots_.end(), p), knots_.end(),
        [this](double b) { return strictly_above(b) - supply_at(*market_, b) > 0; });
    return it == knots_.end() ? target : std::min(target, *it);
  }
  // last knot below p where excess demand just to its left is >= 0
  auto begin = knots_.begin();
  auto end = std::lower_bound(knots_.begin(), knots_.end(), p);
  auto it = std::partition_point(begin, end, [this](double b) {
    return demand_at(*market_, b) - strictly_below(b) >= 0;
  });
  const double floor = it == begin ? 0.0 : *std::prev(it);
  return std::max({target, floor, 0.0});
}

double ExcessDemandLaw::default_gain_dt(double p0) const {
  const double range = std::max(knots_.back() - knots_.front(), 1e-12);
  const Index e = excess(p0);
  return 0.05 * range / double(std::max<Index>(1, e < 0 ? -e : e));
}

double step_price(const Schedule& market, double p, double gain, double dt) {
  check_rate(gain, dt);
  check_price(p);
  return ExcessDemandLaw(market).step(p, gain * dt);
}

double step_price(const ContinuousMarket& market, double p, double gain, double dt) {
  check_rate(gain, dt);
  check_price(p);
  validate(market);
  const double e = market.excess(p);
  if (e == 0.0) return p;
  double next = std::max(0.0, p + gain * dt * e);
  const double e_next = market.excess(next);
  if ((e > 0.0 && e_next < 0.0) || (e < 0.0 && e_next > 0.0)) {
    // bisect for the crossing between p and next, staying on p's side
    double keep = p;
    double cross = next;
    for (int i = 0; i < 200; ++i) {
      const double mid = keep + 0.5 * (cross - keep);
      if (mid == keep || mid == cross) break;
      const double em = market.excess(mid);
      if ((e > 0.0 && em >= 0.0) || (e < 0.0 && em <= 0.0)) {
        keep = mid;
      } else {
        cross = mid;
      }
    }
    next = keep;
  }
  return next;
}

Trajectory integrate(const Schedule& market, double p0, double gain, double dt, Index max_steps,
                     double tol) {
  check_rate(gain, dt);
  check_price(p0);
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
  if (market.empty()) throw DegenerateMarketError("cannot integrate prices on an empty market");

  const ExcessDemandLaw law(market);
  const VProfile<double> distance(market);
  Trajectory path;
  double p = p0;
  for (Index k = 0;; ++k) {
    const Index e = law.excess(p);
    path.times.push_back(double(k) * dt);
    path.prices.push_back(p);
    path.v_series.push_back(distance(p));
    path.excess.push_back(e);

    if (law.clears(p)) {
      path.termination = Termination::entered_interval;
      break;
    }
    if (std::abs(double(e)) <= tol) {
      path.termination = Termination::balanced;
      break;
    }
    if (k == max_steps) {
      path.termination = Termination::max_steps;
      break;
    }
    p = law.step(p, gain * dt);
  }
  return path;
}

}  // namespace pricelab
