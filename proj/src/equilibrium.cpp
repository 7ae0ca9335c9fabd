#include "pricelab/equilibrium.hpp"

#include "pricelab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pricelab {

namespace {

constexpr double kTailMass = 1e-5;
constexpr int kMaxBracketDoublings = 64;

}  // namespace

double clearing_bracket_hi(const ContinuousMarket& market) {
  double hi = market.value_dist.quantile(1.0 - kTailMass);
  const double cost_top = market.cost_dist.upper_support();
  hi = std::max(hi, std::isfinite(cost_top) ? cost_top : market.cost_dist.quantile(1.0 - kTailMass));
  return hi;
}

double clear_continuous(const ContinuousMarket& market, const RootOptions& options) {
  validate(market);
  double lo = 0.0;
  double hi = clearing_bracket_hi(market);

  if (market.excess(lo) < 0.0) {
    std::ostringstream msg;
    msg << "no crossing: G - alpha*F is already negative at p = " << lo;
    throw NoCrossingError(msg.str(), lo, hi);
  }
  // small alpha pushes the root into the value tail past the default bracket
  for (int i = 0; market.excess(hi) > 0.0; ++i) {
    if (i == kMaxBracketDoublings || !std::isfinite(2.0 * hi)) {
      std::ostringstream msg;
      msg << "no crossing of G - alpha*F on [" << lo << ", " << hi << "]";
      throw NoCrossingError(msg.str(), lo, hi);
    }
    hi *= 2.0;
  }

  // invariant: excess(lo) > 0 or lo == 0, excess(hi) <= 0
  for (int i = 0; i < options.max_iterations; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double g = market.demand_share(mid);
    const double f = market.alpha * market.supply_share(mid);
    const double h = g - f;
    // relative to the shares, so far tails at tiny or huge alpha still resolve
    if (std::abs(h) <= options.residual_tol * std::max(g, f)) return mid;
    if (h > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= options.width_tol) break;
  }
  return lo + 0.5 * (hi - lo);
}

std::vector<ScarcityPoint> scarcity_curve(const ContinuousMarket& family,
                                          std::vector<double> alphas,
                                          const RootOptions& options) {
  std::sort(alphas.begin(), alphas.end());
  for (double a : alphas) {
    if (!(std::isfinite(a) && a > 0.0)) throw ConfigError("sweep alphas must be finite and > 0");
  }

  return parallel_map<ScarcityPoint>(alphas.size(), [&](std::size_t i) {
    ContinuousMarket point = family;
    point.alpha = alphas[i];
    try {
      return ScarcityPoint{point.alpha, clear_continuous(point, options), SweepStatus::ok, {}};
    } catch (const NoCrossingError& e) {
      return ScarcityPoint{point.alpha, std::numeric_limits<double>::quiet_NaN(),
                           SweepStatus::no_crossing, e.what()};
    }
  });
}

double scarcity_derivative(const ContinuousMarket& family, double alpha,
                           const RootOptions& options) {
  ContinuousMarket point = family;
  point.alpha = alpha;
  const double p = clear_continuous(point, options);

  const double f = point.supply_share(p);
  if (f == 0.0) return 0.0;
  // G = 1 - CDF of values, so G' is minus the value density
  const double denom = -point.value_dist.density(p) - alpha * point.cost_dist.density(p);
  if (!(std::abs(denom) > 0.0) || !std::isfinite(denom)) {
    std::ostringstream msg;
    msg << "scarcity derivative undefined: densities vanish at p* = " << p;
    throw DerivativeUndefinedError(msg.str());
  }
  return f / denom;
}

}  // namespace pricelab
