#include "pricelab/distribution.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pricelab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check(const Exponential& e) {
  if (!(std::isfinite(e.mean) && e.mean > 0.0)) {
    throw ConfigError("exponential distribution requires mean > 0");
  }
  if (!(std::isfinite(e.shift) && e.shift >= 0.0)) {
    throw ConfigError("exponential distribution requires finite shift >= 0");
  }
}

void check(const Uniform& u) {
  if (!(std::isfinite(u.lo) && std::isfinite(u.hi) && u.lo < u.hi)) {
    throw ConfigError("uniform distribution requires finite lo < hi");
  }
  if (u.lo < 0.0) {
    throw ConfigError("uniform distribution requires lo >= 0");
  }
}

}  // namespace

Distribution::Distribution(Exponential e) : family_(e) { check(e); }
Distribution::Distribution(Uniform u) : family_(u) { check(u); }

double Distribution::survival(double p) const {
  return std::visit(overloaded{
                        [p](const Exponential& e) {
                          return p <= e.shift ? 1.0 : std::exp(-(p - e.shift) / e.mean);
                        },
                        [p](const Uniform& u) {
                          if (p <= u.lo) return 1.0;
                          if (p >= u.hi) return 0.0;
                          return (u.hi - p) / (u.hi - u.lo);
                        },
                    },
                    family_);
}

double Distribution::cdf(double p) const {
  return std::visit(overloaded{
                        [p](const Exponential& e) {
                          return p <= e.shift ? 0.0 : -std::expm1(-(p - e.shift) / e.mean);
                        },
                        [p](const Uniform& u) {
                          if (p <= u.lo) return 0.0;
                          if (p >= u.hi) return 1.0;
                          return (p - u.lo) / (u.hi - u.lo);
                        },
                    },
                    family_);
}

double Distribution::density(double p) const {
  return std::visit(overloaded{
                        [p](const Exponential& e) {
                          return p < e.shift ? 0.0 : std::exp(-(p - e.shift) / e.mean) / e.mean;
                        },
                        [p](const Uniform& u) {
                          return (p < u.lo || p > u.hi) ? 0.0 : 1.0 / (u.hi - u.lo);
                        },
                    },
                    family_);
}

double Distribution::quantile(double u) const {
  return std::visit(overloaded{
                        [u](const Exponential& e) { return e.shift - e.mean * std::log1p(-u); },
                        [u](const Uniform& d) { return d.lo + u * (d.hi - d.lo); },
                    },
                    family_);
}

double Distribution::lower_support() const {
  return std::visit(overloaded{
                        [](const Exponential& e) { return e.shift; },
                        [](const Uniform& u) { return u.lo; },
                    },
                    family_);
}

double Distribution::upper_support() const {
  return std::visit(overloaded{
                        [](const Exponential&) { return std::numeric_limits<double>::infinity(); },
                        [](const Uniform& u) { return u.hi; },
                    },
                    family_);
}

double Distribution::mean() const {
  return std::visit(overloaded{
                        [](const Exponential& e) { return e.shift + e.mean; },
                        [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                    },
                    family_);
}

ContinuousMarket::ContinuousMarket(Distribution values, Distribution costs, double abundance)
    : value_dist(std::move(values)), cost_dist(std::move(costs)), alpha(abundance) {
  validate(*this);
}

void validate(const ContinuousMarket& market) {
  if (!(std::isfinite(market.alpha) && market.alpha > 0.0)) {
    throw ConfigError("alpha must be finite and > 0");
  }
  std::visit([](const auto& f) { check(f); }, market.value_dist.family());
  std::visit([](const auto& f) { check(f); }, market.cost_dist.family());
}

Schedule sample_schedule(const ContinuousMarket& market, Index n, std::uint64_t seed) {
  validate(market);
  if (n < 0) {
    throw ConfigError("sample size must be >= 0");
  }
  const auto m = static_cast<Index>(std::llround(market.alpha * static_cast<double>(n)));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> values(static_cast<std::size_t>(n));
  for (double& v : values) v = market.value_dist.quantile(unit(rng));
  std::vector<double> costs(static_cast<std::size_t>(m));
  for (double& c : costs) c = market.cost_dist.quantile(unit(rng));
  return Schedule(std::move(values), std::move(costs));
}

}  // namespace pricelab
