#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pricelab/equilibrium.hpp"
#include "pricelab/market.hpp"
#include "pricelab/session_log.hpp"

namespace pricelab {

enum class ConcessionRule {
  /// quotes drawn uniformly between the improvement bound and the reservation
  /// price; trades execute at the accepted standing quote
  random_constrained,
  /// truthful quotes at the reservation price; a crossing trades at the midpoint
  symmetric_midpoint,
};

struct SessionConfig {
  std::uint64_t seed = 1;
  std::int64_t max_rounds = 100000;
  double quote_improvement = 0.01;
  ConcessionRule concession_rule = ConcessionRule::random_constrained;
  bool reset_quotes_after_trade = true;

  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

void validate(const SessionConfig& cfg);

/**
 * Runs one double-auction session on the schedule.
 *
 * Every round a uniformly chosen active trader acts. A buyer takes the
 * standing ask if it is at or below their value, otherwise raises the best bid
 * by at least the improvement tick without exceeding their value; sellers act
 * symmetrically. A trade removes both units. The session stops when no active
 * buyer values the good at or above some active seller's cost, or after
 * max_rounds.
 */
SessionLog run_session(const Schedule& market, const SessionConfig& cfg);

struct DeltaVSeries {
  /// V_t - V_{t-1}, one entry per transaction.
  std::vector<double> deltas;
  double fraction_nonpositive = 1.0;
  /// V of the full market at the first trade price.
  double v_initial = 0.0;
  /// V of the untraded residual at the last trade price.
  double v_final = 0.0;
};

/// Transaction-level V: before trade t the standing price is the trade price
/// and V is taken over the units not yet traded.
DeltaVSeries delta_v_series(const Schedule& market, const SessionLog& log);

struct SessionStats {
  Index quantity = 0;
  Index optimal_quantity = 0;
  double realized_surplus = 0.0;
  double max_surplus = 0.0;
  /// realized / max; empty when the market has no gains from trade
  std::optional<double> efficiency;
  Index last_k = 0;
  double mean_last_prices = 0.0;  // NaN without trades
  std::optional<PriceInterval<double>> clearing_interval;
  double final_v = 0.0;  // V of the full market at the last trade price
  double min_v = 0.0;
};

SessionStats session_stats(const Schedule& market, const SessionLog& log, Index last_k = 5);

}  // namespace pricelab
