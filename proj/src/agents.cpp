#include "pricelab/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pricelab/lyapunov.hpp"

namespace pricelab {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

struct Quote {
  double price;
  Index owner;
};

class Book {
 public:
  Book(const Schedule& market, const SessionConfig& cfg)
      : market_(market), cfg_(cfg), rng_(cfg.seed) {
    for (Index i = 0; i < market.buyers(); ++i) buyers_.push_back(i);
    for (Index j = 0; j < market.sellers(); ++j) sellers_.push_back(j);
    cap_ = 0.0;
    if (market.buyers() > 0) cap_ = std::max(cap_, market.values()[0]);
    if (market.sellers() > 0) cap_ = std::max(cap_, market.costs()[market.sellers() - 1]);
    feasible_ = feasible();
  }

  SessionLog run() {
    SessionLog log;
    std::int64_t round = 0;
    for (; round < cfg_.max_rounds && feasible_; ++round) {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(
          0, buyers_.size() + sellers_.size() - 1)(rng_);
      if (pick < buyers_.size()) {
        buyer_acts(pick, round, log);
      } else {
        seller_acts(pick - buyers_.size(), round, log);
      }
    }
    log.rounds_used = round;
    log.untraded_buyers = Index(buyers_.size());
    log.untraded_sellers = Index(sellers_.size());
    return log;
  }

 private:
  bool feasible() const {
    if (buyers_.empty() || sellers_.empty()) return false;
    // indices are canonical positions, so the extremes are the smallest indices
    const Index top = *std::min_element(buyers_.begin(), buyers_.end());
    const Index cheapest = *std::min_element(sellers_.begin(), sellers_.end());
    return market_.values()[top] >= market_.costs()[cheapest];
  }

  double draw(double lo, double hi) {
    return lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  void buyer_acts(std::size_t slot, std::int64_t round, SessionLog& log) {
    const Index who = buyers_[slot];
    const double value = market_.values()[who];
    if (ask_ && ask_->price <= value) {
      const double price = cfg_.concession_rule == ConcessionRule::symmetric_midpoint
                               ? 0.5 * (value + ask_->price)
                               : ask_->price;
      execute(who, ask_->owner, price, round, log);
      return;
    }
    const double lo = bid_ ? bid_->price + cfg_.quote_improvement : 0.0;
    if (lo > value) return;
    const double price =
        cfg_.concession_rule == ConcessionRule::symmetric_midpoint ? value : draw(lo, value);
    bid_ = Quote{price, who};
    record(round, QuoteEventKind::bid, price, log);
  }

  void seller_acts(std::size_t slot, std::int64_t round, SessionLog& log) {
    const Index who = sellers_[slot];
    const double cost = market_.costs()[who];
    if (bid_ && bid_->price >= cost) {
      const double price = cfg_.concession_rule == ConcessionRule::symmetric_midpoint
                               ? 0.5 * (cost + bid_->price)
                               : bid_->price;
      execute(bid_->owner, who, price, round, log);
      return;
    }
    const double hi = ask_ ? ask_->price - cfg_.quote_improvement : cap_;
    if (hi < cost) return;
    const double price =
        cfg_.concession_rule == ConcessionRule::symmetric_midpoint ? cost : draw(cost, hi);
    ask_ = Quote{price, who};
    record(round, QuoteEventKind::ask, price, log);
  }

  void execute(Index buyer, Index seller, double price, std::int64_t round, SessionLog& log) {
    log.transactions.push_back(Transaction{round, price, market_.values()[buyer],
                                           market_.costs()[seller], buyer, seller});
    std::erase(buyers_, buyer);
    std::erase(sellers_, seller);
    if (cfg_.reset_quotes_after_trade) {
      bid_.reset();
      ask_.reset();
    } else {
      if (bid_ && bid_->owner == buyer) bid_.reset();
      if (ask_ && ask_->owner == seller) ask_.reset();
    }
    record(round, QuoteEventKind::trade, price, log);
    feasible_ = feasible();
  }

  void record(std::int64_t round, QuoteEventKind kind, double price, SessionLog& log) const {
    log.quote_series.push_back(QuoteEvent{round, kind, price, bid_ ? bid_->price : kNone,
                                          ask_ ? ask_->price : kNone});
  }

  const Schedule& market_;
  const SessionConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<Index> buyers_;
  std::vector<Index> sellers_;
  std::optional<Quote> bid_;
  std::optional<Quote> ask_;
  double cap_;
  bool feasible_;
};

/// V over the units still flagged active.
double residual_v(const Schedule& market, const std::vector<bool>& buyer_live,
                  const std::vector<bool>& seller_live, double p) {
  double total = 0.0;
  for (Index i = 0; i < market.buyers(); ++i) {
    const double v = market.values()[i];
    if (buyer_live[std::size_t(i)] && v >= p) total += std::abs(v - p);
  }
  for (Index j = 0; j < market.sellers(); ++j) {
    const double c = market.costs()[j];
    if (seller_live[std::size_t(j)] && c <= p) total += std::abs(c - p);
  }
  return total;
}

}  // namespace

void validate(const SessionConfig& cfg) {
  if (!(std::isfinite(cfg.quote_improvement) && cfg.quote_improvement > 0.0)) {
    throw ConfigError("quote_improvement must be finite and > 0");
  }
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
}

SessionLog run_session(const Schedule& market, const SessionConfig& cfg) {
  validate(cfg);
  return Book(market, cfg).run();
}

DeltaVSeries delta_v_series(const Schedule& market, const SessionLog& log) {
  std::vector<bool> buyer_live(std::size_t(market.buyers()), true);
  std::vector<bool> seller_live(std::size_t(market.sellers()), true);
  for (const Transaction& t : log.transactions) {
    const bool ok = t.buyer >= 0 && t.buyer < market.buyers() && t.seller >= 0 &&
                    t.seller < market.sellers() && market.values()[t.buyer] == t.buyer_value &&
                    market.costs()[t.seller] == t.seller_cost &&
                    buyer_live[std::size_t(t.buyer)] && seller_live[std::size_t(t.seller)];
    if (!ok) throw ConsistencyError("session log does not match the market schedule");
    buyer_live[std::size_t(t.buyer)] = false;
    seller_live[std::size_t(t.seller)] = false;
  }

  DeltaVSeries out;
  if (log.transactions.empty()) return out;
  std::fill(buyer_live.begin(), buyer_live.end(), true);
  std::fill(seller_live.begin(), seller_live.end(), true);

  double previous = residual_v(market, buyer_live, seller_live, log.transactions.front().price);
  out.v_initial = previous;
  std::size_t nonpositive = 0;
  for (const Transaction& t : log.transactions) {
    buyer_live[std::size_t(t.buyer)] = false;
    seller_live[std::size_t(t.seller)] = false;
    const double current = residual_v(market, buyer_live, seller_live, t.price);
    out.deltas.push_back(current - previous);
    if (current - previous <= 0.0) ++nonpositive;
    previous = current;
  }
  out.v_final = previous;
  out.fraction_nonpositive = double(nonpositive) / double(out.deltas.size());
  return out;
}

SessionStats session_stats(const Schedule& market, const SessionLog& log, Index last_k) {
  SessionStats stats;
  stats.quantity = Index(log.transactions.size());
  stats.realized_surplus = realized_surplus(log);

  if (!market.empty()) {
    const auto clearing = clear_discrete(market);
    stats.optimal_quantity = clearing.quantity;
    stats.max_surplus = clearing.max_surplus;
    stats.clearing_interval = clearing.interval;
    const VProfile<double> distance(market);
    stats.min_v = distance.min_value();
    if (!log.transactions.empty()) stats.final_v = distance(log.transactions.back().price);
  }
  if (stats.max_surplus > 0.0) stats.efficiency = stats.realized_surplus / stats.max_surplus;

  stats.last_k = std::min<Index>(last_k, stats.quantity);
  if (stats.last_k == 0) {
    stats.mean_last_prices = kNone;
  } else {
    double sum = 0.0;
    for (auto it = log.transactions.end() - stats.last_k; it != log.transactions.end(); ++it) {
      sum += it->price;
    }
    stats.mean_last_prices = sum / double(stats.last_k);
  }
  return stats;
}

}  // namespace pricelab
