#pragma once

#include <cstdint>
#include <vector>

#include "pricelab/market.hpp"

namespace pricelab {

struct Transaction {
  std::int64_t round = 0;
  double price = 0.0;
  double buyer_value = 0.0;
  double seller_cost = 0.0;
  // positions in the canonical schedule
  Index buyer = -1;
  Index seller = -1;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

enum class QuoteEventKind { bid, ask, trade };

/// Standing book after an event; NaN marks an empty side.
struct QuoteEvent {
  std::int64_t round = 0;
  QuoteEventKind kind = QuoteEventKind::bid;
  double price = 0.0;
  double best_bid = 0.0;
  double best_ask = 0.0;

  friend bool operator==(const QuoteEvent& a, const QuoteEvent& b) {
    auto same = [](double x, double y) { return x == y || (x != x && y != y); };
    return a.round == b.round && a.kind == b.kind && same(a.price, b.price) &&
           same(a.best_bid, b.best_bid) && same(a.best_ask, b.best_ask);
  }
};

struct SessionLog {
  std::vector<Transaction> transactions;
  std::vector<QuoteEvent> quote_series;
  Index untraded_buyers = 0;
  Index untraded_sellers = 0;
  std::int64_t rounds_used = 0;

  friend bool operator==(const SessionLog&, const SessionLog&) = default;
};

}  // namespace pricelab
