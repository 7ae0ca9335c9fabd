#include "pricelab/io/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pricelab/agents.hpp"
#include "pricelab/dynamics.hpp"
#include "pricelab/equilibrium.hpp"
#include "pricelab/leontief.hpp"
#include "pricelab/lyapunov.hpp"
#include "pricelab/parallel.hpp"

namespace pricelab::io {

namespace {

constexpr Index kCurvePoints = 201;

std::string num(double x) { return format_number(x); }

Schedule market_for(const Scenario& s) {
  if (const auto* d = std::get_if<DiscretePayload>(&s.payload)) {
    return Schedule(d->values, d->costs);
  }
  const auto& c = std::get<ContinuousPayload>(s.payload);
  return sample_schedule(c.market, c.sample_size, s.params.seed);
}

Table trajectory_table(const std::string& name, const std::vector<Trajectory>& runs) {
  Table t{name, {"run_id", "step", "price", "v", "excess"}, {}};
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const Trajectory& path = runs[r];
    for (std::size_t k = 0; k < path.size(); ++k) {
      t.add({std::int64_t(r), std::int64_t(k), path.prices[k], path.v_series[k],
             std::int64_t(path.excess[k])});
    }
  }
  return t;
}

std::vector<Trajectory> run_trajectories(const Schedule& market, const ExperimentParams& p) {
  return parallel_map<Trajectory>(p.initial_prices.size(), [&](std::size_t i) {
    const double p0 = p.initial_prices[i];
    const double gain = p.gain ? *p.gain : ExcessDemandLaw(market).default_gain_dt(p0) / p.dt;
    return integrate(market, p0, gain, p.dt, p.max_steps, p.tol);
  });
}

std::string final_prices(const std::vector<Trajectory>& runs) {
  std::string out = "[";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i) out += ",";
    out += num(runs[i].prices.back());
  }
  return out + "]";
}

std::vector<Table> clear_tables(const Scenario& s, std::string& summary) {
  if (const auto* c = std::get_if<ContinuousPayload>(&s.payload)) {
    const double p_star = clear_continuous(c->market);
    summary = "p*=" + num(p_star) + " alpha=" + num(c->market.alpha);
    Table t{"clear", {"alpha", "p_star"}, {}};
    t.add({c->market.alpha, p_star});
    return {t};
  }
  const auto result = clear_discrete(market_for(s));
  Table t{"clear", {"price_lo", "price_hi", "canonical_price", "quantity", "max_surplus"}, {}};
  t.add({result.price_lo(), result.price_hi(), result.canonical_price(),
         std::int64_t(result.quantity), result.max_surplus});
  if (result.trades()) {
    summary = "interval [" + num(result.price_lo()) + "," + num(result.price_hi()) +
              "] Q=" + std::to_string(result.quantity) + " surplus=" + num(result.max_surplus);
  } else {
    summary = "no trade Q=0 surplus=0";
  }
  return {t};
}

std::vector<Table> vprofile_tables(const Scenario& s, std::string& summary) {
  const Schedule market = market_for(s);
  if (market.empty()) throw DegenerateMarketError("V profile needs a non-empty market");
  const VProfile<double> profile(market);
  Table t{"vprofile", {"price", "v", "slope"}, {}};
  for (Index k = 0; k < profile.breakpoints().size(); ++k) {
    t.add({profile.breakpoints()[k], profile.v_at()[k], std::int64_t(profile.slopes()[k])});
  }
  summary = "argmin [" + num(profile.argmin_lo()) + "," + num(profile.argmin_hi()) +
            "] V_min=" + num(profile.min_value());
  return {t};
}

std::vector<Table> dynamics_tables(const Scenario& s, std::string& summary) {
  const Schedule market = market_for(s);
  const auto runs = run_trajectories(market, s.params);
  const auto converged = std::count_if(runs.begin(), runs.end(),
                                       [](const Trajectory& t) { return t.converged(); });
  summary = "runs=" + std::to_string(runs.size()) + " converged=" + std::to_string(converged) +
            " final=" + final_prices(runs);
  return {trajectory_table("trajectories", runs)};
}

std::string_view event_name(QuoteEventKind kind) {
  switch (kind) {
    case QuoteEventKind::bid: return "bid";
    case QuoteEventKind::ask: return "ask";
    case QuoteEventKind::trade: return "trade";
  }
  return "?";
}

std::vector<Table> session_tables(const Scenario& s, std::string& summary) {
  const Schedule market = market_for(s);
  const ExperimentParams& p = s.params;
  struct Outcome {
    SessionLog log;
    SessionStats stats;
  };
  const auto outcomes = parallel_map<Outcome>(std::size_t(p.runs), [&](std::size_t r) {
    SessionConfig cfg = p.session;
    cfg.seed = p.seed + r;
    SessionLog log = run_session(market, cfg);
    SessionStats stats = session_stats(market, log, p.last_k);
    return Outcome{std::move(log), stats};
  });

  Table events{"session", {"run_id", "round", "event", "price", "bid", "ask"}, {}};
  Table stats{"session_stats",
              {"run_id", "seed", "quantity", "optimal_quantity", "surplus", "max_surplus",
               "efficiency", "mean_last_prices", "final_v", "min_v"},
              {}};
  std::vector<double> efficiencies;
  double quantity = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const auto& o = outcomes[r];
    for (const QuoteEvent& e : o.log.quote_series) {
      events.add({std::int64_t(r), e.round, std::string(event_name(e.kind)), e.price, e.best_bid,
                  e.best_ask});
    }
    const double eff = o.stats.efficiency.value_or(std::nan(""));
    stats.add({std::int64_t(r), std::int64_t(p.seed + r), std::int64_t(o.stats.quantity),
               std::int64_t(o.stats.optimal_quantity), o.stats.realized_surplus,
               o.stats.max_surplus, eff, o.stats.mean_last_prices, o.stats.final_v,
               o.stats.min_v});
    if (o.stats.efficiency) efficiencies.push_back(*o.stats.efficiency);
    quantity += double(o.stats.quantity);
  }

  std::ostringstream line;
  line << "sessions=" << outcomes.size() << " mean_Q=" << num(quantity / double(outcomes.size()));
  if (!outcomes.empty()) line << " Q*=" << outcomes.front().stats.optimal_quantity;
  if (efficiencies.empty()) {
    line << " efficiency=undefined";
  } else {
    std::sort(efficiencies.begin(), efficiencies.end());
    line << " median_efficiency=" << num(efficiencies[efficiencies.size() / 2]);
  }
  summary = line.str();
  return {events, stats};
}

std::vector<Table> sweep_tables(const Scenario& s, std::string& summary) {
  const auto& c = std::get<ContinuousPayload>(s.payload);
  const auto curve = scarcity_curve(c.market, s.params.alphas);
  Table t{"sweep", {"alpha", "p_star", "status"}, {}};
  std::size_t ok = 0;
  for (const auto& point : curve) {
    t.add({point.alpha, point.p_star,
           std::string(point.status == SweepStatus::ok ? "ok" : "no-crossing")});
    if (point.status == SweepStatus::ok) ++ok;
  }
  summary = "points=" + std::to_string(curve.size()) + " ok=" + std::to_string(ok);
  if (!curve.empty()) {
    summary += " p*(" + num(curve.front().alpha) + ")=" + num(curve.front().p_star) + " p*(" +
               num(curve.back().alpha) + ")=" + num(curve.back().p_star);
  }
  return {t};
}

std::vector<Table> leontief_tables(const Scenario& s, std::string& summary) {
  const auto& payload = std::get<LeontiefPayload>(s.payload);
  const auto n = Index(payload.labor.size());
  LeontiefEconomy<double> economy;
  economy.a.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) economy.a(i, k) = payload.a[std::size_t(i)][std::size_t(k)];
  }
  economy.labor = Eigen::Map<const VectorX<double>>(payload.labor.data(), n);

  const VectorX<double> prices = solve_prices(economy);
  const auto series = neumann_prices(economy, s.params.neumann_tol);
  const double residual = (prices - (economy.labor + economy.a * prices)).lpNorm<Eigen::Infinity>();

  Table t{"leontief", {"good", "price", "labor", "unit_cost", "neumann_price"}, {}};
  std::string listed;
  for (Index k = 0; k < n; ++k) {
    t.add({std::int64_t(k), prices[k], economy.labor[k], unit_cost(economy, prices, k),
           series.prices[k]});
    listed += (k ? ", " : "") + num(prices[k]);
  }
  summary = "prices (" + listed + ") residual=" + num(residual) +
            " neumann_terms=" + std::to_string(series.terms);
  return {t};
}

std::filesystem::path output_file(const Scenario& s, const std::string& stem) {
  return std::filesystem::path(s.output.path) /
         (stem + (s.output.format == OutputFormat::json ? ".json" : ".csv"));
}

RunReport write_tables(const Scenario& s, const std::vector<Table>& tables, std::string summary) {
  RunReport report{std::move(summary), {}};
  for (const Table& t : tables) {
    const auto path = output_file(s, t.name);
    emit_series(t, s.output.format, path);
    report.files.push_back(path);
  }
  return report;
}

}  // namespace

std::vector<Table> compute_tables(const Scenario& s, std::string& summary) {
  if (auto problems = check_compatibility(s); !problems.empty()) {
    throw ConfigError(problems.front().field + ": " + problems.front().message);
  }
  switch (s.experiment) {
    case Experiment::clear: return clear_tables(s, summary);
    case Experiment::vprofile: return vprofile_tables(s, summary);
    case Experiment::dynamics: return dynamics_tables(s, summary);
    case Experiment::session: return session_tables(s, summary);
    case Experiment::sweep: return sweep_tables(s, summary);
    case Experiment::leontief_solve: return leontief_tables(s, summary);
  }
  throw ConfigError("unknown experiment");
}

RunReport run_scenario(const Scenario& s) {
  std::string summary;
  const auto tables = compute_tables(s, summary);
  return write_tables(s, tables, std::move(summary));
}

std::vector<Table> figure1_tables(const Scenario& base, std::string& summary) {
  const auto* payload = std::get_if<ContinuousPayload>(&base.payload);
  if (!payload) throw ConfigError("figure1 requires a continuous scenario");
  const ExperimentParams& p = base.params;

  ContinuousMarket abundant = payload->market;
  ContinuousMarket scarce = abundant;
  scarce.alpha = p.scarce_alpha;
  if (const auto* e = std::get_if<Exponential>(&scarce.cost_dist.family())) {
    scarce.cost_dist = Exponential{e->mean, p.scarce_cost_shift};
  } else {
    const auto& u = std::get<Uniform>(scarce.cost_dist.family());
    scarce.cost_dist = Uniform{p.scarce_cost_shift, p.scarce_cost_shift + (u.hi - u.lo)};
  }

  const ContinuousMarket variants[] = {abundant, scarce};
  const char* labels[] = {"a", "b"};
  double p_star[2];
  Schedule samples[2];
  for (int v = 0; v < 2; ++v) {
    p_star[v] = clear_continuous(variants[v]);
    samples[v] = sample_schedule(variants[v], payload->sample_size, p.seed);
  }

  const double grid_hi = 1.5 * std::max(p_star[0], p_star[1]);
  Table curves{"figure1_curves", {"variant", "price", "demand", "supply"}, {}};
  Table profile{"figure1_vprofile", {"variant", "price", "v"}, {}};
  for (int v = 0; v < 2; ++v) {
    const VProfile<double> distance(samples[v]);
    for (Index k = 0; k < kCurvePoints; ++k) {
      const double price = grid_hi * double(k) / double(kCurvePoints - 1);
      curves.add({std::string(labels[v]), price, std::int64_t(demand_at(samples[v], price)),
                  std::int64_t(supply_at(samples[v], price))});
      profile.add({std::string(labels[v]), price, distance(price)});
    }
  }

  std::vector<Table> tables{curves, profile};
  std::string finals[2];
  for (int v = 0; v < 2; ++v) {
    const auto runs = run_trajectories(samples[v], p);
    finals[v] = final_prices(runs);
    tables.push_back(trajectory_table(std::string("figure1_trajectories_") + labels[v], runs));
  }
  summary = "p*=" + num(p_star[0]) + " final=" + finals[0] + " scarce p*=" + num(p_star[1]) +
            " final=" + finals[1];
  return tables;
}

RunReport run_figure1(const Scenario& base) {
  std::string summary;
  const auto tables = figure1_tables(base, summary);
  return write_tables(base, tables, std::move(summary));
}

}  // namespace pricelab::io
