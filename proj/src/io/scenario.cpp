#include "pricelab/io/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pricelab/leontief.hpp"

namespace pricelab::io {

using nlohmann::json;

namespace {

constexpr std::pair<Experiment, std::string_view> kExperimentNames[] = {
    {Experiment::clear, "clear"},       {Experiment::vprofile, "vprofile"},
    {Experiment::dynamics, "dynamics"}, {Experiment::session, "session"},
    {Experiment::sweep, "sweep"},       {Experiment::leontief_solve, "leontief-solve"},
};

std::string_view rule_name(ConcessionRule rule) {
  return rule == ConcessionRule::symmetric_midpoint ? "symmetric-midpoint" : "random-constrained";
}

/// Walks a JSON document and records field-level problems instead of throwing.
class Reader {
 public:
  std::vector<Diagnostic> diagnostics;

  void fail(const std::string& field, const std::string& message) {
    diagnostics.push_back({field, message});
  }

  void only(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
      if (!keys.contains(key)) fail(join(where, key), "unknown field");
    }
  }

  const json* object(const json& parent, const std::string& where, const char* key, bool required) {
    const std::string path = join(where, key);
    if (!parent.contains(key)) {
      if (required) fail(path, "missing required field");
      return nullptr;
    }
    const json& node = parent.at(key);
    if (!node.is_object()) {
      fail(path, "must be an object");
      return nullptr;
    }
    return &node;
  }

  std::optional<double> number(const json& parent, const std::string& where, const char* key,
                               bool required) {
    const std::string path = join(where, key);
    if (!parent.contains(key)) {
      if (required) fail(path, "missing required field");
      return std::nullopt;
    }
    const json& node = parent.at(key);
    if (!node.is_number()) {
      fail(path, "must be a number");
      return std::nullopt;
    }
    const double x = node.get<double>();
    if (!std::isfinite(x)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::int64_t> integer(const json& parent, const std::string& where,
                                      const char* key, std::int64_t min) {
    const std::string path = join(where, key);
    if (!parent.contains(key)) return std::nullopt;
    const json& node = parent.at(key);
    if (!node.is_number_integer()) {
      fail(path, "must be an integer");
      return std::nullopt;
    }
    const auto x = node.get<std::int64_t>();
    if (x < min) {
      fail(path, "must be >= " + std::to_string(min));
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::vector<double>> numbers(const json& parent, const std::string& where,
                                             const char* key, bool required) {
    const std::string path = join(where, key);
    if (!parent.contains(key)) {
      if (required) fail(path, "missing required field");
      return std::nullopt;
    }
    const json& node = parent.at(key);
    if (!node.is_array()) {
      fail(path, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (!node[i].is_number() || !std::isfinite(node[i].get<double>())) {
        fail(path + "[" + std::to_string(i) + "]", "must be a finite number");
        return std::nullopt;
      }
      out.push_back(node[i].get<double>());
    }
    return out;
  }

  std::optional<std::string> text(const json& parent, const std::string& where, const char* key,
                                  bool required) {
    const std::string path = join(where, key);
    if (!parent.contains(key)) {
      if (required) fail(path, "missing required field");
      return std::nullopt;
    }
    if (!parent.at(key).is_string()) {
      fail(path, "must be a string");
      return std::nullopt;
    }
    return parent.at(key).get<std::string>();
  }

  static std::string join(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
  }
};

std::optional<Distribution> read_distribution(Reader& r, const json& node,
                                              const std::string& where) {
  const auto family = r.text(node, where, "family", true);
  if (!family) return std::nullopt;
  if (*family == "exponential") {
    r.only(node, where, {"family", "mean", "shift"});
    const auto mean = r.number(node, where, "mean", true);
    const auto shift = r.number(node, where, "shift", false).value_or(0.0);
    if (!mean) return std::nullopt;
    if (*mean <= 0.0) {
      r.fail(where + ".mean", "must be > 0");
      return std::nullopt;
    }
    if (shift < 0.0) {
      r.fail(where + ".shift", "must be >= 0");
      return std::nullopt;
    }
    return Distribution(Exponential{*mean, shift});
  }
  if (*family == "uniform") {
    r.only(node, where, {"family", "lo", "hi"});
    const auto lo = r.number(node, where, "lo", true);
    const auto hi = r.number(node, where, "hi", true);
    if (!lo || !hi) return std::nullopt;
    if (*lo < 0.0) {
      r.fail(where + ".lo", "must be >= 0");
      return std::nullopt;
    }
    if (!(*lo < *hi)) {
      r.fail(where + ".hi", "must be > lo");
      return std::nullopt;
    }
    return Distribution(Uniform{*lo, *hi});
  }
  r.fail(where + ".family", "must be one of exponential, uniform");
  return std::nullopt;
}

void read_params(Reader& r, const json& node, ExperimentParams& p) {
  const std::string w = "params";
  r.only(node, w,
         {"seed", "runs", "initial_prices", "gain", "dt", "max_steps", "tol", "alphas",
          "max_rounds", "quote_improvement", "concession_rule", "reset_quotes_after_trade",
          "last_k", "neumann_tol", "scarce_cost_shift", "scarce_alpha"});

  if (auto x = r.integer(node, w, "seed", 0)) p.seed = std::uint64_t(*x);
  if (auto x = r.integer(node, w, "runs", 1)) p.runs = *x;
  if (auto x = r.numbers(node, w, "initial_prices", false)) {
    p.initial_prices = *x;
    for (double v : *x) {
      if (v < 0.0) r.fail(w + ".initial_prices", "prices must be >= 0");
    }
  }
  if (auto x = r.number(node, w, "gain", false)) {
    if (*x <= 0.0) r.fail(w + ".gain", "must be > 0");
    p.gain = *x;
  }
  if (auto x = r.number(node, w, "dt", false)) {
    if (*x <= 0.0) r.fail(w + ".dt", "must be > 0");
    p.dt = *x;
  }
  if (auto x = r.integer(node, w, "max_steps", 1)) p.max_steps = *x;
  if (auto x = r.number(node, w, "tol", false)) {
    if (*x < 0.0) r.fail(w + ".tol", "must be >= 0");
    p.tol = *x;
  }
  if (auto x = r.numbers(node, w, "alphas", false)) {
    p.alphas = *x;
    for (double a : *x) {
      if (a <= 0.0) r.fail(w + ".alphas", "every alpha must be > 0");
    }
  }
  if (auto x = r.integer(node, w, "max_rounds", 1)) p.session.max_rounds = *x;
  if (auto x = r.number(node, w, "quote_improvement", false)) {
    if (*x <= 0.0) r.fail(w + ".quote_improvement", "must be > 0");
    p.session.quote_improvement = *x;
  }
  if (auto x = r.text(node, w, "concession_rule", false)) {
    if (*x == "random-constrained") {
      p.session.concession_rule = ConcessionRule::random_constrained;
    } else if (*x == "symmetric-midpoint") {
      p.session.concession_rule = ConcessionRule::symmetric_midpoint;
    } else {
      r.fail(w + ".concession_rule", "must be random-constrained or symmetric-midpoint");
    }
  }
  if (node.contains("reset_quotes_after_trade")) {
    if (node["reset_quotes_after_trade"].is_boolean()) {
      p.session.reset_quotes_after_trade = node["reset_quotes_after_trade"].get<bool>();
    } else {
      r.fail(w + ".reset_quotes_after_trade", "must be a boolean");
    }
  }
  if (auto x = r.integer(node, w, "last_k", 1)) p.last_k = *x;
  if (auto x = r.number(node, w, "neumann_tol", false)) {
    if (*x <= 0.0) r.fail(w + ".neumann_tol", "must be > 0");
    p.neumann_tol = *x;
  }
  if (auto x = r.number(node, w, "scarce_cost_shift", false)) {
    if (*x < 0.0) r.fail(w + ".scarce_cost_shift", "must be >= 0");
    p.scarce_cost_shift = *x;
  }
  if (auto x = r.number(node, w, "scarce_alpha", false)) {
    if (*x <= 0.0) r.fail(w + ".scarce_alpha", "must be > 0");
    p.scarce_alpha = *x;
  }
  p.session.seed = p.seed;
}

json distribution_json(const Distribution& d) {
  if (const auto* e = std::get_if<Exponential>(&d.family())) {
    return {{"family", "exponential"}, {"mean", e->mean}, {"shift", e->shift}};
  }
  const auto& u = std::get<Uniform>(d.family());
  return {{"family", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
}

}  // namespace

std::string_view name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::discrete: return "discrete";
    case ScenarioKind::continuous: return "continuous";
    case ScenarioKind::leontief: return "leontief";
  }
  return "?";
}

std::string_view name(Experiment experiment) {
  for (const auto& [e, text] : kExperimentNames) {
    if (e == experiment) return text;
  }
  return "?";
}

std::string_view name(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

std::optional<Experiment> experiment_from_name(std::string_view text) {
  for (const auto& [e, n] : kExperimentNames) {
    if (n == text) return e;
  }
  return std::nullopt;
}

std::optional<OutputFormat> format_from_name(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string ParseResult::describe() const {
  std::ostringstream out;
  for (const auto& d : diagnostics) out << d.field << ": " << d.message << "\n";
  return out.str();
}

std::vector<Diagnostic> check_compatibility(const Scenario& s) {
  std::vector<Diagnostic> out;
  const bool market_kind = s.kind == ScenarioKind::discrete || s.kind == ScenarioKind::continuous;
  switch (s.experiment) {
    case Experiment::clear:
    case Experiment::vprofile:
    case Experiment::dynamics:
    case Experiment::session:
      if (!market_kind) out.push_back({"experiment", "requires a discrete or continuous market"});
      break;
    case Experiment::sweep:
      if (s.kind != ScenarioKind::continuous) {
        out.push_back({"experiment", "sweep requires a continuous market"});
      } else if (s.params.alphas.empty()) {
        out.push_back({"params.alphas", "sweep requires a non-empty alpha grid"});
      }
      break;
    case Experiment::leontief_solve:
      if (s.kind != ScenarioKind::leontief) {
        out.push_back({"experiment", "leontief-solve requires a leontief economy"});
      }
      break;
  }
  if (s.experiment == Experiment::dynamics && s.params.initial_prices.empty()) {
    out.push_back({"params.initial_prices", "dynamics requires at least one initial price"});
  }
  return out;
}

ParseResult parse_scenario(std::string_view text) {
  ParseResult result;
  Reader r;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.diagnostics.push_back({"<document>", std::string("malformed JSON: ") + e.what()});
    return result;
  }
  if (!doc.is_object()) {
    result.diagnostics.push_back({"<document>", "scenario must be a JSON object"});
    return result;
  }
  r.only(doc, "", {"kind", "experiment", "market", "economy", "params", "output"});

  Scenario s;
  const auto kind = r.text(doc, "", "kind", true);
  if (kind) {
    if (*kind == "discrete") {
      s.kind = ScenarioKind::discrete;
    } else if (*kind == "continuous") {
      s.kind = ScenarioKind::continuous;
    } else if (*kind == "leontief") {
      s.kind = ScenarioKind::leontief;
    } else {
      r.fail("kind", "must be one of discrete, continuous, leontief");
    }
  }
  if (auto e = r.text(doc, "", "experiment", true)) {
    if (auto parsed = experiment_from_name(*e)) {
      s.experiment = *parsed;
    } else {
      r.fail("experiment",
             "must be one of clear, vprofile, dynamics, session, sweep, leontief-solve");
    }
  }

  if (kind && (*kind == "discrete" || *kind == "continuous")) {
    if (doc.contains("economy")) r.fail("economy", "only valid for kind leontief");
    if (const json* m = r.object(doc, "", "market", true)) {
      if (*kind == "discrete") {
        r.only(*m, "market", {"values", "costs"});
        DiscretePayload payload;
        auto values = r.numbers(*m, "market", "values", true);
        auto costs = r.numbers(*m, "market", "costs", true);
        if (values) {
          for (double v : *values) {
            if (v < 0.0) r.fail("market.values", "entries must be >= 0");
          }
          payload.values = *values;
        }
        if (costs) {
          for (double c : *costs) {
            if (c < 0.0) r.fail("market.costs", "entries must be >= 0");
          }
          payload.costs = *costs;
        }
        s.payload = payload;
      } else {
        r.only(*m, "market", {"values", "costs", "alpha", "sample_size"});
        ContinuousPayload payload;
        const json* vd = r.object(*m, "market", "values", true);
        const json* cd = r.object(*m, "market", "costs", true);
        auto values = vd ? read_distribution(r, *vd, "market.values") : std::nullopt;
        auto costs = cd ? read_distribution(r, *cd, "market.costs") : std::nullopt;
        auto alpha = r.number(*m, "market", "alpha", true);
        if (alpha && *alpha <= 0.0) {
          r.fail("market.alpha", "must be > 0");
          alpha.reset();
        }
        if (auto n = r.integer(*m, "market", "sample_size", 0)) payload.sample_size = *n;
        if (values && costs && alpha) payload.market = ContinuousMarket(*values, *costs, *alpha);
        s.payload = payload;
      }
    }
  } else if (kind && *kind == "leontief") {
    if (doc.contains("market")) r.fail("market", "only valid for kinds discrete and continuous");
    if (const json* e = r.object(doc, "", "economy", true)) {
      r.only(*e, "economy", {"a", "labor"});
      LeontiefPayload payload;
      auto labor = r.numbers(*e, "economy", "labor", true);
      if (labor) payload.labor = *labor;
      if (!e->contains("a")) {
        r.fail("economy.a", "missing required field");
      } else if (!(*e)["a"].is_array()) {
        r.fail("economy.a", "must be an array of rows");
      } else {
        const json& rows = (*e)["a"];
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (!rows[i].is_array()) {
            r.fail("economy.a[" + std::to_string(i) + "]", "must be an array of numbers");
            continue;
          }
          std::vector<double> parsed;
          for (std::size_t k = 0; k < rows[i].size(); ++k) {
            const json& x = rows[i][k];
            if (!x.is_number() || !std::isfinite(x.get<double>())) {
              r.fail("economy.a[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                     "must be a finite number");
            } else {
              parsed.push_back(x.get<double>());
            }
          }
          payload.a.push_back(std::move(parsed));
        }
      }
      if (labor && !payload.a.empty() && r.diagnostics.empty()) {
        LeontiefEconomy<double> economy;
        const auto n = Index(payload.labor.size());
        bool square = Index(payload.a.size()) == n;
        for (const auto& row : payload.a) square = square && Index(row.size()) == n;
        if (!square) {
          r.fail("economy.a", "must be an n x n matrix matching the labor vector length");
        } else {
          economy.a.resize(n, n);
          for (Index i = 0; i < n; ++i) {
            for (Index k = 0; k < n; ++k) economy.a(i, k) = payload.a[std::size_t(i)][std::size_t(k)];
          }
          economy.labor = Eigen::Map<const VectorX<double>>(payload.labor.data(), n);
          try {
            validate(economy);
          } catch (const ValidationError& ex) {
            r.fail("economy", ex.what());
          }
        }
      } else if (labor && payload.a.empty() && r.diagnostics.empty()) {
        r.fail("economy.a", "must not be empty");
      }
      s.payload = payload;
    }
  }

  if (doc.contains("params")) {
    if (doc["params"].is_object()) {
      read_params(r, doc["params"], s.params);
    } else {
      r.fail("params", "must be an object");
    }
  }
  if (const json* o = r.object(doc, "", "output", false)) {
    r.only(*o, "output", {"format", "path"});
    if (auto f = r.text(*o, "output", "format", false)) {
      if (auto parsed = format_from_name(*f)) {
        s.output.format = *parsed;
      } else {
        r.fail("output.format", "must be csv or json");
      }
    }
    if (auto p = r.text(*o, "output", "path", false)) s.output.path = *p;
  }

  if (r.diagnostics.empty()) {
    for (auto& d : check_compatibility(s)) r.diagnostics.push_back(d);
  }
  result.diagnostics = std::move(r.diagnostics);
  if (result.diagnostics.empty()) result.scenario = std::move(s);
  return result;
}

ParseResult load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult result;
    result.diagnostics.push_back({"<file>", "cannot read scenario file " + path});
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string to_json_text(const Scenario& s) {
  json doc;
  doc["kind"] = name(s.kind);
  doc["experiment"] = name(s.experiment);
  if (const auto* d = std::get_if<DiscretePayload>(&s.payload)) {
    doc["market"] = {{"values", d->values}, {"costs", d->costs}};
  } else if (const auto* c = std::get_if<ContinuousPayload>(&s.payload)) {
    doc["market"] = {{"values", distribution_json(c->market.value_dist)},
                     {"costs", distribution_json(c->market.cost_dist)},
                     {"alpha", c->market.alpha},
                     {"sample_size", c->sample_size}};
  } else {
    const auto& l = std::get<LeontiefPayload>(s.payload);
    doc["economy"] = {{"a", l.a}, {"labor", l.labor}};
  }
  const ExperimentParams& p = s.params;
  json params = {{"seed", p.seed},
                 {"runs", p.runs},
                 {"initial_prices", p.initial_prices},
                 {"dt", p.dt},
                 {"max_steps", p.max_steps},
                 {"tol", p.tol},
                 {"alphas", p.alphas},
                 {"max_rounds", p.session.max_rounds},
                 {"quote_improvement", p.session.quote_improvement},
                 {"concession_rule", rule_name(p.session.concession_rule)},
                 {"reset_quotes_after_trade", p.session.reset_quotes_after_trade},
                 {"last_k", p.last_k},
                 {"neumann_tol", p.neumann_tol},
                 {"scarce_cost_shift", p.scarce_cost_shift},
                 {"scarce_alpha", p.scarce_alpha}};
  if (p.gain) params["gain"] = *p.gain;
  doc["params"] = params;
  doc["output"] = {{"format", name(s.output.format)}, {"path", s.output.path}};
  return doc.dump(2) + "\n";
}

}  // namespace pricelab::io
