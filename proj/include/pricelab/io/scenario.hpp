#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pricelab/agents.hpp"
#include "pricelab/distribution.hpp"

namespace pricelab::io {

enum class ScenarioKind { discrete, continuous, leontief };
enum class Experiment { clear, vprofile, dynamics, session, sweep, leontief_solve };
enum class OutputFormat { csv, json };

struct DiscretePayload {
  std::vector<double> values;
  std::vector<double> costs;
  friend bool operator==(const DiscretePayload&, const DiscretePayload&) = default;
};

struct ContinuousPayload {
  ContinuousMarket market;
  Index sample_size = 100000;
  friend bool operator==(const ContinuousPayload&, const ContinuousPayload&) = default;
};

/// Row convention: a[i][k] is good k used per unit of good i.
struct LeontiefPayload {
  std::vector<std::vector<double>> a;
  std::vector<double> labor;
  friend bool operator==(const LeontiefPayload&, const LeontiefPayload&) = default;
};

struct ExperimentParams {
  std::uint64_t seed = 1;
  /// sessions run seeds seed, seed + 1, ..., seed + runs - 1
  Index runs = 1;
  std::vector<double> initial_prices;
  /// dynamics gain; absent means the 5%-of-range default per run
  std::optional<double> gain;
  double dt = 1.0;
  Index max_steps = 100000;
  double tol = 0.0;
  std::vector<double> alphas;
  SessionConfig session;
  Index last_k = 5;
  double neumann_tol = 1e-12;
  /// second panel of the figure1 composite
  double scarce_cost_shift = 2.0;
  double scarce_alpha = 0.01;

  friend bool operator==(const ExperimentParams&, const ExperimentParams&) = default;
};

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path = ".";
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::discrete;
  Experiment experiment = Experiment::clear;
  std::variant<DiscretePayload, ContinuousPayload, LeontiefPayload> payload;
  ExperimentParams params;
  OutputSpec output;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Diagnostic {
  std::string field;  // dotted path, e.g. "market.alpha"
  std::string message;
};

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return scenario.has_value(); }
  std::string describe() const;
};

/// Parses and validates a JSON scenario document. Every problem found is
/// reported; a scenario is returned only when there are none.
ParseResult parse_scenario(std::string_view text);
ParseResult load_scenario(const std::string& path);

/// Canonical JSON text with all defaults written out.
std::string to_json_text(const Scenario& scenario);

/// Kind/experiment compatibility, e.g. sweep needs a continuous market.
std::vector<Diagnostic> check_compatibility(const Scenario& scenario);

std::string_view name(ScenarioKind kind);
std::string_view name(Experiment experiment);
std::string_view name(OutputFormat format);
std::optional<Experiment> experiment_from_name(std::string_view text);
std::optional<OutputFormat> format_from_name(std::string_view text);

}  // namespace pricelab::io
