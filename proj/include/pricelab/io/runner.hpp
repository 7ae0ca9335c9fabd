#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pricelab/io/scenario.hpp"
#include "pricelab/io/series.hpp"

namespace pricelab::io {

struct RunReport {
  /// one line, e.g. "interval [6,7] Q=2 surplus=10"
  std::string summary;
  std::vector<std::filesystem::path> files;
};

/// Dispatches a validated scenario to its experiment and writes the output
/// series under scenario.output.path. Computation errors propagate as
/// pricelab::Error.
RunReport run_scenario(const Scenario& scenario);

/// Figure-1 composite on a continuous scenario: supply/demand curves and V
/// profiles for the base market and its scarce variant, plus one trajectory
/// set per variant.
RunReport run_figure1(const Scenario& base);

/// The experiment tables without touching the filesystem.
std::vector<Table> compute_tables(const Scenario& scenario, std::string& summary);
std::vector<Table> figure1_tables(const Scenario& base, std::string& summary);

}  // namespace pricelab::io
