// pricelab: command-line front end for scenario files.
//
//   pricelab [--seed N] [--out DIR] [--format csv|json] [--quiet] <command> ...
//
// Exit status: 0 success, 1 computation or I/O error, 2 invalid scenario or usage.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pricelab/errors.hpp"
#include "pricelab/io/runner.hpp"
#include "pricelab/io/scenario.hpp"

#ifndef PRICELAB_SCENARIO_DIR
#define PRICELAB_SCENARIO_DIR "scenarios"
#endif

namespace {

using namespace pricelab::io;

constexpr int kComputeError = 1;
constexpr int kUsageError = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool quiet = false;
};

struct Input {
  std::string scenario_path;
  std::vector<double> values;
  std::vector<double> costs;
  std::vector<double> alphas;
};

int report_diagnostics(const ParseResult& parsed) {
  std::cerr << "invalid scenario:\n" << parsed.describe();
  return kUsageError;
}

/// Loads the scenario for a command, applying inline markets and global flags.
std::optional<Scenario> resolve(const Input& in, const Globals& g,
                                std::optional<Experiment> experiment, int& status) {
  Scenario s;
  if (!in.scenario_path.empty()) {
    auto parsed = load_scenario(in.scenario_path);
    if (!parsed.ok()) {
      status = report_diagnostics(parsed);
      return std::nullopt;
    }
    s = *parsed.scenario;
  } else if (!in.values.empty() || !in.costs.empty()) {
    s.kind = ScenarioKind::discrete;
    s.payload = DiscretePayload{in.values, in.costs};
  } else {
    std::cerr << "a scenario file or --values/--costs is required\n";
    status = kUsageError;
    return std::nullopt;
  }
  if (!in.scenario_path.empty() && (!in.values.empty() || !in.costs.empty())) {
    std::cerr << "--values/--costs cannot be combined with a scenario file\n";
    status = kUsageError;
    return std::nullopt;
  }
  if (experiment) s.experiment = *experiment;
  if (!in.alphas.empty()) s.params.alphas = in.alphas;
  if (g.seed) {
    s.params.seed = *g.seed;
    s.params.session.seed = *g.seed;
  }
  if (g.out) s.output.path = *g.out;
  if (g.format) s.output.format = *format_from_name(*g.format);

  // inline markets and overrides bypass parse_scenario, so re-run its checks
  auto reparsed = parse_scenario(to_json_text(s));
  if (!reparsed.ok()) {
    status = report_diagnostics(reparsed);
    return std::nullopt;
  }
  return reparsed.scenario;
}

int execute(const Scenario& s, const Globals& g, bool figure1) {
  try {
    const RunReport report = figure1 ? run_figure1(s) : run_scenario(s);
    if (!g.quiet) {
      std::cout << report.summary << "\n";
      for (const auto& f : report.files) std::cout << "wrote " << f.string() << "\n";
    }
    return 0;
  } catch (const pricelab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const pricelab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical price formation laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw (overrides the scenario)");
  app.add_option("--out", g.out, "Output directory (overrides the scenario)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", g.quiet, "Suppress the summary line");

  Input in;
  struct Command {
    const char* name;
    const char* help;
    std::optional<Experiment> experiment;
    bool inline_market;
  };
  const Command commands[] = {
      {"run", "Run a scenario file as written", std::nullopt, false},
      {"clear", "Clearing interval, quantity and maximum surplus", Experiment::clear, true},
      {"vprofile", "Price-value distance V at every breakpoint", Experiment::vprofile, true},
      {"dynamics", "Price trajectories under the law of supply and demand", Experiment::dynamics,
       false},
      {"session", "Double-auction agent sessions", Experiment::session, true},
      {"sweep", "Equilibrium price across an abundance grid", Experiment::sweep, false},
      {"leontief", "Labor-value prices of an input-output economy", Experiment::leontief_solve,
       false},
  };

  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("scenario", in.scenario_path, "Scenario file (JSON)")
        ->check(CLI::ExistingFile);
    if (c.inline_market) {
      sub->add_option("--values", in.values, "Buyer unit values")->delimiter(',');
      sub->add_option("--costs", in.costs, "Seller unit costs")->delimiter(',');
    }
    if (c.experiment == Experiment::sweep) {
      sub->add_option("--alphas", in.alphas, "Abundance grid")->delimiter(',');
    }
    subs.emplace_back(sub, &c);
  }
  CLI::App* figure1 = app.add_subcommand("figure1", "Data for every panel of the large-market figure");
  figure1->add_option("scenario", in.scenario_path, "Continuous scenario (default: bundled)")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  int status = 0;
  if (figure1->parsed()) {
    if (in.scenario_path.empty()) in.scenario_path = PRICELAB_SCENARIO_DIR "/figure1.json";
    auto s = resolve(in, g, std::nullopt, status);
    return s ? execute(*s, g, true) : status;
  }
  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    if (!cmd->experiment && in.scenario_path.empty()) {
      std::cerr << "run requires a scenario file\n";
      return kUsageError;
    }
    auto s = resolve(in, g, cmd->experiment, status);
    return s ? execute(*s, g, false) : status;
  }
  return kUsageError;
}
