// hetcache: adversary-robust coded cache placement experiments.
//
// Exit codes: 0 success, 2 invalid configuration or arguments, 3 solver
// failure in at least one row.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "hetcache/experiments.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitSolverFailure = 3;

template <class Rows>
bool any_failed(const Rows& rows) {
  for (const auto& r : rows)
    if (r.status != hetcache::SolverStatus::optimal) return true;
  return false;
}

int run(const hetcache::ExperimentSpec& spec, std::ostream& out, std::ostream& summary) {
  using hetcache::ExperimentKind;
  switch (spec.kind) {
    case ExperimentKind::gamma:
      hetcache::write_gamma_csv(out, hetcache::run_gamma(spec));
      return 0;
    case ExperimentKind::placement: {
      const auto result = hetcache::run_placement(spec);
      hetcache::write_equilibrium_csv(out, {spec.config.alpha}, {result});
      if (result.status != hetcache::SolverStatus::optimal) {
        summary << "solver status: " << hetcache::to_string(result.status) << '\n';
        return kExitSolverFailure;
      }
      return 0;
    }
    case ExperimentKind::sweep_alpha:
    case ExperimentKind::sweep_r:
    case ExperimentKind::sweep_cache: {
      const auto rows = spec.kind == ExperimentKind::sweep_alpha ? hetcache::run_sweep_alpha(spec)
                        : spec.kind == ExperimentKind::sweep_r   ? hetcache::run_sweep_r(spec)
                                                                 : hetcache::run_sweep_cache(spec);
      hetcache::write_sweep_csv(out, rows);
      return any_failed(rows) ? kExitSolverFailure : 0;
    }
    case ExperimentKind::thresholds: {
      const auto report = hetcache::run_thresholds(spec);
      hetcache::write_thresholds_csv(out, report);
      summary << hetcache::thresholds_summary(report);
      return any_failed(report.rows) ? kExitSolverFailure : 0;
    }
    case ExperimentKind::simulate: {
      const auto rows = hetcache::run_simulate(spec);
      hetcache::write_simulate_csv(out, rows);
      return any_failed(rows) ? kExitSolverFailure : 0;
    }
  }
  return kExitInvalidConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversary-robust coded cache placement for heterogeneous networks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::optional<std::string> alpha_grid, r_grid, cache_grid;
  std::uint64_t gamma_samples = 1'000'000;
  std::uint64_t requests = 100'000;
  unsigned workers = 0;
  std::map<std::string, std::optional<std::string>> overrides;

  app.add_option("--config", config_path, "Key/value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");
  app.add_option("--alpha-grid", alpha_grid, "Alpha grid, a:b:step or comma list");
  app.add_option("--r-grid", r_grid, "SBS radius grid in meters, a:b:step or comma list");
  app.add_option("--cache-grid", cache_grid, "Cache size grid in files, a:b:step or comma list");
  app.add_option("--samples", gamma_samples, "Monte Carlo samples for the coverage profile");
  app.add_option("--requests", requests, "Requests per simulated row");
  app.add_option("--workers", workers, "Worker threads (0 = all cores)");
  for (const auto& key : hetcache::RunConfig::keys())
    app.add_option("--" + key, overrides[key], "Overrides config key " + key);

  const char* kinds[] = {"gamma", "placement", "sweep-alpha", "sweep-r", "sweep-cache",
                         "thresholds", "simulate"};
  for (const char* k : kinds) app.add_subcommand(k, std::string("Run the ") + k + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  try {
    hetcache::ExperimentSpec spec;
    spec.kind = *hetcache::parse_experiment_kind(app.get_subcommands().front()->get_name());
    if (!config_path.empty()) spec.config = hetcache::load_config_file(config_path);
    for (const auto& [key, value] : overrides)
      if (value) spec.config.set(key, *value);
    if (alpha_grid) spec.alpha_grid = hetcache::parse_grid(*alpha_grid);
    if (r_grid) spec.r_grid = hetcache::parse_grid(*r_grid);
    if (cache_grid) spec.cache_grid = hetcache::parse_grid(*cache_grid);
    spec.gamma_samples = gamma_samples;
    spec.requests = requests;
    spec.workers = workers;
    spec = spec.resolved();

    if (out_path.empty()) return run(spec, std::cout, std::cerr);
    std::ofstream file(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kExitInvalidConfig;
    }
    return run(spec, file, std::cout);
  } catch (const hetcache::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}
