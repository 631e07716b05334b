#pragma once

// Experiment runners behind the `hetcache` subcommands. Each runner returns
// typed rows; the matching write_* function emits the fixed CSV schema
// (header line first, numbers in 6-decimal fixed format, file indices
// 1-based).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetcache/config_file.hpp"
#include "hetcache/game.hpp"
#include "hetcache/geometry.hpp"
#include "hetcache/simulator.hpp"

namespace hetcache {

enum class ExperimentKind { gamma, placement, sweep_alpha, sweep_r, sweep_cache, thresholds, simulate };

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::placement;
  RunConfig config;
  std::vector<double> alpha_grid;  // empty: 0:1:0.01
  std::vector<double> r_grid;      // empty: {config.sbs_radius_m}, or 45:60:5 for sweep-r
  std::vector<double> cache_grid;  // empty: {config.cache_size}, or {10,20,30,40} for sweep-cache
  std::uint64_t gamma_samples = 1'000'000;
  std::uint64_t requests = 100'000;
  unsigned workers = 0;

  /// Fills default grids and checks every grid against its domain. Throws
  /// ConfigError.
  ExperimentSpec resolved() const;
};

/// Parses "a:b:step" (inclusive of b up to rounding) or "v1,v2,...".
std::vector<double> parse_grid(std::string_view text);

NetworkGeometry geometry_of(const RunConfig& cfg);
CoverageProfile coverage_of(const RunConfig& cfg, std::uint64_t samples);
GameConfig game_config_of(const RunConfig& cfg, const CoverageProfile& coverage);

// gamma

struct GammaRow {
  double sbs_radius_m = 0.0;
  CoverageProfile gamma{std::vector<double>{1.0}};
  DeploymentCounts counts;
  std::uint64_t samples = 0;
};

std::vector<GammaRow> run_gamma(const ExperimentSpec& spec);
void write_gamma_csv(std::ostream& out, const std::vector<GammaRow>& rows);

// placement

EquilibriumResult run_placement(const ExperimentSpec& spec);
void write_equilibrium_csv(std::ostream& out, const std::vector<double>& alphas,
                           const std::vector<EquilibriumResult>& results);

// sweep-alpha, sweep-r, sweep-cache

struct SweepRow {
  double sbs_radius_m = 0.0;
  double cache_size = 0.0;
  double alpha = 0.0;
  RateBreakdown equilibrium;
  /// Rate of the alpha = 0 optimal placement evaluated at this alpha.
  double r_no_adversary_placement = 0.0;
  /// Rate of the uniform placement evaluated at this alpha.
  double r_uniform = 0.0;
  std::size_t j_star = 0;
  SolverStatus status = SolverStatus::optimal;
};

std::vector<SweepRow> run_sweep_alpha(const ExperimentSpec& spec);
std::vector<SweepRow> run_sweep_r(const ExperimentSpec& spec);
std::vector<SweepRow> run_sweep_cache(const ExperimentSpec& spec);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Least-squares slope of y over x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// thresholds

struct TrajectoryRow {
  double alpha = 0.0;
  double q_min = 0.0;
  double q_max = 0.0;
  /// Entry of the least popular file that is still cached (mu, 0-based).
  double q_mu = 0.0;
  std::size_t mu = 0;
  double r_total = 0.0;
  SolverStatus status = SolverStatus::optimal;
};

struct ThresholdsReport {
  std::vector<TrajectoryRow> rows;
  std::vector<Placement> placements;
  ThresholdResult thresholds;
};

ThresholdsReport run_thresholds(const ExperimentSpec& spec);
void write_thresholds_csv(std::ostream& out, const ThresholdsReport& report);
std::string thresholds_summary(const ThresholdsReport& report);

// simulate

struct SimulationRow {
  double alpha = 0.0;
  SimReport report;
  /// Analytic total rate of the quantized placement m/n.
  double analytic = 0.0;
  /// Analytic total rate of the unquantized equilibrium placement.
  double analytic_continuous = 0.0;
  double z_score = 0.0;
  SolverStatus status = SolverStatus::optimal;
};

std::vector<SimulationRow> run_simulate(const ExperimentSpec& spec);
void write_simulate_csv(std::ostream& out, const std::vector<SimulationRow>& rows);

}  // namespace hetcache
