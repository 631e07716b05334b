#include "hetcache/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "hetcache/random.hpp"
#include "hetcache/rate.hpp"

namespace hetcache {
namespace {

constexpr double kGridTol = 1e-9;

double to_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ConfigError("invalid grid value '" + std::string(s) + "'");
  return v;
}

void check_grid(const std::vector<double>& grid, double lo, double hi, bool open_lo, bool open_hi,
                const char* name) {
  if (grid.empty()) throw ConfigError(std::string(name) + " grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw ConfigError(std::string(name) + " grid must be sorted");
  for (double v : grid) {
    const bool below = open_lo ? v <= lo : v < lo - kGridTol;
    const bool above = open_hi ? v >= hi : v > hi + kGridTol;
    if (below || above)
      throw ConfigError(std::string(name) + " grid value " + std::to_string(v) + " out of range");
  }
}

std::vector<double> default_alpha_grid() { return parse_grid("0:1:0.01"); }

struct Fixed {
  double value;
};

std::ostream& operator<<(std::ostream& out, Fixed f) {
  return out << std::fixed << std::setprecision(6) << f.value;
}

std::vector<SweepRow> sweep_rows(const GameConfig& base, const std::vector<double>& alphas,
                                 double radius, unsigned workers) {
  const auto results = equilibrium_sweep(base, alphas, kDefaultSolverTol, workers);
  const Placement reference = no_adversary_placement(base);
  const Placement uniform = Placement::uniform(base.library.num_files, base.cache_size);
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const GameConfig at = base.with_alpha(alphas[i]);
    SweepRow row;
    row.sbs_radius_m = radius;
    row.cache_size = base.cache_size;
    row.alpha = alphas[i];
    row.equilibrium = results[i].rates;
    row.r_no_adversary_placement = evaluate_rates(reference, at).r_total;
    row.r_uniform = evaluate_rates(uniform, at).r_total;
    row.j_star = results[i].j_star;
    row.status = results[i].status;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  if (name == "gamma") return ExperimentKind::gamma;
  if (name == "placement") return ExperimentKind::placement;
  if (name == "sweep-alpha") return ExperimentKind::sweep_alpha;
  if (name == "sweep-r") return ExperimentKind::sweep_r;
  if (name == "sweep-cache") return ExperimentKind::sweep_cache;
  if (name == "thresholds") return ExperimentKind::thresholds;
  if (name == "simulate") return ExperimentKind::simulate;
  return std::nullopt;
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::gamma: return "gamma";
    case ExperimentKind::placement: return "placement";
    case ExperimentKind::sweep_alpha: return "sweep-alpha";
    case ExperimentKind::sweep_r: return "sweep-r";
    case ExperimentKind::sweep_cache: return "sweep-cache";
    case ExperimentKind::thresholds: return "thresholds";
    case ExperimentKind::simulate: return "simulate";
  }
  return "unknown";
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
      throw ConfigError("grid must look like a:b:step");
    const double a = to_double(text.substr(0, c1));
    const double b = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = to_double(text.substr(c2 + 1));
    if (!(step > 0.0) || b < a) throw ConfigError("grid needs step > 0 and a <= b");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw ConfigError("grid has too many points");
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      // Round away accumulated binary noise so 0.07 prints and compares as 0.07.
      const double v = a + static_cast<double>(i) * step;
      out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(to_double(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ExperimentSpec ExperimentSpec::resolved() const {
  config.validate();
  ExperimentSpec out = *this;
  if (out.alpha_grid.empty()) out.alpha_grid = default_alpha_grid();
  if (out.r_grid.empty())
    out.r_grid = kind == ExperimentKind::sweep_r ? std::vector<double>{45, 50, 55, 60}
                                                 : std::vector<double>{config.sbs_radius_m};
  if (out.cache_grid.empty())
    out.cache_grid = kind == ExperimentKind::sweep_cache ? std::vector<double>{10, 20, 30, 40}
                                                         : std::vector<double>{config.cache_size};
  check_grid(out.alpha_grid, 0.0, 1.0, false, false, "alpha");
  check_grid(out.r_grid, config.sbs_spacing_m / std::sqrt(2.0), config.sbs_spacing_m, false, false,
             "r");
  check_grid(out.cache_grid, 0.0, static_cast<double>(config.num_files), true, true, "cache");
  if (kind == ExperimentKind::thresholds) {
    for (std::size_t i = 1; i < out.alpha_grid.size(); ++i)
      if (out.alpha_grid[i] - out.alpha_grid[i - 1] > 0.01 + kGridTol)
        throw ConfigError("thresholds need an alpha grid step <= 0.01");
  }
  if (out.gamma_samples < 10'000) throw ConfigError("gamma samples must be >= 10^4");
  if (out.requests == 0) throw ConfigError("requests must be >= 1");
  return out;
}

NetworkGeometry geometry_of(const RunConfig& cfg) {
  return {cfg.mbs_radius_m, cfg.sbs_spacing_m, cfg.sbs_radius_m, cfg.user_density_per_m2};
}

CoverageProfile coverage_of(const RunConfig& cfg, std::uint64_t samples) {
  return coverage_profile(coverage_areas_unit_cell(geometry_of(cfg), samples, cfg.seed));
}

GameConfig game_config_of(const RunConfig& cfg, const CoverageProfile& coverage) {
  GameConfig game;
  game.alpha = cfg.alpha;
  game.library.num_files = cfg.num_files;
  game.library.fragments_per_file = cfg.fragments_per_file;
  game.popularity = zipf_popularity(cfg.num_files, cfg.zipf_exponent);
  game.coverage = coverage;
  game.cache_size = cfg.cache_size;
  game.validate();
  return game;
}

std::vector<GammaRow> run_gamma(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  std::vector<GammaRow> rows;
  for (double r : spec.r_grid) {
    RunConfig cfg = spec.config;
    cfg.sbs_radius_m = r;
    const auto geom = geometry_of(cfg);
    const auto areas = coverage_areas_unit_cell(geom, spec.gamma_samples, cfg.seed, spec.workers);
    rows.push_back({r, coverage_profile(areas), deployment_counts(geom), spec.gamma_samples});
  }
  return rows;
}

void write_gamma_csv(std::ostream& out, const std::vector<GammaRow>& rows) {
  const std::size_t S = rows.empty() ? kUnitCellCorners : rows.front().gamma.max_coverage();
  out << "sbs_radius_m";
  for (std::size_t d = 1; d <= S; ++d) out << ",gamma_" << d;
  out << ",num_sbs,num_users,samples\n";
  for (const auto& row : rows) {
    out << Fixed{row.sbs_radius_m};
    for (double g : row.gamma.values()) out << ',' << Fixed{g};
    out << ',' << row.counts.num_sbs << ',' << row.counts.num_users << ',' << row.samples << '\n';
  }
}

EquilibriumResult run_placement(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  const auto game = game_config_of(spec.config, coverage_of(spec.config, spec.gamma_samples));
  return equilibrium_placement(game);
}

void write_equilibrium_csv(std::ostream& out, const std::vector<double>& alphas,
                           const std::vector<EquilibriumResult>& results) {
  const std::size_t N = results.empty() ? 0 : results.front().q_star.size();
  out << "alpha,R_total,R_legit,R_adv,j_star";
  for (std::size_t j = 1; j <= N; ++j) out << ",q_" << j;
  out << '\n';
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << Fixed{alphas[i]} << ',' << Fixed{r.rates.r_total} << ',' << Fixed{r.rates.r_legit}
        << ',' << Fixed{r.rates.r_adv} << ',' << r.j_star + 1;
    for (double q : r.q_star.values()) out << ',' << Fixed{q};
    out << '\n';
  }
}

std::vector<SweepRow> run_sweep_alpha(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  const auto game = game_config_of(spec.config, coverage_of(spec.config, spec.gamma_samples));
  return sweep_rows(game, spec.alpha_grid, spec.config.sbs_radius_m, spec.workers);
}

std::vector<SweepRow> run_sweep_r(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  std::vector<SweepRow> rows;
  for (double r : spec.r_grid) {
    RunConfig cfg = spec.config;
    cfg.sbs_radius_m = r;
    const auto game = game_config_of(cfg, coverage_of(cfg, spec.gamma_samples));
    auto part = sweep_rows(game, spec.alpha_grid, r, spec.workers);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<SweepRow> run_sweep_cache(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  const auto coverage = coverage_of(spec.config, spec.gamma_samples);
  std::vector<SweepRow> rows;
  for (double M : spec.cache_grid) {
    RunConfig cfg = spec.config;
    cfg.cache_size = M;
    auto part = sweep_rows(game_config_of(cfg, coverage), spec.alpha_grid, cfg.sbs_radius_m,
                           spec.workers);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "sbs_radius_m,cache_size,alpha,R_total,R_legit,R_adv,R_no_adversary_placement,"
         "R_uniform,j_star,status\n";
  for (const auto& r : rows) {
    out << Fixed{r.sbs_radius_m} << ',' << Fixed{r.cache_size} << ',' << Fixed{r.alpha} << ','
        << Fixed{r.equilibrium.r_total} << ',' << Fixed{r.equilibrium.r_legit} << ','
        << Fixed{r.equilibrium.r_adv} << ',' << Fixed{r.r_no_adversary_placement} << ','
        << Fixed{r.r_uniform} << ',' << r.j_star + 1 << ',' << to_string(r.status) << '\n';
  }
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope: need at least two (x, y) pairs");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope: x values are all equal");
  return sxy / sxx;
}

ThresholdsReport run_thresholds(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  const auto game = game_config_of(spec.config, coverage_of(spec.config, spec.gamma_samples));
  const auto results = equilibrium_sweep(game, spec.alpha_grid, kDefaultSolverTol, spec.workers);

  ThresholdsReport report;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    const auto q = res.q_star.values();
    TrajectoryRow row;
    row.alpha = spec.alpha_grid[i];
    row.q_min = res.q_star.min();
    row.q_max = res.q_star.max();
    for (std::size_t j = q.size(); j-- > 0;) {
      if (q[j] != 0.0) {
        row.mu = j;
        row.q_mu = q[j];
        break;
      }
    }
    row.r_total = res.rates.r_total;
    row.status = res.status;
    report.rows.push_back(row);
    report.placements.push_back(res.q_star);
  }
  const Placement reference = spec.alpha_grid.front() == 0.0 ? report.placements.front()
                                                             : no_adversary_placement(game);
  const Placement uniform = Placement::uniform(game.library.num_files, game.cache_size);
  report.thresholds = detect_thresholds(spec.alpha_grid, report.placements, reference, uniform);
  return report;
}

void write_thresholds_csv(std::ostream& out, const ThresholdsReport& report) {
  out << "alpha,q_min,q_max,q_mu,mu,R_total,status\n";
  for (const auto& r : report.rows) {
    out << Fixed{r.alpha} << ',' << Fixed{r.q_min} << ',' << Fixed{r.q_max} << ','
        << Fixed{r.q_mu} << ',' << r.mu + 1 << ',' << Fixed{r.r_total} << ','
        << to_string(r.status) << '\n';
  }
}

std::string thresholds_summary(const ThresholdsReport& report) {
  std::ostringstream out;
  auto line = [&](const char* name, const std::optional<Threshold>& t, const char* absent) {
    out << name << '=';
    if (t) out << Fixed{t->alpha} << " bracket=[" << Fixed{t->bracket_low} << ',' << Fixed{t->alpha} << "]\n";
    else out << absent << '\n';
  };
  line("alpha_thr_1", report.thresholds.branching, "none (no branching)");
  line("alpha_thr_2", report.thresholds.gathering, "none (no gathering)");
  return out.str();
}

std::vector<SimulationRow> run_simulate(const ExperimentSpec& raw) {
  const auto spec = raw.resolved();
  const auto game = game_config_of(spec.config, coverage_of(spec.config, spec.gamma_samples));
  const auto results = equilibrium_sweep(game, spec.alpha_grid, kDefaultSolverTol, spec.workers);
  const std::size_t n = spec.config.fragments_per_file;

  std::vector<SimulationRow> rows;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const GameConfig at = game.with_alpha(spec.alpha_grid[i]);
    const auto& q = results[i].q_star;
    SimulationRow row;
    row.alpha = spec.alpha_grid[i];
    row.status = results[i].status;
    row.report = simulate(q, at, n, spec.requests, splitmix64(spec.config.seed + i), spec.workers);
    const auto m = quantize_placement(q, n, at.popularity.probs());
    row.analytic = evaluate_rates(dequantize_placement(m, n, q.cache_size()), at).r_total;
    row.analytic_continuous = results[i].rates.r_total;
    const double diff = row.report.backhaul_fraction_mean - row.analytic;
    const double se = row.report.backhaul_fraction_stderr;
    if (se > 0.0) row.z_score = diff / se;
    else row.z_score = std::abs(diff) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_simulate_csv(std::ostream& out, const std::vector<SimulationRow>& rows) {
  const std::size_t S = rows.empty() ? kUnitCellCorners : rows.front().report.per_coverage_counts.size();
  out << "alpha,requests,mean,stderr";
  for (std::size_t d = 1; d <= S; ++d) out << ",count_d" << d;
  out << ",analytic,z_score\n";
  for (const auto& r : rows) {
    out << Fixed{r.alpha} << ',' << r.report.requests << ',' << Fixed{r.report.backhaul_fraction_mean}
        << ',' << Fixed{r.report.backhaul_fraction_stderr};
    for (auto c : r.report.per_coverage_counts) out << ',' << c;
    out << ',' << Fixed{r.analytic} << ',' << Fixed{r.z_score} << '\n';
  }
}

}  // namespace hetcache
