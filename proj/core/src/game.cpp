#include "hetcache/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hetcache/parallel.hpp"
#include "hetcache/simplex.hpp"

namespace hetcache {
namespace {

// Segment s (s = 0..S-1) of the deficit curve covers the cache fractions
// where exactly k = S - s coverage terms are still positive.
struct Segment {
  double width;
  double gain;  // -slope of sum_d g_d max(1 - d x, 0) on the segment
};

std::vector<Segment> deficit_segments(const CoverageProfile& coverage) {
  const std::size_t S = coverage.max_coverage();
  std::vector<Segment> segs(S);
  for (std::size_t s = 0; s < S; ++s) {
    const std::size_t k = S - s;
    const double hi = 1.0 / static_cast<double>(k);
    const double lo = k == S ? 0.0 : 1.0 / static_cast<double>(k + 1);
    double gain = 0.0;
    for (std::size_t d = 1; d <= k; ++d) gain += static_cast<double>(d) * coverage.gamma(d);
    segs[s] = {hi - lo, gain};
  }
  return segs;
}

lp::Problem build_lp(const GameConfig& cfg, std::span<const Segment> segs) {
  const std::size_t N = cfg.library.num_files;
  const std::size_t S = segs.size();
  const std::size_t mu = N * S;  // first column of the min(q) segments
  lp::Problem lp(N + 1, N * S + S);

  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t col = j * S + s;
      lp.objective[col] = (1.0 - cfg.alpha) * cfg.popularity[j] * segs[s].gain;
      lp.upper[col] = segs[s].width;
      lp.at(0, col) = 1.0;
      lp.at(1 + j, col) = -1.0;
      lp.at(1 + j, mu + s) = 1.0;
    }
  }
  for (std::size_t s = 0; s < S; ++s) {
    lp.objective[mu + s] = cfg.alpha * segs[s].gain;
    lp.upper[mu + s] = segs[s].width;
  }
  lp.rhs[0] = cfg.cache_size;
  return lp;
}

// Values within 2^-40 of each other collapse so that ties among files are
// exact after the solve.
double snap(double x) { return std::ldexp(std::round(std::ldexp(x, 40)), -40); }

std::vector<double> canonicalize(std::vector<double> q, const GameConfig& cfg) {
  const std::size_t N = q.size();
  for (double& x : q) x = std::clamp(x, 0.0, 1.0);

  // Water-fill spare capacity from the bottom; the objective is
  // non-increasing in every q_j.
  const double target = std::min(cfg.cache_size, static_cast<double>(N));
  double spare = target - std::accumulate(q.begin(), q.end(), 0.0);
  if (spare > 1e-12) {
    std::vector<double> sorted = q;
    std::sort(sorted.begin(), sorted.end());
    // Find level L with sum_j max(L - q_j, 0) = spare.
    double level = 1.0;
    double below = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      below += sorted[i];
      const double next = i + 1 < N ? sorted[i + 1] : 1.0;
      const double candidate = (spare + below) / static_cast<double>(i + 1);
      if (candidate <= next) {
        level = std::min(candidate, 1.0);
        break;
      }
    }
    for (double& x : q) x = std::max(x, level);
  }

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cfg.popularity[a] > cfg.popularity[b];
  });
  std::vector<double> values = q;
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<double> out(N);
  for (std::size_t r = 0; r < N; ++r) out[order[r]] = snap(values[r]);
  return out;
}

}  // namespace

std::string_view to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::optimal: return "optimal";
    case SolverStatus::iteration_limit: return "iteration-limit";
    case SolverStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

BestResponse best_response(const Placement& q) {
  if (q.size() == 0) throw std::invalid_argument("best_response: empty placement");
  const auto values = q.values();
  const auto it = std::min_element(values.begin(), values.end());
  const auto j = static_cast<std::size_t>(it - values.begin());
  return {j, AdversaryStrategy::point_mass(j, q.size())};
}

EquilibriumResult equilibrium_placement(const GameConfig& cfg, double tol) {
  cfg.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("equilibrium: tol must be > 0");
  const std::size_t N = cfg.library.num_files;

  if (!(cfg.cache_size > 0.0)) {
    Placement empty(std::vector<double>(N, 0.0), 0.0);
    auto br = best_response(empty);
    return {empty, br.j_star, evaluate_rates(empty, cfg), SolverStatus::infeasible, 0.0, 0};
  }

  const auto segs = deficit_segments(cfg.coverage);
  const auto problem = build_lp(cfg, segs);
  const auto sol = lp::maximize(problem);

  const std::size_t S = segs.size();
  std::vector<double> q(N, 0.0);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t s = 0; s < S; ++s) q[j] += sol.x[j * S + s];

  Placement placement(canonicalize(std::move(q), cfg), cfg.cache_size);
  const auto br = best_response(placement);

  EquilibriumResult result{placement, br.j_star, evaluate_rates(placement, cfg),
                           SolverStatus::optimal, sol.gap(), sol.iterations};
  if (sol.status != lp::Status::optimal || !(sol.gap() <= tol) || sol.max_violation > 1e-9)
    result.status = SolverStatus::iteration_limit;
  return result;
}

Placement no_adversary_placement(const GameConfig& cfg, double tol) {
  return equilibrium_placement(cfg.with_alpha(0.0), tol).q_star;
}

double worst_case_rate(const GameConfig& cfg) {
  cfg.validate();
  const double level =
      std::clamp(cfg.cache_size / static_cast<double>(cfg.library.num_files), 0.0, 1.0);
  return coverage_deficit(level, cfg.coverage);
}

std::vector<EquilibriumResult> equilibrium_sweep(const GameConfig& base,
                                                 std::span<const double> alpha_grid,
                                                 double tol, unsigned workers) {
  std::vector<std::optional<EquilibriumResult>> slots(alpha_grid.size());
  parallel_for(alpha_grid.size(), [&](std::size_t i) {
    slots[i] = equilibrium_placement(base.with_alpha(alpha_grid[i]), tol);
  }, workers);
  std::vector<EquilibriumResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double max_abs_difference(const Placement& a, const Placement& b) {
  if (a.size() != b.size()) throw std::invalid_argument("placements differ in size");
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

ThresholdResult detect_thresholds(std::span<const double> alpha_grid,
                                  std::span<const Placement> placements,
                                  const Placement& no_adversary, const Placement& uniform,
                                  double distance_tol) {
  if (alpha_grid.size() != placements.size())
    throw std::invalid_argument("thresholds: grid and placements differ in size");
  if (!(distance_tol > 0.0)) throw std::invalid_argument("thresholds: tolerance must be > 0");

  ThresholdResult out;
  // Nothing gathers when the unattacked placement is already uniform.
  const bool starts_uniform = max_abs_difference(no_adversary, uniform) <= distance_tol;
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    const double low = i == 0 ? alpha_grid[0] : alpha_grid[i - 1];
    if (!out.branching && max_abs_difference(placements[i], no_adversary) > distance_tol)
      out.branching = Threshold{alpha_grid[i], low};
    if (!starts_uniform && !out.gathering && max_abs_difference(placements[i], uniform) <= distance_tol)
      out.gathering = Threshold{alpha_grid[i], low};
  }
  return out;
}

ThresholdResult detect_thresholds(const GameConfig& base, std::span<const double> alpha_grid,
                                  double distance_tol, unsigned workers) {
  if (alpha_grid.empty()) throw std::invalid_argument("thresholds: empty alpha grid");
  if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()) || alpha_grid.front() < 0.0 ||
      alpha_grid.back() > 1.0)
    throw std::invalid_argument("thresholds: alpha grid must be sorted inside [0, 1]");

  const auto sweep = equilibrium_sweep(base, alpha_grid, kDefaultSolverTol, workers);
  std::vector<Placement> placements;
  placements.reserve(sweep.size());
  for (const auto& r : sweep) {
    if (r.status != SolverStatus::optimal)
      throw std::runtime_error("thresholds: solver failed at alpha = " +
                               std::to_string(alpha_grid[placements.size()]));
    placements.push_back(r.q_star);
  }
  const Placement reference = alpha_grid.front() == 0.0 ? placements.front()
                                                        : no_adversary_placement(base);
  const Placement uniform = Placement::uniform(base.library.num_files, base.cache_size);
  return detect_thresholds(alpha_grid, placements, reference, uniform, distance_tol);
}

}  // namespace hetcache
