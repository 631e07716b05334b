#pragma once

// Leader/follower game between the MBS, which commits to a cache placement,
// and the adversarial users, who answer with the requests that maximize the
// backhaul rate.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hetcache/model.hpp"
#include "hetcache/rate.hpp"

namespace hetcache {

enum class SolverStatus { optimal, iteration_limit, infeasible };

std::string_view to_string(SolverStatus s);

struct BestResponse {
  std::size_t j_star = 0;
  AdversaryStrategy strategy;
};

/// The follower requests the least cached file; ties go to the lowest index.
BestResponse best_response(const Placement& q);

struct EquilibriumResult {
  Placement q_star;
  std::size_t j_star = 0;
  RateBreakdown rates;
  SolverStatus status = SolverStatus::optimal;
  /// Duality gap of the underlying LP, in rate units.
  double objective_gap = 0.0;
  std::size_t iterations = 0;
};

inline constexpr double kDefaultSolverTol = 1e-7;

/// Minimizes
///
///   (1 - a) sum_d sum_j g_d p_j max(1 - d q_j, 0) + a sum_d g_d max(1 - d min(q), 0)
///
/// over 0 <= q <= 1, sum(q) <= M.
///
/// Each term max(1 - d x, 0) summed over d is convex and piecewise linear in
/// x with breakpoints at 1/S, ..., 1/2, 1, so the problem is solved exactly
/// as an LP over per-file segment fills: one column per (file, segment) and
/// one per segment of min(q), the latter tied to every file by
/// min(q) <= q_j. Decreasing marginal gains make the segment order implicit.
///
/// Among optimal placements the returned one is canonical: unused capacity
/// is water-filled from the bottom, and the values are then assigned in
/// decreasing order to files in decreasing popularity (stable on ties).
EquilibriumResult equilibrium_placement(const GameConfig& cfg, double tol = kDefaultSolverTol);

/// Equilibrium placement with alpha = 0.
Placement no_adversary_placement(const GameConfig& cfg, double tol = kDefaultSolverTol);

/// sum_d g_d max(1 - d min(1, M/N), 0): the rate of the uniform placement
/// when every user is adversarial.
double worst_case_rate(const GameConfig& cfg);

/// Solves one equilibrium per alpha. Results keep grid order.
std::vector<EquilibriumResult> equilibrium_sweep(const GameConfig& base,
                                                 std::span<const double> alpha_grid,
                                                 double tol = kDefaultSolverTol,
                                                 unsigned workers = 0);

inline constexpr double kDefaultThresholdTol = 1e-3;

struct Threshold {
  double alpha = 0.0;
  /// Previous grid point; equals alpha when the threshold is the first one.
  double bracket_low = 0.0;
};

struct ThresholdResult {
  /// First alpha where q*(alpha) leaves q*(0) by more than the tolerance.
  std::optional<Threshold> branching;
  /// First alpha where q*(alpha) is within the tolerance of uniform. Absent
  /// when q*(0) itself is uniform (e.g. a cache holding the whole library).
  std::optional<Threshold> gathering;
};

double max_abs_difference(const Placement& a, const Placement& b);

/// Threshold detection on precomputed placements; `placements[i]` belongs
/// to `alpha_grid[i]`.
ThresholdResult detect_thresholds(std::span<const double> alpha_grid,
                                  std::span<const Placement> placements,
                                  const Placement& no_adversary, const Placement& uniform,
                                  double distance_tol = kDefaultThresholdTol);

/// Solves the sweep and detects both thresholds. The grid must be sorted,
/// non-empty, and inside [0, 1].
ThresholdResult detect_thresholds(const GameConfig& base, std::span<const double> alpha_grid,
                                  double distance_tol = kDefaultThresholdTol,
                                  unsigned workers = 0);

}  // namespace hetcache
