#pragma once

// Coverage statistics of a square-grid small-cell deployment.
//
// SBSs sit on the lattice (i * spacing, j * spacing) around the MBS at the
// origin. The coverage profile is computed on one interior grid cell, whose
// four corners carry SBSs of radius r; with spacing/sqrt(2) <= r <= spacing
// every point of the cell is covered by between one and four of them.

#include <array>
#include <cstddef>
#include <cstdint>

#include "hetcache/model.hpp"

namespace hetcache {

inline constexpr std::size_t kUnitCellCorners = 4;

struct NetworkGeometry {
  double mbs_radius_m = 500.0;
  double sbs_spacing_m = 60.0;
  double sbs_radius_m = 45.0;
  double user_density_per_m2 = 0.05;

  /// Throws std::invalid_argument outside the overlap regime
  /// spacing/sqrt(2) <= r <= spacing or for non-positive sizes.
  void validate() const;
};

struct CoverageAreas {
  /// areas[d-1]: square meters of the unit cell covered by exactly d SBSs.
  std::array<double, kUnitCellCorners> areas{};
  std::array<std::uint64_t, kUnitCellCorners> hits{};
  std::uint64_t samples = 0;
  double cell_area = 0.0;
};

struct DeploymentCounts {
  std::size_t num_sbs = 0;
  std::size_t num_users = 0;
};

/// Monte Carlo estimate of the per-coverage-count areas of the unit cell.
/// Deterministic in (geometry, samples, seed) regardless of thread count.
CoverageAreas coverage_areas_unit_cell(const NetworkGeometry& geom, std::uint64_t samples,
                                       std::uint64_t seed, unsigned workers = 0);

/// gamma_d = A_d / sum_i A_i.
CoverageProfile coverage_profile(const CoverageAreas& areas);

/// Users: round(density * pi * D^2). SBSs: lattice points within D + r of
/// the MBS, i.e. every SBS whose disk reaches into the macro cell.
DeploymentCounts deployment_counts(const NetworkGeometry& geom);

}  // namespace hetcache
