#include "hetcache/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hetcache/parallel.hpp"
#include "hetcache/random.hpp"

namespace hetcache {
namespace {

constexpr std::uint64_t kChunkSamples = 1 << 18;

}  // namespace

void NetworkGeometry::validate() const {
  if (!(mbs_radius_m > 0.0)) throw std::invalid_argument("mbs radius must be > 0");
  if (!(sbs_spacing_m > 0.0)) throw std::invalid_argument("sbs spacing must be > 0");
  if (!(user_density_per_m2 > 0.0)) throw std::invalid_argument("user density must be > 0");
  const double lo = sbs_spacing_m / std::numbers::sqrt2;
  if (!(sbs_radius_m >= lo && sbs_radius_m <= sbs_spacing_m))
    throw std::invalid_argument("sbs radius must lie in [spacing/sqrt(2), spacing]");
}

CoverageAreas coverage_areas_unit_cell(const NetworkGeometry& geom, std::uint64_t samples,
                                       std::uint64_t seed, unsigned workers) {
  geom.validate();
  if (samples < 10'000) throw std::invalid_argument("coverage: samples must be >= 10^4");

  const double side = geom.sbs_spacing_m;
  const double r2 = geom.sbs_radius_m * geom.sbs_radius_m;
  const std::uint64_t chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<std::array<std::uint64_t, kUnitCellCorners + 1>> counts(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    Engine rng(chunk_seed(seed, c));
    const std::uint64_t begin = c * kChunkSamples;
    const std::uint64_t end = std::min(samples, begin + kChunkSamples);
    auto& local = counts[c];
    local.fill(0);
    for (std::uint64_t s = begin; s < end; ++s) {
      const double x = uniform01(rng) * side;
      const double y = uniform01(rng) * side;
      const double xr = side - x;
      const double yt = side - y;
      const int covered = (x * x + y * y <= r2) + (xr * xr + y * y <= r2) +
                          (x * x + yt * yt <= r2) + (xr * xr + yt * yt <= r2);
      ++local[covered];
    }
  }, workers);

  std::array<std::uint64_t, kUnitCellCorners + 1> total{};
  for (const auto& local : counts)
    for (std::size_t d = 0; d <= kUnitCellCorners; ++d) total[d] += local[d];
  if (total[0] != 0) throw std::logic_error("coverage: uncovered sample inside the overlap regime");

  CoverageAreas out;
  out.samples = samples;
  out.cell_area = side * side;
  for (std::size_t d = 0; d < kUnitCellCorners; ++d) {
    out.hits[d] = total[d + 1];
    out.areas[d] = out.cell_area * static_cast<double>(total[d + 1]) / static_cast<double>(samples);
  }
  return out;
}

CoverageProfile coverage_profile(const CoverageAreas& areas) {
  double sum = 0.0;
  for (double a : areas.areas) {
    if (!(a >= 0.0)) throw std::invalid_argument("coverage: negative area");
    sum += a;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("coverage: all areas are zero");
  std::vector<double> gamma(areas.areas.size());
  // Integer hit counts give an exact partition; use them when present.
  if (areas.samples > 0) {
    std::uint64_t hits = 0;
    for (auto h : areas.hits) hits += h;
    if (hits == areas.samples) {
      for (std::size_t d = 0; d < gamma.size(); ++d)
        gamma[d] = static_cast<double>(areas.hits[d]) / static_cast<double>(hits);
      // Nudge the largest bucket by ulps until the running sum is exactly 1.
      const auto big = static_cast<std::size_t>(
          std::max_element(gamma.begin(), gamma.end()) - gamma.begin());
      for (int guard = 0; guard < 64; ++guard) {
        double s = 0.0;
        for (double g : gamma) s += g;
        if (s == 1.0) break;
        gamma[big] = std::nextafter(gamma[big], s < 1.0 ? 2.0 : 0.0);
      }
      return CoverageProfile(std::move(gamma));
    }
  }
  for (std::size_t d = 0; d < gamma.size(); ++d) gamma[d] = areas.areas[d] / sum;
  return CoverageProfile(std::move(gamma));
}

DeploymentCounts deployment_counts(const NetworkGeometry& geom) {
  geom.validate();
  DeploymentCounts out;
  const double area = std::numbers::pi * geom.mbs_radius_m * geom.mbs_radius_m;
  out.num_users = static_cast<std::size_t>(std::llround(geom.user_density_per_m2 * area));

  const double reach = geom.mbs_radius_m + geom.sbs_radius_m;
  const auto extent = static_cast<long long>(std::floor(reach / geom.sbs_spacing_m));
  const double reach2 = reach * reach * (1.0 + 1e-12);
  for (long long i = -extent; i <= extent; ++i) {
    for (long long j = -extent; j <= extent; ++j) {
      const double x = static_cast<double>(i) * geom.sbs_spacing_m;
      const double y = static_cast<double>(j) * geom.sbs_spacing_m;
      if (x * x + y * y <= reach2) ++out.num_sbs;
    }
  }
  return out;
}

}  // namespace hetcache
