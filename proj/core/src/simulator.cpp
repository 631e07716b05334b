#include "hetcache/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hetcache/game.hpp"
#include "hetcache/parallel.hpp"
#include "hetcache/random.hpp"

namespace hetcache {
namespace {

constexpr std::uint64_t kBatchRequests = 1 << 14;

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) cdf[i] = acc += probs[i];
  cdf.back() = 1.0;
  return cdf;
}

std::size_t draw(std::span<const double> cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

struct BatchTotals {
  std::uint64_t missing = 0;          // sum of missing packets
  std::uint64_t missing_squared = 0;  // sum of their squares
  std::uint64_t adversaries = 0;
  std::vector<std::uint64_t> per_coverage;
};

}  // namespace

CodedPlacement CodedPlacement::from_packets(std::vector<std::size_t> packets,
                                            std::size_t fragments, std::size_t num_sbs_logical) {
  if (fragments == 0) throw std::invalid_argument("coded placement: n must be >= 1");
  if (num_sbs_logical == 0) throw std::invalid_argument("coded placement: need at least one SBS");
  CodedPlacement out;
  out.fragments = fragments;
  out.num_sbs_logical = num_sbs_logical;
  out.mbs_reserve.resize(packets.size());
  for (std::size_t j = 0; j < packets.size(); ++j) {
    if (packets[j] > fragments) throw std::invalid_argument("coded placement: m_j exceeds n");
    out.mbs_reserve[j] = fragments - packets[j];
  }
  out.packets = std::move(packets);
  return out;
}

std::size_t CodedPlacement::coded_packets(std::size_t j) const {
  return fragments + (num_sbs_logical - 1) * packets.at(j);
}

bool packet_accounting_check(const CodedPlacement& placement, std::size_t d) {
  const std::size_t n = placement.fragments;
  if (placement.mbs_reserve.size() != placement.packets.size()) return false;
  for (std::size_t j = 0; j < placement.packets.size(); ++j) {
    const std::size_t m = placement.packets[j];
    if (m > n || placement.mbs_reserve[j] != n - m) return false;
    // Packets handed to the SBSs, each SBS holding a distinct subset.
    const std::size_t at_sbs = placement.coded_packets(j) - placement.mbs_reserve[j];
    if (at_sbs != placement.num_sbs_logical * m) return false;
    const std::size_t local = d * m;
    if (local > at_sbs) return false;
    const std::size_t from_mbs = local >= n ? 0 : std::min(n - local, placement.mbs_reserve[j]);
    if (local + from_mbs < n) return false;
  }
  return true;
}

SimReport simulate(const Placement& q, const GameConfig& cfg, std::size_t fragments,
                   std::uint64_t num_requests, std::uint64_t seed, unsigned workers) {
  cfg.validate();
  if (num_requests == 0) throw std::invalid_argument("simulate: num_requests must be >= 1");
  if (fragments == 0) throw std::invalid_argument("simulate: fragments must be >= 1");
  if (q.size() != cfg.library.num_files)
    throw std::invalid_argument("simulate: placement size does not match the library");

  const auto m = quantize_placement(q, fragments, cfg.popularity.probs());
  const Placement realized = dequantize_placement(m, fragments, q.cache_size());
  const std::size_t target = best_response(realized).j_star;
  const auto file_cdf = cumulative(cfg.popularity.probs());
  const auto cover_cdf = cumulative(cfg.coverage.values());
  const std::size_t S = cfg.coverage.max_coverage();

  const std::uint64_t batches = (num_requests + kBatchRequests - 1) / kBatchRequests;
  std::vector<BatchTotals> totals(batches);
  parallel_for(batches, [&](std::size_t b) {
    Engine rng(chunk_seed(seed, b));
    BatchTotals& t = totals[b];
    t.per_coverage.assign(S, 0);
    const std::uint64_t begin = b * kBatchRequests;
    const std::uint64_t end = std::min(num_requests, begin + kBatchRequests);
    for (std::uint64_t r = begin; r < end; ++r) {
      const bool adversary = uniform01(rng) < cfg.alpha;
      const std::size_t file = adversary ? target : draw(file_cdf, uniform01(rng));
      const std::size_t d = draw(cover_cdf, uniform01(rng)) + 1;
      const std::size_t local = d * m[file];
      const std::uint64_t missing = local >= fragments ? 0 : fragments - local;
      t.missing += missing;
      t.missing_squared += missing * missing;
      t.adversaries += adversary;
      ++t.per_coverage[d - 1];
    }
  }, workers);

  SimReport report;
  report.requests = num_requests;
  report.per_coverage_counts.assign(S, 0);
  std::uint64_t missing = 0;
  std::uint64_t missing_squared = 0;
  for (const auto& t : totals) {
    missing += t.missing;
    missing_squared += t.missing_squared;
    report.adversary_requests += t.adversaries;
    for (std::size_t d = 0; d < S; ++d) report.per_coverage_counts[d] += t.per_coverage[d];
  }

  const auto n = static_cast<double>(fragments);
  const auto count = static_cast<double>(num_requests);
  const double mean_packets = static_cast<double>(missing) / count;
  report.backhaul_fraction_mean = mean_packets / n;
  if (num_requests > 1) {
    const double ss = static_cast<double>(missing_squared) - count * mean_packets * mean_packets;
    const double var = std::max(ss, 0.0) / (count - 1.0);
    report.backhaul_fraction_stderr = std::sqrt(var / count) / n;
  }
  return report;
}

}  // namespace hetcache
