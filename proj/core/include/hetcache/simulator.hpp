#pragma once

// Request-level Monte Carlo of the coded caching delivery phase.
//
// Every SBS stores m_j MDS-coded packets of file j, distinct across SBSs,
// and the MBS keeps n - m_j further packets. A user covered by d SBSs
// collects d * m_j packets locally; the MBS sends the missing
// max(n - d * m_j, 0) over the backhaul.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hetcache/model.hpp"

namespace hetcache {

struct CodedPlacement {
  std::size_t fragments = 0;                // n
  std::size_t num_sbs_logical = 0;          // SBSs a user can combine
  std::vector<std::size_t> packets;         // m_j per SBS
  std::vector<std::size_t> mbs_reserve;     // n - m_j kept at the MBS

  static CodedPlacement from_packets(std::vector<std::size_t> packets, std::size_t fragments,
                                     std::size_t num_sbs_logical);

  /// k_j = n + (num_sbs_logical - 1) m_j MDS packets generated for file j.
  std::size_t coded_packets(std::size_t j) const;
};

/// True iff, for every file, a user covered by d SBSs can collect n distinct
/// packets from its SBSs plus the MBS reserve, and the SBSs hold at least
/// d * m_j distinct packets between them.
bool packet_accounting_check(const CodedPlacement& placement, std::size_t d);

struct SimReport {
  std::uint64_t requests = 0;
  double backhaul_fraction_mean = 0.0;
  double backhaul_fraction_stderr = 0.0;
  std::vector<std::uint64_t> per_coverage_counts;  // index d-1
  std::uint64_t adversary_requests = 0;
};

inline constexpr std::size_t kDefaultFragments = 100;

/// Simulates `num_requests` independent requests. A request comes from an
/// adversary with probability alpha (who asks for the best-response file),
/// otherwise from a legitimate user drawing from the popularity law. The
/// coverage count d is drawn from the profile. Packets follow
/// quantize_placement(q, n). Deterministic in the seed, independent of the
/// worker count.
SimReport simulate(const Placement& q, const GameConfig& cfg, std::size_t fragments,
                   std::uint64_t num_requests, std::uint64_t seed, unsigned workers = 0);

}  // namespace hetcache
