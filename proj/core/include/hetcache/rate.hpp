#pragma once

// Average backhaul rates in normalized file units: the expected fraction of
// a requested file that the MBS has to send over the backhaul.

#include <cstddef>
#include <span>
#include <vector>

#include "hetcache/model.hpp"

namespace hetcache {

/// Request distribution induced by the adversarial users.
class AdversaryStrategy {
 public:
  explicit AdversaryStrategy(std::vector<double> induced);

  /// Empirical distribution of a request vector (one file index per user).
  static AdversaryStrategy from_requests(std::span<const std::size_t> requests,
                                         std::size_t num_files);
  static AdversaryStrategy point_mass(std::size_t file, std::size_t num_files);

  std::size_t size() const { return induced_.size(); }
  std::span<const double> induced() const { return induced_; }

 private:
  std::vector<double> induced_;
};

/// Expected per-request deficit of a file cached at fraction q:
/// sum_d gamma_d * max(1 - d q, 0).
double coverage_deficit(double q, const CoverageProfile& gamma);

double legit_rate(const Placement& q, const PopularityDist& p, const CoverageProfile& gamma);

double adversary_rate(const Placement& q, const CoverageProfile& gamma,
                      const AdversaryStrategy& strategy);

/// Adversary rate under the follower's best response (all requests on the
/// least cached file).
double best_response_adversary_rate(const Placement& q, const CoverageProfile& gamma);

RateBreakdown total_rate(double alpha, double r_legit, double r_adv);

/// Legitimate, best-response adversarial, and total rate of a placement.
RateBreakdown evaluate_rates(const Placement& q, const GameConfig& cfg);

}  // namespace hetcache
