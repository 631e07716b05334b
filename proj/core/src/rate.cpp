#include "hetcache/rate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetcache {
namespace {

double weighted_deficit(const Placement& q, std::span<const double> weights,
                        const CoverageProfile& gamma) {
  if (weights.size() != q.size())
    throw std::invalid_argument("rate: placement has " + std::to_string(q.size()) +
                                " files, weights have " + std::to_string(weights.size()));
  double sum = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (weights[j] != 0.0) sum += weights[j] * coverage_deficit(q[j], gamma);
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

AdversaryStrategy::AdversaryStrategy(std::vector<double> induced) : induced_(std::move(induced)) {
  // Same validation as a popularity vector.
  PopularityDist check(induced_);
}

AdversaryStrategy AdversaryStrategy::from_requests(std::span<const std::size_t> requests,
                                                   std::size_t num_files) {
  if (requests.empty()) throw std::invalid_argument("adversary strategy: no requests");
  std::vector<double> induced(num_files, 0.0);
  for (std::size_t j : requests) {
    if (j >= num_files) throw std::invalid_argument("adversary strategy: file index out of range");
    induced[j] += 1.0;
  }
  for (double& x : induced) x /= static_cast<double>(requests.size());
  return AdversaryStrategy(std::move(induced));
}

AdversaryStrategy AdversaryStrategy::point_mass(std::size_t file, std::size_t num_files) {
  if (file >= num_files) throw std::invalid_argument("adversary strategy: file index out of range");
  std::vector<double> induced(num_files, 0.0);
  induced[file] = 1.0;
  return AdversaryStrategy(std::move(induced));
}

double coverage_deficit(double q, const CoverageProfile& gamma) {
  const auto g = gamma.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = static_cast<double>(i + 1);
    sum += g[i] * std::max(1.0 - d * q, 0.0);
  }
  return sum;
}

double legit_rate(const Placement& q, const PopularityDist& p, const CoverageProfile& gamma) {
  return weighted_deficit(q, p.probs(), gamma);
}

double adversary_rate(const Placement& q, const CoverageProfile& gamma,
                      const AdversaryStrategy& strategy) {
  return weighted_deficit(q, strategy.induced(), gamma);
}

double best_response_adversary_rate(const Placement& q, const CoverageProfile& gamma) {
  return std::clamp(coverage_deficit(q.min(), gamma), 0.0, 1.0);
}

RateBreakdown total_rate(double alpha, double r_legit, double r_adv) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("total_rate: alpha outside [0, 1]");
  return {r_legit, r_adv, alpha * r_adv + (1.0 - alpha) * r_legit};
}

RateBreakdown evaluate_rates(const Placement& q, const GameConfig& cfg) {
  const double rl = legit_rate(q, cfg.popularity, cfg.coverage);
  const double ra = best_response_adversary_rate(q, cfg.coverage);
  return total_rate(cfg.alpha, rl, ra);
}

}  // namespace hetcache
