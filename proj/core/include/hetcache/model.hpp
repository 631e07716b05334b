#pragma once

// Core domain types shared by every hetcache module.
//
// File indices are 0-based throughout the library. CSV writers convert to
// the 1-based numbering used in reports (file 1 is the most popular one).

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hetcache {

/// Tolerance used when checking that a probability vector sums to one.
inline constexpr double kProbabilitySumTol = 1e-9;

/// Slack allowed on the cache capacity constraint sum(q) <= M.
inline constexpr double kCapacityTol = 1e-6;

struct LibraryConfig {
  std::size_t num_files = 200;
  std::uint64_t file_size_bits = 8'000'000;  // reporting only
  std::size_t fragments_per_file = 100;

  void validate() const;
};

/// Request probabilities of legitimate users over the file library.
class PopularityDist {
 public:
  explicit PopularityDist(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t j) const { return probs_[j]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// gamma[d-1] is the probability that a user is covered by exactly d small
/// cells. Every user is covered by at least one.
class CoverageProfile {
 public:
  explicit CoverageProfile(std::vector<double> gamma);

  std::size_t max_coverage() const { return gamma_.size(); }
  /// Probability of being covered by exactly d SBSs, d in 1..S.
  double gamma(std::size_t d) const { return gamma_.at(d - 1); }
  std::span<const double> values() const { return gamma_; }

 private:
  std::vector<double> gamma_;
};

/// Fraction q_j = m_j / n of every file cached at each SBS.
class Placement {
 public:
  Placement(std::vector<double> q, double cache_size);

  std::size_t size() const { return q_.size(); }
  double operator[](std::size_t j) const { return q_[j]; }
  std::span<const double> values() const { return q_; }
  double cache_size() const { return cache_size_; }
  double total() const;
  double min() const;
  double max() const;

  static Placement uniform(std::size_t num_files, double cache_size);

 private:
  std::vector<double> q_;
  double cache_size_;
};

struct RateBreakdown {
  double r_legit = 0.0;
  double r_adv = 0.0;
  double r_total = 0.0;
};

/// Parameters of one leader/follower game instance. cache_size >= num_files
/// is accepted (the cache then holds the whole library).
struct GameConfig {
  double alpha = 0.0;
  LibraryConfig library;
  PopularityDist popularity{std::vector<double>{1.0}};
  CoverageProfile coverage{std::vector<double>{1.0}};
  double cache_size = 1.0;

  /// Throws std::invalid_argument on inconsistent dimensions or alpha
  /// outside [0, 1]. A non-positive cache size is left to the solver, which
  /// reports it as infeasible.
  void validate() const;
  GameConfig with_alpha(double a) const;
};

/// p_j proportional to 1 / j^z, j = 1..N, normalized by direct summation.
PopularityDist zipf_popularity(std::size_t num_files, double exponent);

/// Maps a fractional placement to integer packet counts m_j.
///
/// Rounds q_j * n to the nearest integer, then repairs any capacity
/// overshoot (sum m_j > floor(M n)) by taking one packet from rounded-up
/// files, least popular first. `popularity` fixes that order; when it is
/// empty the higher index is treated as less popular.
std::vector<std::size_t> quantize_placement(const Placement& q,
                                            std::size_t fragments,
                                            std::span<const double> popularity = {});

Placement dequantize_placement(std::span<const std::size_t> packets,
                               std::size_t fragments, double cache_size);

}  // namespace hetcache
