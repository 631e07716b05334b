#include "hetcache/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hetcache {
namespace {

void check_distribution(std::span<const double> v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty vector");
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": entries must be finite and non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTol)
    throw std::invalid_argument(std::string(what) + ": entries must sum to 1 (got " +
                                std::to_string(sum) + ")");
}

}  // namespace

void LibraryConfig::validate() const {
  if (num_files == 0) throw std::invalid_argument("num_files must be >= 1");
  if (file_size_bits == 0) throw std::invalid_argument("file_size_bits must be >= 1");
  if (fragments_per_file == 0) throw std::invalid_argument("fragments_per_file must be >= 1");
}

PopularityDist::PopularityDist(std::vector<double> probs) : probs_(std::move(probs)) {
  check_distribution(probs_, "popularity");
}

CoverageProfile::CoverageProfile(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  check_distribution(gamma_, "coverage profile");
}

Placement::Placement(std::vector<double> q, double cache_size)
    : q_(std::move(q)), cache_size_(cache_size) {
  if (!(cache_size_ >= 0.0) || !std::isfinite(cache_size_))
    throw std::invalid_argument("placement: cache size must be finite and >= 0");
  // Solver output may carry round-off just outside the box.
  constexpr double kBoxTol = 1e-12;
  for (double& x : q_) {
    if (!(x >= -kBoxTol && x <= 1.0 + kBoxTol))
      throw std::invalid_argument("placement: entries must lie in [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
  }
  if (total() > cache_size_ + kCapacityTol)
    throw std::invalid_argument("placement: sum(q) = " + std::to_string(total()) +
                                " exceeds cache size " + std::to_string(cache_size_));
}

double Placement::total() const { return std::accumulate(q_.begin(), q_.end(), 0.0); }

double Placement::min() const {
  if (q_.empty()) throw std::invalid_argument("placement: empty");
  return *std::min_element(q_.begin(), q_.end());
}

double Placement::max() const {
  if (q_.empty()) throw std::invalid_argument("placement: empty");
  return *std::max_element(q_.begin(), q_.end());
}

Placement Placement::uniform(std::size_t num_files, double cache_size) {
  if (num_files == 0) throw std::invalid_argument("placement: num_files must be >= 1");
  const double level = std::min(1.0, cache_size / static_cast<double>(num_files));
  return Placement(std::vector<double>(num_files, level), cache_size);
}

void GameConfig::validate() const {
  library.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (popularity.size() != library.num_files)
    throw std::invalid_argument("popularity has " + std::to_string(popularity.size()) +
                                " entries, library has " + std::to_string(library.num_files));
  if (!std::isfinite(cache_size)) throw std::invalid_argument("cache_size must be finite");
}

GameConfig GameConfig::with_alpha(double a) const {
  GameConfig copy = *this;
  copy.alpha = a;
  return copy;
}

PopularityDist zipf_popularity(std::size_t num_files, double exponent) {
  if (num_files == 0) throw std::invalid_argument("zipf: num_files must be >= 1");
  if (!(exponent >= 0.0) || !std::isfinite(exponent))
    throw std::invalid_argument("zipf: exponent must be finite and >= 0");
  std::vector<double> w(num_files);
  for (std::size_t j = 0; j < num_files; ++j)
    w[j] = std::pow(static_cast<double>(j + 1), -exponent);
  // Smallest terms first keeps the rounding error of the normalizer low.
  double norm = 0.0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) norm += *it;
  for (double& x : w) x /= norm;
  return PopularityDist(std::move(w));
}

std::vector<std::size_t> quantize_placement(const Placement& q, std::size_t fragments,
                                            std::span<const double> popularity) {
  if (fragments == 0) throw std::invalid_argument("quantize: fragments must be >= 1");
  if (!popularity.empty() && popularity.size() != q.size())
    throw std::invalid_argument("quantize: popularity size does not match placement");

  const auto n = static_cast<double>(fragments);
  const std::size_t N = q.size();
  std::vector<std::size_t> m(N);
  for (std::size_t j = 0; j < N; ++j)
    m[j] = static_cast<std::size_t>(std::floor(q[j] * n + 0.5));

  const auto capacity = static_cast<std::size_t>(std::floor(q.cache_size() * n + 1e-9));
  std::size_t used = std::accumulate(m.begin(), m.end(), std::size_t{0});
  if (used <= capacity) return m;

  // Least popular first; equal popularity falls back to the higher index.
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (popularity.empty()) {
    std::reverse(order.begin(), order.end());
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (popularity[a] != popularity[b]) return popularity[a] < popularity[b];
      return a > b;
    });
  }

  for (std::size_t j : order) {
    if (used <= capacity) break;
    if (m[j] > 0 && static_cast<double>(m[j]) > q[j] * n) {
      --m[j];
      --used;
    }
  }
  // Only reachable when sum(q) sits inside the capacity slack.
  for (std::size_t j : order) {
    while (used > capacity && m[j] > 0) {
      --m[j];
      --used;
    }
  }
  return m;
}

Placement dequantize_placement(std::span<const std::size_t> packets, std::size_t fragments,
                               double cache_size) {
  if (fragments == 0) throw std::invalid_argument("dequantize: fragments must be >= 1");
  std::vector<double> q(packets.size());
  for (std::size_t j = 0; j < packets.size(); ++j) {
    if (packets[j] > fragments) throw std::invalid_argument("dequantize: m_j exceeds n");
    q[j] = static_cast<double>(packets[j]) / static_cast<double>(fragments);
  }
  return Placement(std::move(q), cache_size);
}

}  // namespace hetcache
