#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hetcache/game.hpp"
#include "hetcache/simulator.hpp"
#include "oracles/frozen_values.hpp"

namespace hetcache {
namespace {

GameConfig reference_game(double alpha, double M = 20.0) {
  GameConfig cfg;
  cfg.alpha = alpha;
  cfg.library.num_files = 200;
  cfg.popularity = zipf_popularity(200, 0.7);
  const auto& g = oracle::kFrozenGamma[1].gamma;
  cfg.coverage = CoverageProfile({g.begin(), g.end()});
  cfg.cache_size = M;
  return cfg;
}

TEST(PacketAccounting, FullFileAtOneSbs) {
  const auto p = CodedPlacement::from_packets({10}, 10, 4);
  EXPECT_TRUE(packet_accounting_check(p, 1));
  EXPECT_EQ(p.mbs_reserve[0], 0u);
  EXPECT_EQ(p.coded_packets(0), 10u + 3u * 10u);
}

TEST(PacketAccounting, HalfFileConsumesReserve) {
  const auto p = CodedPlacement::from_packets({5}, 10, 4);
  EXPECT_TRUE(packet_accounting_check(p, 1));
  EXPECT_EQ(p.mbs_reserve[0], 5u);
}

TEST(PacketAccounting, ExhaustiveSmallCodes) {
  for (std::size_t n = 1; n <= 50; ++n) {
    std::vector<std::size_t> m(n + 1);
    std::iota(m.begin(), m.end(), std::size_t{0});
    const auto p = CodedPlacement::from_packets(m, n, 4);
    for (std::size_t d = 1; d <= 4; ++d) ASSERT_TRUE(packet_accounting_check(p, d)) << n << ' ' << d;
  }
}

TEST(PacketAccounting, DetectsBrokenReserve) {
  auto p = CodedPlacement::from_packets({3, 7}, 10, 4);
  p.mbs_reserve[1] = 1;
  EXPECT_FALSE(packet_accounting_check(p, 1));
  const auto q = CodedPlacement::from_packets({3}, 10, 2);
  EXPECT_FALSE(packet_accounting_check(q, 3));  // more SBSs than hold packets
  EXPECT_THROW(CodedPlacement::from_packets({11}, 10, 4), std::invalid_argument);
}

TEST(Simulate, EverythingCached) {
  GameConfig cfg = reference_game(0.5, 200.0);
  const auto r = simulate(Placement(std::vector<double>(200, 1.0), 200.0), cfg, 100, 5000, 1);
  EXPECT_EQ(r.backhaul_fraction_mean, 0.0);
  EXPECT_EQ(r.backhaul_fraction_stderr, 0.0);
}

TEST(Simulate, NothingCached) {
  const auto cfg = reference_game(0.3);
  const auto r = simulate(Placement(std::vector<double>(200, 0.0), 20.0), cfg, 100, 5000, 1);
  EXPECT_EQ(r.backhaul_fraction_mean, 1.0);
  EXPECT_EQ(std::accumulate(r.per_coverage_counts.begin(), r.per_coverage_counts.end(), std::uint64_t{0}),
            5000u);
}

TEST(Simulate, RejectsBadArguments) {
  const auto cfg = reference_game(0.3);
  const auto q = Placement::uniform(200, 20.0);
  EXPECT_THROW(simulate(q, cfg, 100, 0, 1), std::invalid_argument);
  EXPECT_THROW(simulate(q, cfg, 0, 10, 1), std::invalid_argument);
  EXPECT_THROW(simulate(Placement::uniform(10, 1.0), cfg, 100, 10, 1), std::invalid_argument);
}

TEST(Simulate, AgreesWithAnalyticRate) {
  const auto cfg = reference_game(0.5);
  const auto eq = equilibrium_placement(cfg);
  const std::size_t n = 100;
  const auto r = simulate(eq.q_star, cfg, n, 100'000, 12345);
  const auto m = quantize_placement(eq.q_star, n, cfg.popularity.probs());
  const double analytic = evaluate_rates(dequantize_placement(m, n, 20.0), cfg).r_total;
  EXPECT_LE(r.backhaul_fraction_stderr, 1.6e-3);
  EXPECT_LE(std::abs(r.backhaul_fraction_mean - analytic), 4 * r.backhaul_fraction_stderr);
  EXPECT_LE(std::abs(analytic - eq.rates.r_total), 4.0 / static_cast<double>(n));
  EXPECT_NEAR(static_cast<double>(r.adversary_requests) / 100'000.0, 0.5, 0.01);
}

TEST(Simulate, DeterministicAndPartitionIndependent) {
  const auto cfg = reference_game(0.4);
  const auto q = equilibrium_placement(cfg).q_star;
  const auto a = simulate(q, cfg, 100, 70'000, 99, 1);
  const auto b = simulate(q, cfg, 100, 70'000, 99, 3);
  EXPECT_EQ(a.backhaul_fraction_mean, b.backhaul_fraction_mean);
  EXPECT_EQ(a.backhaul_fraction_stderr, b.backhaul_fraction_stderr);
  EXPECT_EQ(a.per_coverage_counts, b.per_coverage_counts);
  const auto c = simulate(q, cfg, 100, 70'000, 100);
  EXPECT_NE(a.backhaul_fraction_mean, c.backhaul_fraction_mean);
}

TEST(Simulate, QuantizationGapWithinLipschitzBound) {
  for (double alpha : {0.0, 0.5, 1.0}) {
    for (std::size_t n : {10u, 37u, 100u}) {
      const auto cfg = reference_game(alpha);
      const auto eq = equilibrium_placement(cfg);
      const auto m = quantize_placement(eq.q_star, n, cfg.popularity.probs());
      const double quantized = evaluate_rates(dequantize_placement(m, n, 20.0), cfg).r_total;
      EXPECT_LE(std::abs(quantized - eq.rates.r_total), 4.0 / static_cast<double>(n)) << alpha << ' ' << n;
    }
  }
}

}  // namespace
}  // namespace hetcache
