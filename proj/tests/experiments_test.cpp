#include <gtest/gtest.h>

#include <sstream>

#include "hetcache/experiments.hpp"

namespace hetcache {
namespace {

ExperimentSpec quick_spec(ExperimentKind kind) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.gamma_samples = 200'000;
  spec.requests = 20'000;
  return spec;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Grid, RangeAndList) {
  const auto g = parse_grid("0:1:0.25");
  EXPECT_EQ(g, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(parse_grid("0:1:0.01").size(), 101u);
  EXPECT_DOUBLE_EQ(parse_grid("0:1:0.01")[7], 0.07);
  EXPECT_EQ(parse_grid("45,50, 55,60"), (std::vector<double>{45, 50, 55, 60}));
  EXPECT_EQ(parse_grid("0.3"), (std::vector<double>{0.3}));
  EXPECT_THROW(parse_grid("0:1"), ConfigError);
  EXPECT_THROW(parse_grid("1:0:0.1"), ConfigError);
  EXPECT_THROW(parse_grid("0:1:0"), ConfigError);
  EXPECT_THROW(parse_grid("a,b"), ConfigError);
  EXPECT_THROW(parse_grid("1,,2"), ConfigError);
}

TEST(ExperimentSpec, ResolvesDefaultsAndValidatesGrids) {
  auto spec = quick_spec(ExperimentKind::sweep_r).resolved();
  EXPECT_EQ(spec.alpha_grid.size(), 101u);
  EXPECT_EQ(spec.r_grid, (std::vector<double>{45, 50, 55, 60}));
  EXPECT_EQ(quick_spec(ExperimentKind::sweep_cache).resolved().cache_grid,
            (std::vector<double>{10, 20, 30, 40}));
  EXPECT_EQ(quick_spec(ExperimentKind::placement).resolved().cache_grid, (std::vector<double>{20}));

  auto bad = quick_spec(ExperimentKind::sweep_alpha);
  bad.alpha_grid = {0.5, 0.2};
  EXPECT_THROW(bad.resolved(), ConfigError);
  bad.alpha_grid = {0.0, 1.5};
  EXPECT_THROW(bad.resolved(), ConfigError);
  bad = quick_spec(ExperimentKind::sweep_r);
  bad.r_grid = {30.0};
  EXPECT_THROW(bad.resolved(), ConfigError);
  bad = quick_spec(ExperimentKind::sweep_cache);
  bad.cache_grid = {200.0};
  EXPECT_THROW(bad.resolved(), ConfigError);
  bad = quick_spec(ExperimentKind::thresholds);
  bad.alpha_grid = {0.0, 0.05, 0.1};
  EXPECT_THROW(bad.resolved(), ConfigError);
  EXPECT_EQ(*parse_experiment_kind("sweep-cache"), ExperimentKind::sweep_cache);
  EXPECT_FALSE(parse_experiment_kind("plot"));
}

TEST(SweepAlpha, EndpointsAndSandwich) {
  auto spec = quick_spec(ExperimentKind::sweep_alpha);
  spec.alpha_grid = {0.0, 0.5, 1.0};
  const auto rows = run_sweep_alpha(spec);
  ASSERT_EQ(rows.size(), 3u);
  const auto resolved = spec.resolved();
  const auto game = game_config_of(resolved.config, coverage_of(resolved.config, spec.gamma_samples));
  EXPECT_NEAR(rows[0].equilibrium.r_total,
              evaluate_rates(no_adversary_placement(game), game.with_alpha(0.0)).r_total, 1e-6);
  EXPECT_NEAR(rows[2].equilibrium.r_total, worst_case_rate(game.with_alpha(1.0)), 1e-6);
  for (const auto& r : rows) {
    EXPECT_LE(r.equilibrium.r_total, r.r_no_adversary_placement + 1e-9);
    EXPECT_LE(r.equilibrium.r_total, r.r_uniform + 1e-9);
    EXPECT_EQ(r.status, SolverStatus::optimal);
  }
  std::ostringstream out;
  write_sweep_csv(out, rows);
  EXPECT_EQ(first_line(out.str()),
            "sbs_radius_m,cache_size,alpha,R_total,R_legit,R_adv,R_no_adversary_placement,"
            "R_uniform,j_star,status");
  EXPECT_NE(out.str().find("\n45.000000,20.000000,0.500000,"), std::string::npos);
}

TEST(SweepR, OneBlockPerRadius) {
  auto spec = quick_spec(ExperimentKind::sweep_r);
  spec.alpha_grid = {0.0, 1.0};
  spec.r_grid = {45.0, 60.0};
  const auto rows = run_sweep_r(spec);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].sbs_radius_m, 45.0);
  EXPECT_EQ(rows[3].sbs_radius_m, 60.0);
  EXPECT_LT(rows[2].equilibrium.r_total, rows[0].equilibrium.r_total);
}

TEST(SweepCache, LargerCacheLowersRates) {
  auto spec = quick_spec(ExperimentKind::sweep_cache);
  spec.alpha_grid = {0.5};
  spec.cache_grid = {10.0, 40.0};
  const auto rows = run_sweep_cache(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LT(rows[1].equilibrium.r_total, rows[0].equilibrium.r_total);
}

TEST(Placement, CsvSchema) {
  const auto spec = quick_spec(ExperimentKind::placement);
  const auto r = run_placement(spec);
  std::ostringstream out;
  write_equilibrium_csv(out, {0.0}, {r});
  const auto header = first_line(out.str());
  EXPECT_EQ(header.substr(0, 38), "alpha,R_total,R_legit,R_adv,j_star,q_1");
  EXPECT_NE(header.find(",q_200"), std::string::npos);
  EXPECT_NE(out.str().find("\n0.000000,"), std::string::npos);
}

TEST(Thresholds, TrajectoriesAndSummary) {
  auto spec = quick_spec(ExperimentKind::thresholds);
  const auto report = run_thresholds(spec);
  ASSERT_EQ(report.rows.size(), 101u);
  const auto& first = report.rows.front();
  EXPECT_NEAR(first.q_max, 1.0, 1e-9);
  EXPECT_NEAR(first.q_min, 0.0, 1e-9);
  const auto& last = report.rows.back();
  EXPECT_NEAR(last.q_min, 0.1, 1e-9);
  EXPECT_NEAR(last.q_max, 0.1, 1e-9);
  EXPECT_NEAR(last.q_mu, 0.1, 1e-9);
  EXPECT_EQ(last.mu, 199u);
  ASSERT_TRUE(report.thresholds.branching);
  ASSERT_TRUE(report.thresholds.gathering);
  const auto summary = thresholds_summary(report);
  EXPECT_NE(summary.find("alpha_thr_1="), std::string::npos);
  EXPECT_NE(summary.find("alpha_thr_2="), std::string::npos);
  std::ostringstream out;
  write_thresholds_csv(out, report);
  EXPECT_EQ(first_line(out.str()), "alpha,q_min,q_max,q_mu,mu,R_total,status");
}

TEST(Simulate, RowsAgreeWithAnalytic) {
  auto spec = quick_spec(ExperimentKind::simulate);
  spec.alpha_grid = {0.0, 0.5, 1.0};
  spec.requests = 100'000;
  const auto rows = run_simulate(spec);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) EXPECT_LE(std::abs(r.z_score), 4.0) << r.alpha;
  std::ostringstream a, b;
  write_simulate_csv(a, rows);
  write_simulate_csv(b, run_simulate(spec));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(first_line(a.str()),
            "alpha,requests,mean,stderr,count_d1,count_d2,count_d3,count_d4,analytic,z_score");
}

TEST(Simulate, TinyCacheMissesEverything) {
  auto spec = quick_spec(ExperimentKind::simulate);
  spec.config.cache_size = 1e-9;
  spec.alpha_grid = {0.3};
  const auto rows = run_simulate(spec);
  EXPECT_EQ(rows[0].report.backhaul_fraction_mean, 1.0);
}

TEST(Gamma, RowsPerRadius) {
  auto spec = quick_spec(ExperimentKind::gamma);
  spec.r_grid = {45.0, 60.0};
  const auto rows = run_gamma(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].counts.num_users, 39270u);
  std::ostringstream out;
  write_gamma_csv(out, rows);
  EXPECT_EQ(first_line(out.str()),
            "sbs_radius_m,gamma_1,gamma_2,gamma_3,gamma_4,num_sbs,num_users,samples");
}

TEST(Slope, LeastSquares) {
  EXPECT_NEAR(least_squares_slope({45, 50, 55, 60}, {1.0, 0.8, 0.6, 0.4}), -0.04, 1e-15);
  EXPECT_THROW(least_squares_slope({1.0}, {2.0}), std::invalid_argument);
  EXPECT_THROW(least_squares_slope({1.0, 1.0}, {2.0, 3.0}), std::invalid_argument);
}

}  // namespace
}  // namespace hetcache
