#include <gtest/gtest.h>

#include <random>

#include "hetcache/simplex.hpp"

namespace hetcache::lp {
namespace {

TEST(Simplex, TextbookProblem) {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18.
  Problem p(3, 2);
  p.objective = {3, 5};
  p.at(0, 0) = 1;
  p.at(1, 1) = 2;
  p.at(2, 0) = 3;
  p.at(2, 1) = 2;
  p.rhs = {4, 12, 18};
  const auto s = maximize(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.x[0], 2.0, 1e-12);
  EXPECT_NEAR(s.x[1], 6.0, 1e-12);
  EXPECT_NEAR(s.objective, 36.0, 1e-12);
  EXPECT_NEAR(s.gap(), 0.0, 1e-12);
}

TEST(Simplex, UpperBoundsWithoutRows) {
  Problem p(1, 3);
  p.objective = {1, 2, -1};
  p.upper = {1, 0.25, 5};
  p.at(0, 0) = 1;
  p.at(0, 1) = 1;
  p.at(0, 2) = 1;
  p.rhs = {10};
  const auto s = maximize(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_DOUBLE_EQ(s.x[0], 1.0);
  EXPECT_DOUBLE_EQ(s.x[1], 0.25);
  EXPECT_DOUBLE_EQ(s.x[2], 0.0);
  EXPECT_NEAR(s.objective, 1.5, 1e-15);
}

TEST(Simplex, Unbounded) {
  Problem p(1, 2);
  p.objective = {1, 1};
  p.at(0, 0) = 1;
  p.at(0, 1) = -1;
  p.rhs = {1};
  EXPECT_EQ(maximize(p).status, Status::unbounded);
}

TEST(Simplex, BealeCyclingExample) {
  // Cycles under the textbook Dantzig rule without anti-cycling.
  Problem p(3, 4);
  p.objective = {0.75, -20, 0.5, -6};
  const double rows[3][4] = {{0.25, -8, -1, 9}, {0.5, -12, -0.5, 3}, {0, 0, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) p.at(i, j) = rows[i][j];
  p.rhs = {0, 0, 1};
  Options opt;
  opt.bland_after_degenerate = 2;
  const auto s = maximize(p, opt);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.objective, 1.25, 1e-12);
}

TEST(Simplex, RejectsMalformedProblems) {
  Problem p(1, 1);
  p.rhs = {-1};
  EXPECT_THROW(maximize(p), std::invalid_argument);
  Problem q(1, 1);
  q.upper = {-0.5};
  EXPECT_THROW(maximize(q), std::invalid_argument);
  Problem r(1, 1);
  r.objective.push_back(1.0);
  EXPECT_THROW(maximize(r), std::invalid_argument);
}

TEST(Simplex, IterationLimitReported) {
  Problem p(3, 2);
  p.objective = {3, 5};
  p.at(0, 0) = 1;
  p.at(1, 1) = 2;
  p.at(2, 0) = 3;
  p.at(2, 1) = 2;
  p.rhs = {4, 12, 18};
  Options opt;
  opt.max_iterations = 1;
  EXPECT_EQ(maximize(p, opt).status, Status::iteration_limit);
}

// Weak duality certifies every random solve: the dual bound is computed
// from the original data, not from the tableau.
TEST(Simplex, RandomProblemsCloseTheDualityGap) {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 2.0);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t m = 1 + rng() % 12;
    const std::size_t n = 1 + rng() % 15;
    Problem p(m, n);
    for (auto& c : p.objective) c = u(rng);
    for (auto& a : p.matrix) a = rng() % 4 == 0 ? 0.0 : u(rng);
    for (auto& b : p.rhs) b = rng() % 5 == 0 ? 0.0 : pos(rng);
    for (auto& ub : p.upper) ub = pos(rng);
    const auto s = maximize(p);
    ASSERT_EQ(s.status, Status::optimal) << rep;
    EXPECT_LE(s.max_violation, 1e-9);
    EXPECT_NEAR(s.gap(), 0.0, 1e-9) << rep;
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_GE(s.x[j], 0.0);
      EXPECT_LE(s.x[j], p.upper[j]);
    }
  }
}

}  // namespace
}  // namespace hetcache::lp
