#pragma once

// Dense bounded-variable primal simplex for
//
//   maximize  c^T x   subject to  A x <= b,  0 <= x <= u,
//
// with b >= 0, so the all-slack basis is a feasible start. Upper bounds are
// handled implicitly (nonbasic columns sit at either bound), which keeps the
// tableau at one row per general constraint.
//
// Pricing is Dantzig's rule; after a run of degenerate pivots the solver
// switches to Bland's rule until the objective moves again.

#include <cstddef>
#include <limits>
#include <vector>

namespace hetcache::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> objective;  // cols
  std::vector<double> matrix;     // rows * cols, row-major
  std::vector<double> rhs;        // rows, all >= 0
  std::vector<double> upper;      // cols, kInf for no bound

  Problem(std::size_t num_rows, std::size_t num_cols);
  double& at(std::size_t row, std::size_t col) { return matrix[row * cols + col]; }
  double at(std::size_t row, std::size_t col) const { return matrix[row * cols + col]; }
};

enum class Status { optimal, iteration_limit, unbounded };

struct Options {
  std::size_t max_iterations = 200'000;
  double pivot_tol = 1e-10;
  double optimality_tol = 1e-11;
  std::size_t bland_after_degenerate = 64;
};

struct Solution {
  Status status = Status::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  /// Upper bound on the optimum from the final row duals (weak duality),
  /// evaluated against the original data.
  double dual_bound = kInf;
  std::vector<double> duals;
  double max_violation = 0.0;
  std::size_t iterations = 0;

  double gap() const { return dual_bound - objective; }
};

/// Throws std::invalid_argument on malformed data (sizes, negative rhs,
/// negative upper bounds).
Solution maximize(const Problem& problem, const Options& options = {});

}  // namespace hetcache::lp
