#include "hetcache/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace hetcache::lp {
namespace {

enum class ColState : unsigned char { basic, at_lower, at_upper };

class Tableau {
 public:
  Tableau(const Problem& p, const Options& opt)
      : p_(p),
        opt_(opt),
        m_(p.rows),
        width_(p.cols + p.rows),
        t_(m_ * width_, 0.0),
        reduced_(width_, 0.0),
        upper_(width_, kInf),
        state_(width_, ColState::at_lower),
        basis_(m_),
        xb_(p.rhs) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < p.cols; ++j) t_[i * width_ + j] = p.at(i, j);
      t_[i * width_ + p.cols + i] = 1.0;
      basis_[i] = p.cols + i;
      state_[p.cols + i] = ColState::basic;
    }
    std::copy(p.objective.begin(), p.objective.end(), reduced_.begin());
    std::copy(p.upper.begin(), p.upper.end(), upper_.begin());
  }

  Solution run() {
    Solution sol;
    std::size_t degenerate_run = 0;
    for (sol.iterations = 0; sol.iterations < opt_.max_iterations; ++sol.iterations) {
      const bool bland = degenerate_run >= opt_.bland_after_degenerate;
      const auto entering = price(bland);
      if (!entering) {
        sol.status = Status::optimal;
        return finish(std::move(sol));
      }
      const auto step = iterate(*entering, bland);
      if (!step) {
        sol.status = Status::unbounded;
        return finish(std::move(sol));
      }
      degenerate_run = *step <= opt_.pivot_tol ? degenerate_run + 1 : 0;
    }
    sol.status = Status::iteration_limit;
    return finish(std::move(sol));
  }

 private:
  double& cell(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }

  bool improving(std::size_t j) const {
    switch (state_[j]) {
      case ColState::at_lower: return reduced_[j] > opt_.optimality_tol && upper_[j] > 0.0;
      case ColState::at_upper: return reduced_[j] < -opt_.optimality_tol;
      case ColState::basic: return false;
    }
    return false;
  }

  std::optional<std::size_t> price(bool bland) const {
    std::optional<std::size_t> best;
    double best_score = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      if (!improving(j)) continue;
      if (bland) return j;
      const double score = std::abs(reduced_[j]);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Moves column e off its bound. Returns the step length, or nullopt when
  // the problem is unbounded along that direction.
  std::optional<double> iterate(std::size_t e, bool bland) {
    const double dir = state_[e] == ColState::at_lower ? 1.0 : -1.0;
    double step = upper_[e];
    std::optional<std::size_t> leave_row;
    double leave_alpha = 0.0;

    for (std::size_t i = 0; i < m_; ++i) {
      const double a = dir * cell(i, e);
      double limit;
      if (a > opt_.pivot_tol) {
        limit = std::max(xb_[i], 0.0) / a;
      } else if (a < -opt_.pivot_tol && std::isfinite(upper_[basis_[i]])) {
        limit = std::max(upper_[basis_[i]] - xb_[i], 0.0) / -a;
      } else {
        continue;
      }
      bool take = limit < step;
      if (!take && leave_row && limit == step) {
        take = bland ? basis_[i] < basis_[*leave_row] : std::abs(a) > std::abs(leave_alpha);
      }
      if (take) {
        step = limit;
        leave_row = i;
        leave_alpha = a;
      }
    }
    if (!std::isfinite(step)) return std::nullopt;

    for (std::size_t i = 0; i < m_; ++i) xb_[i] -= step * dir * cell(i, e);

    if (!leave_row) {
      state_[e] = state_[e] == ColState::at_lower ? ColState::at_upper : ColState::at_lower;
      return step;
    }

    const std::size_t r = *leave_row;
    const std::size_t leaving = basis_[r];
    state_[leaving] = leave_alpha > 0.0 ? ColState::at_lower : ColState::at_upper;
    const double entering_value = dir > 0.0 ? step : upper_[e] - step;
    pivot(r, e);
    basis_[r] = e;
    state_[e] = ColState::basic;
    xb_[r] = entering_value;
    return step;
  }

  void pivot(std::size_t r, std::size_t e) {
    double* row_r = &t_[r * width_];
    const double inv = 1.0 / row_r[e];
    for (std::size_t j = 0; j < width_; ++j) row_r[j] *= inv;
    row_r[e] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row_i = &t_[i * width_];
      const double f = row_i[e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row_i[j] -= f * row_r[j];
      row_i[e] = 0.0;
    }
    const double f = reduced_[e];
    for (std::size_t j = 0; j < width_; ++j) reduced_[j] -= f * row_r[j];
    reduced_[e] = 0.0;
  }

  Solution finish(Solution sol) const {
    const std::size_t n = p_.cols;
    sol.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (state_[j] == ColState::at_upper) sol.x[j] = upper_[j];
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n) sol.x[basis_[i]] = std::clamp(xb_[i], 0.0, upper_[basis_[i]]);

    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += p_.objective[j] * sol.x[j];

    // Slack reduced cost is -y_i.
    sol.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) sol.duals[i] = std::max(0.0, -reduced_[n + i]);

    double bound = 0.0;
    for (std::size_t i = 0; i < m_; ++i) bound += sol.duals[i] * p_.rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      double slack_cost = p_.objective[j];
      for (std::size_t i = 0; i < m_; ++i) slack_cost -= sol.duals[i] * p_.at(i, j);
      if (slack_cost > 0.0) bound += std::isfinite(p_.upper[j]) ? slack_cost * p_.upper[j] : kInf;
    }
    sol.dual_bound = bound;

    sol.max_violation = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += p_.at(i, j) * sol.x[j];
      sol.max_violation = std::max(sol.max_violation, lhs - p_.rhs[i]);
    }
    return sol;
  }

  const Problem& p_;
  const Options& opt_;
  std::size_t m_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<double> reduced_;
  std::vector<double> upper_;
  std::vector<ColState> state_;
  std::vector<std::size_t> basis_;
  std::vector<double> xb_;
};

}  // namespace

Problem::Problem(std::size_t num_rows, std::size_t num_cols)
    : rows(num_rows),
      cols(num_cols),
      objective(num_cols, 0.0),
      matrix(num_rows * num_cols, 0.0),
      rhs(num_rows, 0.0),
      upper(num_cols, kInf) {}

Solution maximize(const Problem& problem, const Options& options) {
  if (problem.objective.size() != problem.cols || problem.upper.size() != problem.cols ||
      problem.rhs.size() != problem.rows || problem.matrix.size() != problem.rows * problem.cols)
    throw std::invalid_argument("lp: inconsistent problem dimensions");
  for (double b : problem.rhs)
    if (!(b >= 0.0)) throw std::invalid_argument("lp: right-hand side must be non-negative");
  for (double u : problem.upper)
    if (!(u >= 0.0)) throw std::invalid_argument("lp: upper bounds must be non-negative");
  return Tableau(problem, options).run();
}

}  // namespace hetcache::lp
