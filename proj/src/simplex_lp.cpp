#include "mogs/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mogs {

void LinearProgram::add_row(std::vector<double> coef, Relation relation, double rhs) {
  if (static_cast<int>(coef.size()) != num_vars) {
    throw std::invalid_argument("constraint arity mismatch");
  }
  rows.push_back({std::move(coef), relation, rhs});
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedTol = 1e-10;

struct Tableau {
  int m = 0;          // constraint rows
  int cols = 0;       // structural + slack + artificial columns
  int art_begin = 0;  // first artificial column
  std::vector<double> a;  // m x cols
  std::vector<double> rhs;
  std::vector<int> basis;

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  void pivot(int row, int col) {
    double p = at(row, col);
    for (int c = 0; c < cols; ++c) at(row, c) /= p;
    rhs[row] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == row) continue;
      double factor = at(r, col);
      if (factor == 0.0) continue;
      for (int c = 0; c < cols; ++c) at(r, c) -= factor * at(row, c);
      rhs[r] -= factor * rhs[row];
      at(r, col) = 0.0;
    }
    basis[row] = col;
  }
};

// Runs the simplex on the given objective (maximization, reduced costs kept
// separately). Artificial columns never enter the basis; they only leave.
// Returns false on unboundedness.
bool run_simplex(Tableau& t, std::vector<double>& obj, double& obj_value) {
  const long bland_after = 500 + 50L * (t.m + t.cols);
  for (long iter = 0;; ++iter) {
    const bool bland = iter > bland_after;

    // Reduced costs: obj row already maintained by eliminations below.
    int enter = -1;
    double best = kReducedTol;
    int limit = t.art_begin;
    for (int c = 0; c < limit; ++c) {
      double rc = obj[c];
      if (rc > best) {
        if (bland) {
          enter = c;
          break;
        }
        best = rc;
        enter = c;
      }
    }
    if (enter < 0) return true;  // optimal

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.m; ++r) {
      double coef = t.at(r, enter);
      if (coef > kPivotTol) {
        double ratio = t.rhs[r] / coef;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || t.basis[r] < t.basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) return false;  // unbounded

    t.pivot(leave, enter);
    // Eliminate the entering column from the objective row.
    double factor = obj[enter];
    if (factor != 0.0) {
      for (int c = 0; c < t.cols; ++c) obj[c] -= factor * t.at(leave, c);
      obj_value += factor * t.rhs[leave];
      obj[enter] = 0.0;
    }
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());

  // Count slack columns.
  int num_slack = 0;
  for (const auto& row : lp.rows) {
    if (row.relation != LinearProgram::Relation::Equal) ++num_slack;
  }

  Tableau t;
  t.m = m;
  t.art_begin = n + num_slack;
  t.cols = t.art_begin + m;  // one artificial per row; unused ones stay zero
  t.a.assign(static_cast<std::size_t>(m) * t.cols, 0.0);
  t.rhs.resize(m);
  t.basis.assign(m, -1);

  int slack_idx = n;
  std::vector<double> phase1(t.cols, 0.0);
  double phase1_value = 0.0;

  for (int r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) t.at(r, c) = sign * row.coef[c];
    t.rhs[r] = sign * row.rhs;

    auto rel = row.relation;
    if (sign < 0.0) {
      if (rel == LinearProgram::Relation::LessEqual) rel = LinearProgram::Relation::GreaterEqual;
      else if (rel == LinearProgram::Relation::GreaterEqual) rel = LinearProgram::Relation::LessEqual;
    }

    if (rel == LinearProgram::Relation::LessEqual) {
      t.at(r, slack_idx) = 1.0;
      t.basis[r] = slack_idx;
      ++slack_idx;
    } else if (rel == LinearProgram::Relation::GreaterEqual) {
      t.at(r, slack_idx) = -1.0;
      ++slack_idx;
    }

    if (t.basis[r] < 0) {
      int art = t.art_begin + r;
      t.at(r, art) = 1.0;
      t.basis[r] = art;
      // Phase-1 objective: maximize -sum(artificials); eliminate basic columns.
      for (int c = 0; c < t.cols; ++c) phase1[c] += t.at(r, c);
      phase1_value -= t.rhs[r];
    }
  }
  // phase1 currently holds sum over artificial rows; maximize -(sum) means
  // reduced costs start as +row sums for nonbasic columns.
  for (int c = t.art_begin; c < t.cols; ++c) phase1[c] = 0.0;

  LpSolution sol;

  bool any_artificial = false;
  for (int r = 0; r < m; ++r) any_artificial |= t.basis[r] >= t.art_begin;

  if (any_artificial) {
    if (!run_simplex(t, phase1, phase1_value)) {
      throw std::runtime_error("phase-1 simplex unbounded (internal error)");
    }
    if (phase1_value < -1e-7) {
      sol.status = LpSolution::Status::Infeasible;
      return sol;
    }
    // Drive any zero-level artificial out of the basis.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < t.art_begin) continue;
      int col = -1;
      for (int c = 0; c < t.art_begin; ++c) {
        if (std::abs(t.at(r, c)) > kPivotTol) {
          col = c;
          break;
        }
      }
      if (col >= 0) t.pivot(r, col);
      // else: redundant row; harmless to leave the artificial basic at zero.
    }
  }

  // Phase 2.
  std::vector<double> obj(t.cols, 0.0);
  double obj_value = 0.0;
  for (int c = 0; c < n; ++c) obj[c] = lp.objective[c];
  for (int r = 0; r < m; ++r) {
    int b = t.basis[r];
    double factor = obj[b];
    if (factor != 0.0) {
      for (int c = 0; c < t.cols; ++c) obj[c] -= factor * t.at(r, c);
      obj_value += factor * t.rhs[r];
      obj[b] = 0.0;
    }
  }
  if (!run_simplex(t, obj, obj_value)) {
    sol.status = LpSolution::Status::Unbounded;
    return sol;
  }

  sol.status = LpSolution::Status::Optimal;
  sol.value = obj_value;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < n) sol.x[t.basis[r]] = t.rhs[r];
  }
  return sol;
}

MaximinResult maximin_strategy(const std::vector<double>& payoff, int rows, int cols) {
  // Shift payoffs positive so the game value variable can stay nonnegative.
  double lo = 0.0;
  for (double v : payoff) lo = std::min(lo, v);
  const double shift = 1.0 - lo;

  LinearProgram lp;
  lp.num_vars = rows + 1;  // p_0..p_{rows-1}, v
  lp.objective.assign(lp.num_vars, 0.0);
  lp.objective[rows] = 1.0;

  for (int c = 0; c < cols; ++c) {
    std::vector<double> coef(lp.num_vars, 0.0);
    for (int r = 0; r < rows; ++r) coef[r] = payoff[static_cast<std::size_t>(r) * cols + c] + shift;
    coef[rows] = -1.0;
    lp.add_row(std::move(coef), LinearProgram::Relation::GreaterEqual, 0.0);
  }
  {
    std::vector<double> coef(lp.num_vars, 0.0);
    for (int r = 0; r < rows; ++r) coef[r] = 1.0;
    lp.add_row(std::move(coef), LinearProgram::Relation::Equal, 1.0);
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal) {
    throw std::runtime_error("maximin LP failed to solve");
  }

  MaximinResult out;
  out.strategy.assign(sol.x.begin(), sol.x.begin() + rows);
  double total = 0.0;
  for (double& w : out.strategy) {
    w = std::max(0.0, w);
    total += w;
  }
  for (double& w : out.strategy) w /= total;
  out.value = sol.value - shift;
  return out;
}

}  // namespace mogs
