#pragma once

#include <vector>

namespace mogs {

// Small dense linear programs in the form
//   maximize c.x   subject to  a.x (<=|=|>=) b per row,  x >= 0,
// solved by the two-phase primal simplex with a Bland anti-cycling fallback.
// Meant for the game-sized problems in this library (tens of variables).
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;

  enum class Relation { LessEqual, Equal, GreaterEqual };
  struct Row {
    std::vector<double> coef;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
  };
  std::vector<Row> rows;

  void add_row(std::vector<double> coef, Relation relation, double rhs);
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Optimal;
  double value = 0.0;
  std::vector<double> x;
};

LpSolution solve_lp(const LinearProgram& lp);

// Mixed strategy maximizing the worst-case row payoff of the matrix (row
// player best guarantee): max_p min_c sum_r p_r payoff[r][c].
struct MaximinResult {
  std::vector<double> strategy;
  double value = 0.0;
};

MaximinResult maximin_strategy(const std::vector<double>& payoff, int rows, int cols);

}  // namespace mogs
