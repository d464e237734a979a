#pragma once

#include <vector>

namespace mogs {

// Feasible transport plan between two finitely supported measures: masses
// mu(i, j) with row sums equal to the source weights and column sums equal to
// the target weights.
struct TransportPlan {
  int rows = 0;
  int cols = 0;
  std::vector<double> mass;  // row-major, rows*cols

  double operator()(int i, int j) const { return mass[static_cast<std::size_t>(i) * cols + j]; }

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  double total_mass() const;
};

// Minimum-cost transportation problem
//   min sum_ij cost(i,j) * mu(i,j)   s.t.  mu >= 0, row sums = supply,
//                                          column sums = demand
// solved by the classical spanning-tree (MODI) simplex on the bipartite
// structure. supply and demand must balance. cost is row-major.
struct TransportSolution {
  double cost = 0.0;
  TransportPlan plan;
};

TransportSolution solve_transport(const std::vector<double>& supply,
                                  const std::vector<double>& demand,
                                  const std::vector<double>& cost);

}  // namespace mogs
