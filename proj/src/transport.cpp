#include "mogs/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mogs {

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> r(rows, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r[i] += (*this)(i, j);
  return r;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> c(cols, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) c[j] += (*this)(i, j);
  return c;
}

double TransportPlan::total_mass() const {
  double t = 0.0;
  for (double v : mass) t += v;
  return t;
}

namespace {

constexpr double kReducedCostTol = 1e-9;

struct BasisCell {
  int row;
  int col;
  double mass;
};

// Node ids: rows are 0..m-1, columns are m..m+n-1.
struct Tree {
  int m, n;
  std::vector<std::vector<int>> adjacency;  // node -> indices into basis

  explicit Tree(int m_, int n_) : m(m_), n(n_), adjacency(m_ + n_) {}

  void rebuild(const std::vector<BasisCell>& basis) {
    for (auto& a : adjacency) a.clear();
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
      adjacency[basis[k].row].push_back(k);
      adjacency[m + basis[k].col].push_back(k);
    }
  }
};

}  // namespace

TransportSolution solve_transport(const std::vector<double>& supply,
                                  const std::vector<double>& demand,
                                  const std::vector<double>& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0) throw std::invalid_argument("empty transport marginals");
  if (cost.size() != static_cast<std::size_t>(m) * n) {
    throw std::invalid_argument("cost matrix shape mismatch");
  }
  double total_supply = 0.0, total_demand = 0.0;
  for (double v : supply) total_supply += v;
  for (double v : demand) total_demand += v;
  if (std::abs(total_supply - total_demand) > 1e-9 * (1.0 + std::abs(total_supply))) {
    throw std::invalid_argument("unbalanced transportation problem");
  }

  double cost_scale = 0.0;
  for (double c : cost) cost_scale = std::max(cost_scale, std::abs(c));
  const double tol = kReducedCostTol * (1.0 + cost_scale);

  // Northwest-corner start: a staircase of m+n-1 basic cells (a spanning tree).
  std::vector<BasisCell> basis;
  basis.reserve(m + n - 1);
  {
    std::vector<double> a = supply, b = demand;
    int i = 0, j = 0;
    while (true) {
      double q = std::min(a[i], b[j]);
      basis.push_back({i, j, q});
      a[i] -= q;
      b[j] -= q;
      if (i == m - 1 && j == n - 1) break;
      if (a[i] <= b[j] && i < m - 1) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  Tree tree(m, n);
  std::vector<double> u(m), v(n);
  std::vector<char> u_set(m), v_set(n);
  std::vector<int> stack;

  const long max_pivots = 2000 + 200L * (m + n);
  bool blands_rule = false;

  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots) {
      if (!blands_rule) {
        blands_rule = true;  // anti-cycling fallback
      } else {
        throw std::runtime_error("transportation simplex failed to converge");
      }
    }

    tree.rebuild(basis);

    // Potentials u_i + v_j = c_ij on basic cells, rooted at row 0.
    std::fill(u_set.begin(), u_set.end(), 0);
    std::fill(v_set.begin(), v_set.end(), 0);
    u[0] = 0.0;
    u_set[0] = 1;
    stack.assign(1, 0);
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (int k : tree.adjacency[node]) {
        const BasisCell& cell = basis[k];
        if (node < m) {
          if (!v_set[cell.col]) {
            v[cell.col] = cost[static_cast<std::size_t>(cell.row) * n + cell.col] - u[cell.row];
            v_set[cell.col] = 1;
            stack.push_back(m + cell.col);
          }
        } else {
          if (!u_set[cell.row]) {
            u[cell.row] = cost[static_cast<std::size_t>(cell.row) * n + cell.col] - v[cell.col];
            u_set[cell.row] = 1;
            stack.push_back(cell.row);
          }
        }
      }
    }

    // Entering cell: most negative reduced cost, or the first negative one
    // once the anti-cycling fallback is active.
    int enter_row = -1, enter_col = -1;
    double best = -tol;
    std::vector<char> is_basic(static_cast<std::size_t>(m) * n, 0);
    for (const BasisCell& cell : basis) is_basic[static_cast<std::size_t>(cell.row) * n + cell.col] = 1;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (is_basic[static_cast<std::size_t>(i) * n + j]) continue;
        double reduced = cost[static_cast<std::size_t>(i) * n + j] - u[i] - v[j];
        if (reduced < best) {
          best = reduced;
          enter_row = i;
          enter_col = j;
          if (blands_rule) goto entering_chosen;
        }
      }
    }
  entering_chosen:
    if (enter_row < 0) break;  // optimal

    // Path in the basis tree from the entering cell's row to its column.
    std::vector<int> parent_edge(m + n, -1);
    std::vector<int> parent_node(m + n, -1);
    std::vector<char> seen(m + n, 0);
    stack.assign(1, enter_row);
    seen[enter_row] = 1;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      if (node == m + enter_col) break;
      for (int k : tree.adjacency[node]) {
        const BasisCell& cell = basis[k];
        int next = (node < m) ? m + cell.col : cell.row;
        if (!seen[next]) {
          seen[next] = 1;
          parent_edge[next] = k;
          parent_node[next] = node;
          stack.push_back(next);
        }
      }
    }
    if (!seen[m + enter_col]) throw std::runtime_error("transport basis lost tree connectivity");

    // Cells along the cycle, starting with the one sharing the entering column.
    std::vector<int> cycle;
    for (int node = m + enter_col; node != enter_row; node = parent_node[node]) {
      cycle.push_back(parent_edge[node]);
    }
    // cycle[0] is adjacent to the entering column: positions 0, 2, 4, ... lose mass.
    double theta = std::numeric_limits<double>::infinity();
    int leave_pos = -1;
    for (int p = 0; p < static_cast<int>(cycle.size()); p += 2) {
      if (basis[cycle[p]].mass < theta) {
        theta = basis[cycle[p]].mass;
        leave_pos = p;
      }
    }
    for (int p = 0; p < static_cast<int>(cycle.size()); ++p) {
      basis[cycle[p]].mass += (p % 2 == 0) ? -theta : theta;
    }
    int leave_edge = cycle[leave_pos];
    basis[leave_edge] = {enter_row, enter_col, theta};
  }

  TransportSolution out;
  out.plan.rows = m;
  out.plan.cols = n;
  out.plan.mass.assign(static_cast<std::size_t>(m) * n, 0.0);
  for (const BasisCell& cell : basis) {
    out.plan.mass[static_cast<std::size_t>(cell.row) * n + cell.col] += std::max(cell.mass, 0.0);
  }
  out.cost = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      out.cost += cost[static_cast<std::size_t>(i) * n + j] * out.plan(i, j);
  return out;
}

}  // namespace mogs
