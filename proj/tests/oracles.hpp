// Test-only reference oracles, kept independent of the library's solver paths.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace test_oracle {

// Minimum-cost transportation value by exhaustive vertex enumeration: every
// basic feasible solution uses at most m+n-1 cells, so trying all cell subsets
// of that size covers every vertex of the transportation polytope.
inline double brute_force_transport(const std::vector<double>& supply,
                                    const std::vector<double>& demand,
                                    const std::vector<double>& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  const int cells = m * n;
  const int basis_size = m + n - 1;

  std::vector<int> chosen(basis_size);
  double best = std::numeric_limits<double>::infinity();

  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == basis_size) {
      // Solve the marginal equations restricted to the chosen cells.
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + n, basis_size);
      Eigen::VectorXd b(m + n);
      for (int i = 0; i < m; ++i) b(i) = supply[i];
      for (int j = 0; j < n; ++j) b(m + j) = demand[j];
      for (int k = 0; k < basis_size; ++k) {
        int i = chosen[k] / n;
        int j = chosen[k] % n;
        a(i, k) = 1.0;
        a(m + j, k) = 1.0;
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
      if (qr.rank() < basis_size) return;  // not a tree: no unique solution
      Eigen::VectorXd x = qr.solve(b);
      if ((a * x - b).lpNorm<Eigen::Infinity>() > 1e-9) return;  // inconsistent subset
      double value = 0.0;
      for (int k = 0; k < basis_size; ++k) {
        if (x(k) < -1e-9) return;  // infeasible vertex
        value += std::max(0.0, x(k)) * cost[chosen[k]];
      }
      best = std::min(best, value);
      return;
    }
    for (int c = start; c <= cells - (basis_size - depth); ++c) {
      chosen[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// Dense-grid maximizer of a univariate function over [lo, hi]: coarse scan
// followed by a golden-section refinement around the best cell.
struct GridMax {
  double arg = 0.0;
  double value = 0.0;
};

inline GridMax grid_maximize(const std::function<double(double)>& f, double lo, double hi,
                             int points = 100000) {
  GridMax best{lo, f(lo)};
  double step = (hi - lo) / points;
  for (int i = 1; i <= points; ++i) {
    double x = lo + i * step;
    double v = f(x);
    if (v > best.value) best = {x, v};
  }
  double a = std::max(lo, best.arg - step);
  double b = std::min(hi, best.arg + step);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (f(c) < f(d)) {
      a = c;
      c = d;
      d = a + phi * (b - a);
    } else {
      b = d;
      d = c;
      c = b - phi * (b - a);
    }
  }
  double mid = 0.5 * (a + b);
  double v = f(mid);
  if (v > best.value) best = {mid, v};
  return best;
}

}  // namespace test_oracle
