#include "mogs/finite_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mogs/simplex_lp.hpp"

namespace mogs {

namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec normalized(Vec w) {
  double total = 0.0;
  for (double& v : w) {
    v = std::max(0.0, v);
    total += v;
  }
  if (total <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
  } else {
    for (double& v : w) v /= total;
  }
  return w;
}

// U_i with players `fixed` pinned to pure strategies and everyone else mixed.
double contract(const FiniteSubgame& sub, int player, const std::vector<int>& fixed,
                const std::vector<Vec>& weights) {
  const std::vector<int> shape = sub.sizes();
  const int n = sub.players();
  std::vector<int> index(n, 0);
  std::vector<int> free_players;
  for (int j = 0; j < n; ++j) {
    if (fixed[j] >= 0) {
      index[j] = fixed[j];
    } else {
      free_players.push_back(j);
    }
  }
  const Tensor& tensor = sub.payoffs[player];
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int j : free_players) w *= weights[j][index[j]];
    if (w != 0.0) total += w * tensor.at(index);
    int k = static_cast<int>(free_players.size()) - 1;
    for (; k >= 0; --k) {
      int j = free_players[k];
      if (++index[j] < shape[j]) break;
      index[j] = 0;
    }
    if (k < 0) break;
  }
  return total;
}

FiniteEquilibrium finish(const FiniteSubgame& sub, const std::vector<StrategySpace>& spaces,
                         std::vector<Vec> weights, bool certified) {
  FiniteEquilibrium eq;
  for (Vec& w : weights) w = normalized(std::move(w));
  Vec gaps = exploitability(sub, weights);
  eq.certified_gap = 0.0;
  for (double g : gaps) eq.certified_gap = std::max(eq.certified_gap, std::max(0.0, g));
  eq.profile.strategies.reserve(sub.players());
  for (int i = 0; i < sub.players(); ++i) {
    eq.profile.strategies.push_back(
        canonicalize(sub.strategy_lists[i], weights[i], spaces[i]));
  }
  eq.weights = std::move(weights);
  eq.certified = certified;
  return eq;
}

// --- regret matching+ ---------------------------------------------------------

std::vector<Vec> regret_matching_plus(const FiniteSubgame& sub, int iterations,
                                      std::vector<Vec> sigma) {
  const int n = sub.players();
  std::vector<Vec> regrets(n);
  std::vector<Vec> average(n);
  for (int i = 0; i < n; ++i) {
    regrets[i].assign(sigma[i].size(), 0.0);
    average[i].assign(sigma[i].size(), 0.0);
  }
  for (int t = 1; t <= iterations; ++t) {
    std::vector<Vec> vals = action_values(sub, sigma);
    for (int i = 0; i < n; ++i) {
      double mixed = dot(sigma[i], vals[i]);
      for (std::size_t a = 0; a < sigma[i].size(); ++a) {
        regrets[i][a] = std::max(0.0, regrets[i][a] + vals[i][a] - mixed);
        average[i][a] += static_cast<double>(t) * sigma[i][a];  // linear averaging
      }
    }
    for (int i = 0; i < n; ++i) sigma[i] = normalized(regrets[i]);
  }
  for (int i = 0; i < n; ++i) average[i] = normalized(std::move(average[i]));
  return average;
}

// --- Newton refinement on a fixed support --------------------------------------

// Solves the indifference system: for each player i and action a in its
// support, U_i(a, p_{-i}) = v_i, together with per-player normalization.
std::optional<std::vector<Vec>> newton_on_support(const FiniteSubgame& sub,
                                                  const std::vector<std::vector<int>>& support,
                                                  std::vector<Vec> weights) {
  const int n = sub.players();
  int num_weight_vars = 0;
  for (const auto& s : support) num_weight_vars += static_cast<int>(s.size());
  const int dim = num_weight_vars + n;

  std::vector<std::pair<int, int>> var_index;  // (player, action)
  for (int i = 0; i < n; ++i)
    for (int a : support[i]) var_index.push_back({i, a});

  // Zero out off-support mass in the working weights.
  for (int i = 0; i < n; ++i) {
    Vec masked(weights[i].size(), 0.0);
    double total = 0.0;
    for (int a : support[i]) {
      masked[a] = std::max(weights[i][a], 1e-6);
      total += masked[a];
    }
    for (int a : support[i]) masked[a] /= total;
    weights[i] = std::move(masked);
  }

  Vec values(n, 0.0);
  std::vector<int> fixed(n, -1);
  for (int i = 0; i < n; ++i) {
    fixed[i] = support[i][0];
    values[i] = contract(sub, i, fixed, weights);
    fixed[i] = -1;
  }

  Eigen::MatrixXd jac(dim, dim);
  Eigen::VectorXd residual(dim);

  for (int iter = 0; iter < 60; ++iter) {
    jac.setZero();
    residual.setZero();
    int row = 0;
    for (int i = 0; i < n; ++i) {
      for (int a : support[i]) {
        std::fill(fixed.begin(), fixed.end(), -1);
        fixed[i] = a;
        residual(row) = contract(sub, i, fixed, weights) - values[i];
        for (int col = 0; col < num_weight_vars; ++col) {
          auto [k, b] = var_index[col];
          if (k == i) continue;
          fixed[k] = b;
          jac(row, col) = contract(sub, i, fixed, weights);
          fixed[k] = -1;
        }
        jac(row, num_weight_vars + i) = -1.0;
        ++row;
      }
    }
    for (int i = 0; i < n; ++i) {
      double sum = -1.0;
      for (int a : support[i]) sum += weights[i][a];
      residual(row) = sum;
      for (int col = 0; col < num_weight_vars; ++col) {
        if (var_index[col].first == i) jac(row, col) = 1.0;
      }
      ++row;
    }

    double res_norm = residual.lpNorm<Eigen::Infinity>();
    if (res_norm <= 1e-13) break;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::VectorXd step = lu.solve(residual);
    if (!step.allFinite()) return std::nullopt;

    for (int col = 0; col < num_weight_vars; ++col) {
      auto [k, b] = var_index[col];
      weights[k][b] -= step(col);
    }
    for (int i = 0; i < n; ++i) values[i] -= step(num_weight_vars + i);
    if (step.lpNorm<Eigen::Infinity>() > 1e6) return std::nullopt;  // diverging
  }

  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int a : support[i]) {
      if (weights[i][a] < -1e-8) return std::nullopt;  // infeasible support
      weights[i][a] = std::max(0.0, weights[i][a]);
      total += weights[i][a];
    }
    if (total <= 0.0) return std::nullopt;
    for (int a : support[i]) weights[i][a] /= total;
  }
  return weights;
}

std::vector<std::vector<int>> support_above(const std::vector<Vec>& weights, double threshold) {
  std::vector<std::vector<int>> support(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double top = *std::max_element(weights[i].begin(), weights[i].end());
    for (std::size_t a = 0; a < weights[i].size(); ++a) {
      if (weights[i][a] >= threshold * std::max(top, 1e-300)) {
        support[i].push_back(static_cast<int>(a));
      }
    }
    if (support[i].empty()) {
      support[i].push_back(static_cast<int>(
          std::max_element(weights[i].begin(), weights[i].end()) - weights[i].begin()));
    }
  }
  return support;
}

// --- support enumeration --------------------------------------------------------

// Two-player equal-size support enumeration via the linear indifference system.
std::optional<std::vector<Vec>> enumerate_bimatrix(const FiniteSubgame& sub, double tol) {
  const int m0 = sub.sizes()[0];
  const int m1 = sub.sizes()[1];
  const Tensor& pay0 = sub.payoffs[0];
  const Tensor& pay1 = sub.payoffs[1];
  auto a0 = [&](int r, int c) { return pay0.data[static_cast<std::size_t>(r) * m1 + c]; };
  auto a1 = [&](int r, int c) { return pay1.data[static_cast<std::size_t>(r) * m1 + c]; };

  std::vector<std::vector<int>> subsets0, subsets1;
  auto gen = [](int m, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == k) {
        out.push_back(cur);
        return;
      }
      for (int v = start; v < m; ++v) {
        cur[depth] = v;
        rec(v + 1, depth + 1);
      }
    };
    rec(0, 0);
  };

  for (int k = 1; k <= std::min({4, m0, m1}); ++k) {
    subsets0.clear();
    subsets1.clear();
    gen(m0, k, subsets0);
    gen(m1, k, subsets1);
    for (const auto& s0 : subsets0) {
      for (const auto& s1 : subsets1) {
        // Player 0 indifferent over s0 against q; player 1 over s1 against p.
        Eigen::MatrixXd m_q(k + 1, k + 1), m_p(k + 1, k + 1);
        Eigen::VectorXd rhs(k + 1);
        rhs.setZero();
        rhs(k) = 1.0;
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) m_q(r, c) = a0(s0[r], s1[c]);
          m_q(r, k) = -1.0;
        }
        for (int c = 0; c < k; ++c) m_q(k, c) = 1.0;
        m_q(k, k) = 0.0;

        for (int c = 0; c < k; ++c) {
          for (int r = 0; r < k; ++r) m_p(c, r) = a1(s0[r], s1[c]);
          m_p(c, k) = -1.0;
        }
        for (int r = 0; r < k; ++r) m_p(k, r) = 1.0;
        m_p(k, k) = 0.0;

        Eigen::FullPivLU<Eigen::MatrixXd> lu_q(m_q), lu_p(m_p);
        lu_q.setThreshold(1e-10);
        lu_p.setThreshold(1e-10);
        if (!lu_q.isInvertible() || !lu_p.isInvertible()) continue;
        Eigen::VectorXd q_sol = lu_q.solve(rhs);
        Eigen::VectorXd p_sol = lu_p.solve(rhs);

        bool feasible = true;
        for (int idx = 0; idx < k; ++idx) {
          if (q_sol(idx) < -1e-9 || p_sol(idx) < -1e-9) feasible = false;
        }
        if (!feasible) continue;

        std::vector<Vec> weights(2);
        weights[0].assign(m0, 0.0);
        weights[1].assign(m1, 0.0);
        for (int idx = 0; idx < k; ++idx) {
          weights[0][s0[idx]] = std::max(0.0, p_sol(idx));
          weights[1][s1[idx]] = std::max(0.0, q_sol(idx));
        }
        weights[0] = normalized(std::move(weights[0]));
        weights[1] = normalized(std::move(weights[1]));

        Vec gaps = exploitability(sub, weights);
        if (std::max(gaps[0], gaps[1]) <= tol) return weights;
      }
    }
  }
  return std::nullopt;
}

// Multi-player support-profile enumeration with Newton per profile; only
// attempted when the profile count stays below the configured cap.
std::optional<std::vector<Vec>> enumerate_multiplayer(const FiniteSubgame& sub, double tol,
                                                      int max_profiles) {
  const std::vector<int> sizes = sub.sizes();
  const int n = sub.players();

  long double combinations = 1.0L;
  for (int s : sizes) combinations *= static_cast<long double>((1 << s) - 1);
  if (combinations > static_cast<long double>(max_profiles)) return std::nullopt;

  // Masks per player grouped by popcount for a size-ascending sweep.
  std::vector<std::vector<std::vector<int>>> masks(n);
  for (int i = 0; i < n; ++i) {
    masks[i].assign(sizes[i] + 1, {});
    for (int mask = 1; mask < (1 << sizes[i]); ++mask) {
      masks[i][std::popcount(static_cast<unsigned>(mask))].push_back(mask);
    }
  }

  int max_total = 0;
  for (int s : sizes) max_total += s;

  std::vector<std::vector<int>> support(n);
  for (int total = n; total <= max_total; ++total) {
    // Distribute `total` over players, each between 1 and sizes[i].
    std::vector<int> alloc(n, 1);
    std::function<std::optional<std::vector<Vec>>(int, int)> sweep =
        [&](int player, int remaining) -> std::optional<std::vector<Vec>> {
      if (player == n) {
        if (remaining != 0) return std::nullopt;
        std::function<std::optional<std::vector<Vec>>(int)> pick =
            [&](int p) -> std::optional<std::vector<Vec>> {
          if (p == n) {
            std::vector<Vec> init(n);
            for (int i = 0; i < n; ++i) init[i].assign(sizes[i], 0.0);
            auto solution = newton_on_support(sub, support, init);
            if (!solution) return std::nullopt;
            Vec gaps = exploitability(sub, *solution);
            double g = *std::max_element(gaps.begin(), gaps.end());
            if (g <= tol) return solution;
            return std::nullopt;
          }
          for (int mask : masks[p][alloc[p]]) {
            support[p].clear();
            for (int a = 0; a < sizes[p]; ++a) {
              if (mask & (1 << a)) support[p].push_back(a);
            }
            if (auto r = pick(p + 1)) return r;
          }
          return std::nullopt;
        };
        return pick(0);
      }
      for (int k = 1; k <= std::min(sizes[player], remaining); ++k) {
        alloc[player] = k;
        if (auto r = sweep(player + 1, remaining - k)) return r;
      }
      return std::nullopt;
    };
    if (auto r = sweep(0, total)) return r;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Vec> action_values(const FiniteSubgame& sub, const std::vector<Vec>& weights) {
  const int n = sub.players();
  const std::vector<int> sizes = sub.sizes();
  std::vector<Vec> vals(n);

  if (sub.polymatrix) {
    for (int i = 0; i < n; ++i) {
      vals[i].assign(sizes[i], 0.0);
      for (int k = 0; k < n; ++k) {
        const std::vector<double>& mat = sub.pairwise[i][k];
        if (mat.empty()) continue;
        for (int a = 0; a < sizes[i]; ++a) {
          double s = 0.0;
          for (int b = 0; b < sizes[k]; ++b) {
            s += mat[static_cast<std::size_t>(a) * sizes[k] + b] * weights[k][b];
          }
          vals[i][a] += s;
        }
      }
    }
    return vals;
  }

  for (int i = 0; i < n; ++i) {
    vals[i].assign(sizes[i], 0.0);
    const Tensor& tensor = sub.payoffs[i];
    std::vector<int> index(n, 0);
    std::size_t flat = 0;
    while (true) {
      double w = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) w *= weights[j][index[j]];
      }
      if (w != 0.0) vals[i][index[i]] += w * tensor.data[flat];
      ++flat;
      int j = n - 1;
      for (; j >= 0; --j) {
        if (++index[j] < sizes[j]) break;
        index[j] = 0;
      }
      if (j < 0) break;
    }
  }
  return vals;
}

Vec exploitability(const FiniteSubgame& sub, const std::vector<Vec>& weights) {
  std::vector<Vec> vals = action_values(sub, weights);
  Vec gaps(sub.players());
  for (int i = 0; i < sub.players(); ++i) {
    double mixed = dot(weights[i], vals[i]);
    double best = *std::max_element(vals[i].begin(), vals[i].end());
    gaps[i] = best - mixed;
  }
  return gaps;
}

FiniteEquilibrium solve_zero_sum_bimatrix(const FiniteSubgame& sub,
                                          const std::vector<StrategySpace>& spaces) {
  if (sub.players() != 2) throw std::invalid_argument("bimatrix solver needs two players");
  if (!sub.zero_sum) {
    throw std::invalid_argument("bimatrix LP dispatched on a subgame that is not certified zero-sum");
  }
  const int m0 = sub.sizes()[0];
  const int m1 = sub.sizes()[1];

  // Row player maximizes payoffs[0]; column player maximizes payoffs[1] seen
  // as the row player of its transpose.
  MaximinResult row = maximin_strategy(sub.payoffs[0].data, m0, m1);
  std::vector<double> col_payoff(static_cast<std::size_t>(m1) * m0);
  for (int r = 0; r < m0; ++r)
    for (int c = 0; c < m1; ++c)
      col_payoff[static_cast<std::size_t>(c) * m0 + r] =
          sub.payoffs[1].data[static_cast<std::size_t>(r) * m1 + c];
  MaximinResult col = maximin_strategy(col_payoff, m1, m0);

  return finish(sub, spaces, {row.strategy, col.strategy}, true);
}

FiniteEquilibrium solve_polymatrix_zero_sum(const FiniteSubgame& sub,
                                            const std::vector<StrategySpace>& spaces,
                                            double tol, Rng& rng) {
  if (!sub.zero_sum) {
    throw std::invalid_argument("polymatrix LP dispatched on a subgame that is not certified zero-sum");
  }
  if (!sub.polymatrix) {
    std::cerr << "solve_polymatrix_zero_sum: pairwise decomposition missing, "
                 "falling back to the general solver\n";
    return solve_general(sub, spaces, tol, rng);
  }

  const int n = sub.players();
  const std::vector<int> sizes = sub.sizes();
  std::vector<int> offset(n, 0);
  int num_strategy_vars = 0;
  for (int i = 0; i < n; ++i) {
    offset[i] = num_strategy_vars;
    num_strategy_vars += sizes[i];
  }

  // Shift per-player values nonnegative: v_i is bounded by the largest
  // absolute row sum of the pairwise matrices.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < sizes[i]; ++a) {
      double row_bound = 0.0;
      for (int k = 0; k < n; ++k) {
        const std::vector<double>& mat = sub.pairwise[i][k];
        if (mat.empty()) continue;
        double worst = 0.0;
        for (int b = 0; b < sizes[k]; ++b) {
          worst = std::max(worst, std::abs(mat[static_cast<std::size_t>(a) * sizes[k] + b]));
        }
        row_bound += worst;
      }
      bound = std::max(bound, row_bound);
    }
  }
  const double shift = 1.0 + bound;

  LinearProgram lp;
  lp.num_vars = num_strategy_vars + n;
  lp.objective.assign(lp.num_vars, 0.0);
  for (int i = 0; i < n; ++i) lp.objective[num_strategy_vars + i] = -1.0;  // minimize sum of values

  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < sizes[i]; ++a) {
      std::vector<double> coef(lp.num_vars, 0.0);
      coef[num_strategy_vars + i] = 1.0;
      for (int k = 0; k < n; ++k) {
        const std::vector<double>& mat = sub.pairwise[i][k];
        if (mat.empty()) continue;
        for (int b = 0; b < sizes[k]; ++b) {
          coef[offset[k] + b] -= mat[static_cast<std::size_t>(a) * sizes[k] + b];
        }
      }
      lp.add_row(std::move(coef), LinearProgram::Relation::GreaterEqual, shift);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> coef(lp.num_vars, 0.0);
    for (int a = 0; a < sizes[i]; ++a) coef[offset[i] + a] = 1.0;
    lp.add_row(std::move(coef), LinearProgram::Relation::Equal, 1.0);
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal) {
    throw std::runtime_error("polymatrix LP failed to solve");
  }

  std::vector<Vec> weights(n);
  for (int i = 0; i < n; ++i) {
    weights[i].assign(sol.x.begin() + offset[i], sol.x.begin() + offset[i] + sizes[i]);
  }
  return finish(sub, spaces, std::move(weights), true);
}

FiniteEquilibrium solve_general(const FiniteSubgame& sub,
                                const std::vector<StrategySpace>& spaces, double tol,
                                Rng& rng, const GeneralSolveConfig& config) {
  if (tol <= 0.0) throw std::invalid_argument("solve_general requires tol > 0");
  const int n = sub.players();
  const std::vector<int> sizes = sub.sizes();

  std::vector<Vec> best_weights;
  double best_gap = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<Vec>& w) {
    Vec gaps = exploitability(sub, w);
    double g = *std::max_element(gaps.begin(), gaps.end());
    if (g < best_gap) {
      best_gap = g;
      best_weights = w;
    }
    return g;
  };

  for (int restart = 0; restart < config.restarts; ++restart) {
    std::vector<Vec> init(n);
    for (int i = 0; i < n; ++i) {
      init[i].assign(sizes[i], 1.0 / sizes[i]);
      if (restart > 0) {
        for (double& v : init[i]) v = -std::log(std::max(rng.uniform(), 0x1.0p-53));
        init[i] = normalized(std::move(init[i]));
      }
    }
    std::vector<Vec> averaged = regret_matching_plus(sub, config.rm_iterations, init);
    if (consider(averaged) <= tol) return finish(sub, spaces, averaged, true);

    for (double threshold : {1e-2, 1e-3, 1e-5}) {
      auto support = support_above(averaged, threshold);
      auto polished = newton_on_support(sub, support, averaged);
      if (polished && consider(*polished) <= tol) {
        return finish(sub, spaces, *polished, true);
      }
    }
  }

  if (n == 2) {
    if (auto w = enumerate_bimatrix(sub, tol)) return finish(sub, spaces, *w, true);
  } else {
    if (auto w = enumerate_multiplayer(sub, tol, config.max_enumeration_profiles)) {
      return finish(sub, spaces, *w, true);
    }
  }

  return finish(sub, spaces, best_weights, /*certified=*/best_gap <= tol);
}

}  // namespace mogs
