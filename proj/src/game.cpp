#include "mogs/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mogs/rng.hpp"

namespace mogs {

namespace {

double eval_bivariate(const PolymatrixEdge& edge, const Vec& self, const Vec& other,
                      int self_actions, int other_actions) {
  if (const auto* poly = std::get_if<BivariatePoly>(&edge.term)) {
    return poly->poly.eval({self, other});
  }
  const auto& mat = std::get<MatrixTerm>(edge.term);
  int r = finite_atom_index(self[0], self_actions);
  int c = finite_atom_index(other[0], other_actions);
  return mat.at(r, c);
}

double pure_monomial(const Vec& x, const std::vector<int>& powers) {
  double prod = 1.0;
  for (std::size_t d = 0; d < powers.size(); ++d) {
    for (int e = 0; e < powers[d]; ++e) prod *= x[d];
  }
  return prod;
}

// Sum over the product of supports, weighting by the product of masses.
double product_support_sum(const ContinuousGame& game, int player, const Profile& profile) {
  const int n = game.players;
  std::vector<int> index(n, 0);
  std::vector<Vec> point(n);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      const MixedStrategy& pj = profile.strategies[j];
      w *= pj.weights[index[j]];
      point[j] = pj.atoms[index[j]];
    }
    total += w * utility(game, player, point);
    int j = 0;
    for (; j < n; ++j) {
      if (++index[j] < profile.strategies[j].support_size()) break;
      index[j] = 0;
    }
    if (j == n) break;
  }
  return total;
}

int actions_of(const ContinuousGame& game, int player) {
  return game.is_finite() ? static_cast<int>(game.finite_atoms[player].size()) : 0;
}

}  // namespace

double expected_monomial(const MixedStrategy& p, const std::vector<int>& powers) {
  double sum = 0.0;
  for (std::size_t a = 0; a < p.atoms.size(); ++a) {
    double prod = p.weights[a];
    for (std::size_t d = 0; d < powers.size(); ++d) {
      for (int e = 0; e < powers[d]; ++e) prod *= p.atoms[a][d];
    }
    sum += prod;
  }
  return sum;
}

int finite_atom_index(double coordinate, int actions) {
  int id = static_cast<int>(std::lround(coordinate)) - 1;
  if (id < 0 || id >= actions) {
    throw std::invalid_argument("coordinate " + std::to_string(coordinate) +
                                " is not a finite-game atom id");
  }
  return id;
}

bool ContinuousGame::is_polymatrix() const {
  return std::all_of(utilities.begin(), utilities.end(), [](const UtilityFunction& u) {
    return std::holds_alternative<PolymatrixUtility>(u);
  });
}

ContinuousGame make_game(std::vector<StrategySpace> spaces,
                         std::vector<UtilityFunction> utilities,
                         bool zero_sum,
                         std::vector<std::vector<Vec>> finite_atoms,
                         std::string name) {
  if (spaces.empty() || spaces.size() != utilities.size()) {
    throw std::invalid_argument("spaces and utilities must be nonempty and equal-sized");
  }
  ContinuousGame game;
  game.players = static_cast<int>(spaces.size());
  game.spaces = std::move(spaces);
  game.utilities = std::move(utilities);
  game.zero_sum_declared = zero_sum;
  game.finite_atoms = std::move(finite_atoms);
  game.name = std::move(name);

  if (!game.finite_atoms.empty() &&
      game.finite_atoms.size() != static_cast<std::size_t>(game.players)) {
    throw std::invalid_argument("finite atom lists must cover every player");
  }

  // Shape validation of polynomial exponent blocks.
  for (int i = 0; i < game.players; ++i) {
    if (const auto* poly = std::get_if<PolynomialUtility>(&game.utilities[i])) {
      for (const MonomialTerm& t : poly->poly.terms) {
        if (t.powers.size() != static_cast<std::size_t>(game.players)) {
          throw std::invalid_argument("monomial must carry one exponent block per player");
        }
        for (int j = 0; j < game.players; ++j) {
          if (t.powers[j].size() != static_cast<std::size_t>(game.spaces[j].dim)) {
            throw std::invalid_argument("exponent block length mismatch for player " +
                                        std::to_string(j));
          }
        }
      }
    } else if (const auto* pm = std::get_if<PolymatrixUtility>(&game.utilities[i])) {
      for (const PolymatrixEdge& e : pm->edges) {
        if (e.other < 0 || e.other >= game.players || e.other == i) {
          throw std::invalid_argument("polymatrix edge endpoint out of range");
        }
      }
    }
  }

  if (game.zero_sum_declared) {
    Rng rng(0x5eedc0ffeeULL);
    for (int check = 0; check < 100; ++check) {
      std::vector<Vec> point(game.players);
      for (int j = 0; j < game.players; ++j) {
        if (game.is_finite()) {
          point[j] = game.finite_atoms[j][rng.below(game.finite_atoms[j].size())];
        } else {
          point[j] = sample(game.spaces[j], rng);
        }
      }
      double sum = 0.0;
      for (int j = 0; j < game.players; ++j) sum += utility(game, j, point);
      if (std::abs(sum) > 1e-9) {
        throw std::invalid_argument("game declared zero-sum but utilities sum to " +
                                    std::to_string(sum) + " at a sampled profile");
      }
    }
    game.zero_sum_verified = true;
  }
  return game;
}

double utility(const ContinuousGame& game, int player, const std::vector<Vec>& pure_profile) {
  if (pure_profile.size() != static_cast<std::size_t>(game.players)) {
    throw std::invalid_argument("pure profile has wrong player count");
  }
  const UtilityFunction& u = game.utilities[player];
  if (const auto* poly = std::get_if<PolynomialUtility>(&u)) {
    return poly->poly.eval(pure_profile);
  }
  if (const auto* bb = std::get_if<BlackBoxUtility>(&u)) {
    return bb->eval(pure_profile);
  }
  const auto& pm = std::get<PolymatrixUtility>(u);
  double sum = 0.0;
  for (const PolymatrixEdge& e : pm.edges) {
    sum += eval_bivariate(e, pure_profile[player], pure_profile[e.other],
                          actions_of(game, player), actions_of(game, e.other));
  }
  return sum;
}

double expected_utility(const ContinuousGame& game, int player, const Profile& profile) {
  if (profile.players() != game.players) {
    throw std::invalid_argument("profile has wrong player count");
  }
  const UtilityFunction& u = game.utilities[player];
  if (const auto* poly = std::get_if<PolynomialUtility>(&u)) {
    // Independence across players lets each monomial factor into per-player moments.
    double total = 0.0;
    for (const MonomialTerm& t : poly->poly.terms) {
      double prod = t.coef;
      for (int j = 0; j < game.players; ++j) {
        prod *= expected_monomial(profile.strategies[j], t.powers[j]);
      }
      total += prod;
    }
    return total;
  }
  if (const auto* pm = std::get_if<PolymatrixUtility>(&u)) {
    double total = 0.0;
    const MixedStrategy& pi = profile.strategies[player];
    for (const PolymatrixEdge& e : pm->edges) {
      const MixedStrategy& pk = profile.strategies[e.other];
      for (std::size_t a = 0; a < pi.atoms.size(); ++a) {
        for (std::size_t b = 0; b < pk.atoms.size(); ++b) {
          total += pi.weights[a] * pk.weights[b] *
                   eval_bivariate(e, pi.atoms[a], pk.atoms[b], actions_of(game, player),
                                  actions_of(game, e.other));
        }
      }
    }
    return total;
  }
  return product_support_sum(game, player, profile);
}

double expected_utility_vs_pure(const ContinuousGame& game, int player, const Vec& x,
                                const Profile& profile) {
  const UtilityFunction& u = game.utilities[player];
  if (const auto* poly = std::get_if<PolynomialUtility>(&u)) {
    double total = 0.0;
    for (const MonomialTerm& t : poly->poly.terms) {
      double prod = t.coef * pure_monomial(x, t.powers[player]);
      for (int j = 0; j < game.players; ++j) {
        if (j == player) continue;
        prod *= expected_monomial(profile.strategies[j], t.powers[j]);
      }
      total += prod;
    }
    return total;
  }
  Profile deviated = profile;
  deviated.strategies[player] = dirac(x);
  return expected_utility(game, player, deviated);
}

std::size_t Tensor::flat_index(const std::vector<int>& index) const {
  std::size_t flat = 0;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    flat = flat * shape[j] + index[j];
  }
  return flat;
}

double Tensor::at(const std::vector<int>& index) const { return data[flat_index(index)]; }

std::vector<int> FiniteSubgame::sizes() const {
  std::vector<int> s(strategy_lists.size());
  for (std::size_t i = 0; i < strategy_lists.size(); ++i) {
    s[i] = static_cast<int>(strategy_lists[i].size());
  }
  return s;
}

FiniteSubgame restrict_game(const ContinuousGame& game,
                            std::vector<std::vector<Vec>> strategy_lists) {
  if (strategy_lists.size() != static_cast<std::size_t>(game.players)) {
    throw std::invalid_argument("restriction needs one strategy list per player");
  }
  for (int i = 0; i < game.players; ++i) {
    if (strategy_lists[i].empty()) {
      throw std::invalid_argument("empty strategy list for player " + std::to_string(i));
    }
    for (const Vec& x : strategy_lists[i]) {
      if (!contains(game.spaces[i], x, 1e-7)) {
        throw std::invalid_argument("listed strategy outside the space of player " +
                                    std::to_string(i));
      }
    }
  }

  FiniteSubgame sub;
  sub.strategy_lists = std::move(strategy_lists);
  const std::vector<int> shape = sub.sizes();
  const int n = game.players;

  sub.polymatrix = game.is_polymatrix();
  if (sub.polymatrix) {
    sub.pairwise.assign(n, std::vector<std::vector<double>>(n));
    for (int i = 0; i < n; ++i) {
      const auto& pm = std::get<PolymatrixUtility>(game.utilities[i]);
      for (const PolymatrixEdge& e : pm.edges) {
        std::vector<double>& mat = sub.pairwise[i][e.other];
        const auto& rows = sub.strategy_lists[i];
        const auto& cols = sub.strategy_lists[e.other];
        mat.resize(rows.size() * cols.size());
        for (std::size_t a = 0; a < rows.size(); ++a) {
          for (std::size_t b = 0; b < cols.size(); ++b) {
            mat[a * cols.size() + b] = eval_bivariate(e, rows[a], cols[b],
                                                      actions_of(game, i),
                                                      actions_of(game, e.other));
          }
        }
      }
    }
  }

  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);

  sub.payoffs.resize(n);
  for (int i = 0; i < n; ++i) {
    sub.payoffs[i].shape = shape;
    sub.payoffs[i].data.resize(total);
  }

  std::vector<int> index(n, 0);
  std::vector<Vec> point(n);
  for (int j = 0; j < n; ++j) point[j] = sub.strategy_lists[j][0];
  std::size_t flat = 0;
  while (true) {
    for (int i = 0; i < n; ++i) {
      double v;
      if (sub.polymatrix) {
        v = 0.0;
        const auto& pm = std::get<PolymatrixUtility>(game.utilities[i]);
        for (const PolymatrixEdge& e : pm.edges) {
          const std::vector<double>& mat = sub.pairwise[i][e.other];
          v += mat[static_cast<std::size_t>(index[i]) * shape[e.other] + index[e.other]];
        }
      } else {
        v = utility(game, i, point);
      }
      sub.payoffs[i].data[flat] = v;
    }
    ++flat;
    int j = n - 1;
    for (; j >= 0; --j) {
      if (++index[j] < shape[j]) {
        point[j] = sub.strategy_lists[j][index[j]];
        break;
      }
      index[j] = 0;
      point[j] = sub.strategy_lists[j][0];
    }
    if (j < 0) break;
  }

  if (game.zero_sum_declared && game.zero_sum_verified) {
    bool ok = true;
    for (std::size_t f = 0; f < total && ok; ++f) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += sub.payoffs[i].data[f];
      ok = std::abs(sum) <= 1e-9;
    }
    sub.zero_sum = ok;
  }
  return sub;
}

}  // namespace mogs
