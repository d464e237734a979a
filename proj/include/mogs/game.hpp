#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mogs/polynomial.hpp"
#include "mogs/strategy.hpp"

namespace mogs {

// --- utility function kinds -------------------------------------------------

struct PolynomialUtility {
  SparsePolynomial poly;  // one exponent block per player
};

// Opaque evaluator over a full pure profile. Must be pure (deterministic and
// side-effect free) so traces reproduce under a fixed seed. builtin/params
// identify the closure for serialization; empty builtin means not serializable.
struct BlackBoxUtility {
  std::function<double(const std::vector<Vec>&)> eval;
  std::string builtin;
  Vec params;
};

// Bivariate payoff term of a separable network game, as seen by one player:
// first block is the owner's variables, second block the neighbor's.
struct BivariatePoly {
  SparsePolynomial poly;
};

// Finite bivariate term: payoff matrix indexed by atom ids. Atoms of finite
// games live at coordinates 1..actions; row is the owner's atom.
struct MatrixTerm {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct PolymatrixEdge {
  int other = 0;  // neighbor player index
  std::variant<BivariatePoly, MatrixTerm> term;
};

// Sum of pairwise games u_i = sum_k u_{i,k}(x_i, x_k).
struct PolymatrixUtility {
  std::vector<PolymatrixEdge> edges;
};

using UtilityFunction = std::variant<PolynomialUtility, BlackBoxUtility, PolymatrixUtility>;

// Atom id of a finite-game coordinate (atoms sit at 1..actions).
int finite_atom_index(double coordinate, int actions);

// E_p[ prod_d x_d^e_d ] for a finitely supported measure.
double expected_monomial(const MixedStrategy& p, const std::vector<int>& powers);

// --- the game ----------------------------------------------------------------

struct ContinuousGame {
  int players = 0;
  std::vector<StrategySpace> spaces;
  std::vector<UtilityFunction> utilities;
  bool zero_sum_declared = false;
  bool zero_sum_verified = false;
  // Nonempty for finite games: the full pure strategy list of each player.
  // Best responses then enumerate these instead of searching the space.
  std::vector<std::vector<Vec>> finite_atoms;
  std::string name;

  bool is_finite() const { return !finite_atoms.empty(); }
  bool is_polymatrix() const;
};

// Validates shapes and spot-checks a declared zero-sum flag on 100 random
// pure profiles (tolerance 1e-9); throws if the declaration is false.
ContinuousGame make_game(std::vector<StrategySpace> spaces,
                         std::vector<UtilityFunction> utilities,
                         bool zero_sum,
                         std::vector<std::vector<Vec>> finite_atoms = {},
                         std::string name = {});

double utility(const ContinuousGame& game, int player, const std::vector<Vec>& pure_profile);

// Expected utility of a finitely supported profile. Polynomial utilities use
// per-player moment factorization, polymatrix ones the pairwise expansion;
// black boxes fall back to the full product-support sum.
double expected_utility(const ContinuousGame& game, int player, const Profile& profile);

// Expected utility when `player` deviates to the pure strategy x and everyone
// else keeps playing `profile` (the player's own entry is ignored).
double expected_utility_vs_pure(const ContinuousGame& game, int player, const Vec& x,
                                const Profile& profile);

// --- finite subgames ----------------------------------------------------------

struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  double at(const std::vector<int>& index) const;
  std::size_t flat_index(const std::vector<int>& index) const;
};

struct FiniteSubgame {
  std::vector<std::vector<Vec>> strategy_lists;
  std::vector<Tensor> payoffs;  // one tensor per player
  bool zero_sum = false;
  bool polymatrix = false;
  // pairwise[i][k]: |X_i| x |X_k| payoff matrix to player i from edge (i,k);
  // empty vector when no edge. Present only for polymatrix games.
  std::vector<std::vector<std::vector<double>>> pairwise;

  int players() const { return static_cast<int>(strategy_lists.size()); }
  std::vector<int> sizes() const;
};

// Fills payoff tensors (and pairwise matrices for polymatrix utilities) by
// direct evaluation over the index product; certifies the zero-sum flag
// entrywise within 1e-9.
FiniteSubgame restrict_game(const ContinuousGame& game,
                            std::vector<std::vector<Vec>> strategy_lists);

}  // namespace mogs
