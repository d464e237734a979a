#pragma once

#include <vector>

#include "mogs/game.hpp"
#include "mogs/rng.hpp"
#include "mogs/strategy.hpp"

namespace mogs {

// Equilibrium of a sampled finite subgame. weights[i] is a distribution over
// strategy_lists[i]; profile is the same measure with zero weights dropped.
// certified_gap is recomputed by exhaustive deviation enumeration, never
// taken from the solver that produced the strategy.
struct FiniteEquilibrium {
  std::vector<Vec> weights;
  Profile profile;
  double certified_gap = 0.0;
  bool certified = true;
};

// Per-player best pure deviation gain within the subgame:
//   max_a U_i(a, sigma_{-i}) - U_i(sigma).
Vec exploitability(const FiniteSubgame& sub, const std::vector<Vec>& weights);

// U_i(a, sigma_{-i}) for every player and every subgame strategy.
std::vector<Vec> action_values(const FiniteSubgame& sub, const std::vector<Vec>& weights);

// Two-player zero-sum master: the standard pair of value LPs.
FiniteEquilibrium solve_zero_sum_bimatrix(const FiniteSubgame& sub,
                                          const std::vector<StrategySpace>& spaces);

// Zero-sum separable-network master: one LP with per-player value variables
// and best-response inequalities over all pure deviations. Falls back to
// solve_general when the pairwise decomposition is missing.
FiniteEquilibrium solve_polymatrix_zero_sum(const FiniteSubgame& sub,
                                            const std::vector<StrategySpace>& spaces,
                                            double tol, Rng& rng);

struct GeneralSolveConfig {
  int rm_iterations = 2000;
  int restarts = 10;
  int max_enumeration_profiles = 40000;
};

// General-sum master: regret-matching+ dynamics with time-averaged strategies,
// Newton refinement on the detected support, perturbed restarts, and support
// enumeration as the last resort. Returns the best profile found with its true
// gap and certified=false when nothing reached tol.
FiniteEquilibrium solve_general(const FiniteSubgame& sub,
                                const std::vector<StrategySpace>& spaces, double tol,
                                Rng& rng, const GeneralSolveConfig& config = {});

}  // namespace mogs
