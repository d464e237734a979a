#pragma once

#include <cstdint>
#include <vector>

#include "mogs/best_response.hpp"
#include "mogs/finite_solver.hpp"
#include "mogs/game.hpp"
#include "mogs/strategy.hpp"

namespace mogs {

enum class MasterMode { Auto, BimatrixLp, PolymatrixLp, Regret };

struct SolveConfig {
  double epsilon = 1e-3;
  int max_iterations = 100;
  std::uint64_t seed = 0;
  // One list per player; empty means one sampled point per player.
  std::vector<std::vector<Vec>> initial_strategies;
  // Inner master tolerance; 0 means epsilon/10 with a 1e-9 floor.
  double master_tol = 0.0;
  double membership_tol = kDedupRadius;
  bool record_wasserstein = false;
  MasterMode master = MasterMode::Auto;
  OracleConfig oracle;

  double effective_master_tol() const;
};

struct IterationTrace {
  int iteration = 0;
  Vec instability;            // one entry per player
  double wasserstein_step = 0.0;  // NaN when not recorded; distance from the previous iterate
  std::vector<int> subgame_sizes;
  double master_gap = 0.0;
  bool master_certified = true;
  double ms_restrict = 0.0;
  double ms_master = 0.0;
  double ms_best_response = 0.0;
  double ms_wasserstein = 0.0;
};

enum class Termination { Converged, MaxIterations };

struct SolveResult {
  Profile profile;
  Vec payoffs;                   // expected utilities of the returned profile
  double epsilon_certified = 0.0;  // max final instability
  int iterations = 0;
  std::vector<IterationTrace> trace;
  Termination terminated = Termination::Converged;
};

// The multiple oracle loop: restrict to the sampled strategy lists, solve the
// finite master problem, extend each list with a best response, and stop once
// every player's instability is at most epsilon (or nothing new can be added).
SolveResult solve(const ContinuousGame& game, const SolveConfig& config);

// Componentwise U_i(best response, p_{-i}) - U_i(p).
Vec instability(const ContinuousGame& game, const Profile& profile,
                const std::vector<BestResponse>& responses);

// Independent post-hoc certificate: recompute best responses under a stricter
// oracle budget and return the worst instability.
double certify_epsilon(const ContinuousGame& game, const Profile& profile,
                       OracleConfig oracle_config = {OracleConfig::Mode::Auto, 64, 400},
                       std::uint64_t seed = 0x9e3779b9ULL);

}  // namespace mogs
