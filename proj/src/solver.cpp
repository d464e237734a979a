#include "mogs/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mogs/metrics.hpp"

namespace mogs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

FiniteEquilibrium solve_master(const ContinuousGame& game, const FiniteSubgame& sub,
                               const SolveConfig& config, double tol, Rng& rng) {
  switch (config.master) {
    case MasterMode::BimatrixLp:
      return solve_zero_sum_bimatrix(sub, game.spaces);
    case MasterMode::PolymatrixLp:
      return solve_polymatrix_zero_sum(sub, game.spaces, tol, rng);
    case MasterMode::Regret:
      return solve_general(sub, game.spaces, tol, rng);
    case MasterMode::Auto:
    default:
      break;
  }
  if (sub.zero_sum && sub.players() == 2) return solve_zero_sum_bimatrix(sub, game.spaces);
  if (sub.zero_sum && sub.polymatrix) return solve_polymatrix_zero_sum(sub, game.spaces, tol, rng);
  return solve_general(sub, game.spaces, tol, rng);
}

}  // namespace

double SolveConfig::effective_master_tol() const {
  if (master_tol > 0.0) return master_tol;
  return std::max(epsilon / 10.0, 1e-9);
}

Vec instability(const ContinuousGame& game, const Profile& profile,
                const std::vector<BestResponse>& responses) {
  Vec out(game.players);
  for (int i = 0; i < game.players; ++i) {
    out[i] = responses[i].value - expected_utility(game, i, profile);
  }
  return out;
}

SolveResult solve(const ContinuousGame& game, const SolveConfig& config) {
  if (config.epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");

  Rng rng(config.seed);
  const double master_tol = config.effective_master_tol();

  // Initial strategy lists: supplied explicitly or one sampled point each.
  std::vector<std::vector<Vec>> lists = config.initial_strategies;
  if (lists.empty()) {
    lists.resize(game.players);
    for (int i = 0; i < game.players; ++i) {
      if (game.is_finite()) {
        lists[i].push_back(game.finite_atoms[i][rng.below(game.finite_atoms[i].size())]);
      } else {
        lists[i].push_back(sample(game.spaces[i], rng));
      }
    }
  }
  if (lists.size() != static_cast<std::size_t>(game.players)) {
    throw std::invalid_argument("initial strategy lists must cover every player");
  }
  for (const auto& list : lists) {
    if (list.empty()) throw std::invalid_argument("initial strategy list is empty");
  }

  SolveResult result;
  double best_instability = std::numeric_limits<double>::infinity();
  Profile best_profile;
  Vec best_payoffs;

  Profile previous_profile;
  bool have_previous = false;

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    IterationTrace row;
    row.iteration = iteration;
    row.subgame_sizes.reserve(game.players);
    for (const auto& list : lists) row.subgame_sizes.push_back(static_cast<int>(list.size()));

    auto t0 = Clock::now();
    FiniteSubgame sub = restrict_game(game, lists);
    row.ms_restrict = ms_since(t0);

    auto t1 = Clock::now();
    FiniteEquilibrium master = solve_master(game, sub, config, master_tol, rng);
    row.ms_master = ms_since(t1);
    row.master_gap = master.certified_gap;
    row.master_certified = master.certified;

    auto t2 = Clock::now();
    std::vector<BestResponse> responses(game.players);
    for (int i = 0; i < game.players; ++i) {
      responses[i] = best_response(game, i, master.profile, lists[i], config.oracle, rng);
    }
    row.ms_best_response = ms_since(t2);

    row.instability = instability(game, master.profile, responses);
    double worst = *std::max_element(row.instability.begin(), row.instability.end());

    row.wasserstein_step = std::numeric_limits<double>::quiet_NaN();
    if (config.record_wasserstein) {
      auto t3 = Clock::now();
      if (have_previous) {
        row.wasserstein_step = profile_distance(previous_profile, master.profile, game.spaces);
      }
      row.ms_wasserstein = ms_since(t3);
    }
    previous_profile = master.profile;
    have_previous = true;

    result.trace.push_back(row);
    result.iterations = iteration;

    Vec payoffs(game.players);
    for (int i = 0; i < game.players; ++i) payoffs[i] = expected_utility(game, i, master.profile);

    if (worst < best_instability) {
      best_instability = worst;
      best_profile = master.profile;
      best_payoffs = payoffs;
    }

    if (worst <= config.epsilon) {
      result.profile = master.profile;
      result.payoffs = std::move(payoffs);
      result.epsilon_certified = worst;
      result.terminated = Termination::Converged;
      return result;
    }

    // Extend the strategy lists; skip best responses already sampled.
    bool grew = false;
    for (int i = 0; i < game.players; ++i) {
      const Vec& candidate = responses[i].strategy;
      bool duplicate = false;
      for (const Vec& existing : lists[i]) {
        if (ground_distance(game.spaces[i], existing, candidate) <= config.membership_tol) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        lists[i].push_back(candidate);
        grew = true;
      }
    }

    // No growth means every best response is already in the subgame, so the
    // master gap bounds the instability; retrying cannot improve a certified
    // master, only an uncertified heuristic one.
    if (!grew && worst <= config.epsilon + std::max(master.certified_gap, master_tol)) {
      result.profile = master.profile;
      result.payoffs = std::move(payoffs);
      result.epsilon_certified = worst;
      result.terminated = Termination::Converged;
      return result;
    }
  }

  result.profile = std::move(best_profile);
  result.payoffs = std::move(best_payoffs);
  result.epsilon_certified = best_instability;
  result.terminated = Termination::MaxIterations;
  return result;
}

double certify_epsilon(const ContinuousGame& game, const Profile& profile,
                       OracleConfig oracle_config, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < game.players; ++i) {
    BestResponse br =
        best_response(game, i, profile, profile.strategies[i].atoms, oracle_config, rng);
    worst = std::max(worst, br.value - expected_utility(game, i, profile));
  }
  return worst;
}

}  // namespace mogs
