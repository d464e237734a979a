#pragma once

#include <functional>

#include "mogs/game.hpp"
#include "mogs/polynomial.hpp"
#include "mogs/rng.hpp"
#include "mogs/strategy.hpp"

namespace mogs {

// The map x -> U_i(x, p_{-i}) as an object the oracles can optimize: an exact
// polynomial in player i's variables when the utilities allow it, otherwise a
// closure over expected_utility_vs_pure.
struct InducedObjective {
  enum class Kind { Univariate, Polynomial, Callable };
  Kind kind = Kind::Callable;
  UnivariatePoly univariate;     // Kind::Univariate
  PlayerPolynomial polynomial;   // Kind::Univariate and Kind::Polynomial
  std::function<double(const Vec&)> callable;

  double eval(const Vec& x) const;
};

InducedObjective induce_objective(const ContinuousGame& game, int player,
                                  const Profile& others);

struct BestResponse {
  Vec strategy;
  double value = 0.0;
  bool certified_global = false;
};

// Exact global maximum over [lo, hi]: endpoints plus all real critical points.
BestResponse best_response_univariate_poly(const UnivariatePoly& objective, double lo,
                                           double hi);

struct MultistartConfig {
  int starts = 16;
  int iterations = 200;
};

// Projected local ascent from sampled starts plus the supplied warm starts:
// analytic-gradient ascent for polynomial objectives, compass pattern search
// for callables. Never certified global.
BestResponse best_response_multistart(const InducedObjective& objective,
                                      const StrategySpace& space,
                                      const std::vector<Vec>& warm_starts,
                                      const MultistartConfig& config, Rng& rng);

struct OracleConfig {
  enum class Mode { Auto, PolyExact, Multistart };
  Mode mode = Mode::Auto;
  int starts = 16;
  int iterations = 200;
};

// Oracle dispatch. Finite games enumerate their atom lists exactly; univariate
// polynomial objectives over an interval use the exact oracle; everything else
// runs multistart seeded with the player's current subgame atoms, which keeps
// the returned value at least as good as every atom already sampled.
BestResponse best_response(const ContinuousGame& game, int player, const Profile& others,
                           const std::vector<Vec>& subgame_atoms, const OracleConfig& config,
                           Rng& rng);

}  // namespace mogs
