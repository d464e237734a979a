#include "mogs/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace mogs {

namespace {

PlayerPolynomial collapse_full_polynomial(const SparsePolynomial& poly, int player,
                                          const Profile& others, int player_dim) {
  std::map<std::vector<int>, double> merged;
  for (const MonomialTerm& t : poly.terms) {
    double coef = t.coef;
    for (std::size_t j = 0; j < t.powers.size(); ++j) {
      if (static_cast<int>(j) == player) continue;
      coef *= expected_monomial(others.strategies[j], t.powers[j]);
    }
    merged[t.powers[player]] += coef;
  }
  PlayerPolynomial out;
  out.dim = player_dim;
  for (auto& [powers, coef] : merged) {
    if (coef != 0.0) out.terms.push_back({coef, powers});
  }
  if (out.terms.empty()) out.terms.push_back({0.0, std::vector<int>(player_dim, 0)});
  return out;
}

PlayerPolynomial collapse_polymatrix(const PolymatrixUtility& pm, int player,
                                     const Profile& others, int player_dim) {
  std::map<std::vector<int>, double> merged;
  for (const PolymatrixEdge& edge : pm.edges) {
    const auto& bivariate = std::get<BivariatePoly>(edge.term);
    for (const MonomialTerm& t : bivariate.poly.terms) {
      double coef = t.coef * expected_monomial(others.strategies[edge.other], t.powers[1]);
      merged[t.powers[0]] += coef;
    }
  }
  PlayerPolynomial out;
  out.dim = player_dim;
  for (auto& [powers, coef] : merged) {
    if (coef != 0.0) out.terms.push_back({coef, powers});
  }
  if (out.terms.empty()) out.terms.push_back({0.0, std::vector<int>(player_dim, 0)});
  return out;
}

bool polymatrix_edges_polynomial(const PolymatrixUtility& pm) {
  return std::all_of(pm.edges.begin(), pm.edges.end(), [](const PolymatrixEdge& e) {
    return std::holds_alternative<BivariatePoly>(e.term);
  });
}

double space_scale(const StrategySpace& space) {
  switch (space.kind) {
    case SpaceKind::Box: {
      double scale = 0.0;
      for (int d = 0; d < space.dim; ++d) scale = std::max(scale, space.upper[d] - space.lower[d]);
      return scale > 0.0 ? scale : 1.0;
    }
    case SpaceKind::Simplex:
      return 1.0;
    case SpaceKind::Circle:
      return std::numbers::pi;
  }
  return 1.0;
}

// Compass directions that keep steps meaningful for the space geometry.
std::vector<Vec> search_directions(const StrategySpace& space) {
  std::vector<Vec> dirs;
  if (space.kind == SpaceKind::Simplex) {
    // Mass transfers between coordinates stay on the simplex hyperplane.
    for (int i = 0; i < space.dim; ++i) {
      for (int j = 0; j < space.dim; ++j) {
        if (i == j) continue;
        Vec d(space.dim, 0.0);
        d[i] = 1.0;
        d[j] = -1.0;
        dirs.push_back(std::move(d));
      }
    }
    return dirs;
  }
  for (int i = 0; i < space.dim; ++i) {
    Vec d(space.dim, 0.0);
    d[i] = 1.0;
    dirs.push_back(d);
    d[i] = -1.0;
    dirs.push_back(std::move(d));
  }
  return dirs;
}

Vec ascend_pattern(const InducedObjective& objective, const StrategySpace& space, Vec x,
                   int iterations) {
  const std::vector<Vec> dirs = search_directions(space);
  double step = 0.25 * space_scale(space);
  double fx = objective.eval(x);
  for (int it = 0; it < iterations && step > 1e-10; ++it) {
    bool improved = false;
    for (const Vec& d : dirs) {
      Vec y(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + step * d[k];
      y = project(space, y);
      double fy = objective.eval(y);
      if (fy > fx + 1e-15) {
        x = std::move(y);
        fx = fy;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

Vec ascend_gradient(const InducedObjective& objective, const StrategySpace& space, Vec x,
                    int iterations) {
  double step = 0.25 * space_scale(space);
  double fx = objective.polynomial.eval(x);
  for (int it = 0; it < iterations; ++it) {
    Vec g = objective.polynomial.gradient(x);
    double gnorm = 0.0;
    for (double v : g) gnorm = std::max(gnorm, std::abs(v));
    if (gnorm <= 1e-14) break;

    bool improved = false;
    double trial_step = step;
    // Step halving until the projected point improves.
    for (int half = 0; half < 30; ++half) {
      Vec y(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + trial_step * g[k];
      y = project(space, y);
      double fy = objective.polynomial.eval(y);
      if (fy > fx + 1e-15) {
        x = std::move(y);
        fx = fy;
        step = trial_step * 1.5;
        improved = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!improved) break;  // stationary (or boundary) point
  }
  return x;
}

}  // namespace

double InducedObjective::eval(const Vec& x) const {
  switch (kind) {
    case Kind::Univariate:
      return univariate.eval(x[0]);
    case Kind::Polynomial:
      return polynomial.eval(x);
    case Kind::Callable:
      return callable(x);
  }
  return 0.0;
}

InducedObjective induce_objective(const ContinuousGame& game, int player,
                                  const Profile& others) {
  InducedObjective obj;
  const int dim = game.spaces[player].dim;
  const bool interval = game.spaces[player].kind == SpaceKind::Box && dim == 1;

  const UtilityFunction& u = game.utilities[player];
  if (const auto* poly = std::get_if<PolynomialUtility>(&u)) {
    obj.polynomial = collapse_full_polynomial(poly->poly, player, others, dim);
    obj.kind = InducedObjective::Kind::Polynomial;
  } else if (const auto* pm = std::get_if<PolymatrixUtility>(&u)) {
    if (polymatrix_edges_polynomial(*pm) && !game.is_finite()) {
      obj.polynomial = collapse_polymatrix(*pm, player, others, dim);
      obj.kind = InducedObjective::Kind::Polynomial;
    }
  }

  if (obj.kind == InducedObjective::Kind::Polynomial && interval) {
    obj.kind = InducedObjective::Kind::Univariate;
    obj.univariate = obj.polynomial.to_univariate();
    obj.univariate.trim(1e-300);
  } else if (obj.kind == InducedObjective::Kind::Callable) {
    obj.callable = [&game, player, others](const Vec& x) {
      return expected_utility_vs_pure(game, player, x, others);
    };
  }
  return obj;
}

BestResponse best_response_univariate_poly(const UnivariatePoly& objective, double lo,
                                           double hi) {
  BestResponse br;
  br.certified_global = true;
  if (objective.degree() <= 0) {
    br.strategy = {lo};
    br.value = objective.coef.empty() ? 0.0 : objective.coef[0];
    return br;
  }
  UnivariateMax m = maximize_univariate(objective, lo, hi);
  br.strategy = {m.arg};
  br.value = m.value;
  return br;
}

BestResponse best_response_multistart(const InducedObjective& objective,
                                      const StrategySpace& space,
                                      const std::vector<Vec>& warm_starts,
                                      const MultistartConfig& config, Rng& rng) {
  if (config.starts < 1) throw std::invalid_argument("multistart needs at least one start");
  std::vector<Vec> starts;
  starts.reserve(warm_starts.size() + config.starts);
  for (const Vec& w : warm_starts) starts.push_back(project(space, w));
  for (int s = 0; s < config.starts; ++s) starts.push_back(sample(space, rng));

  const bool gradient_path = objective.kind != InducedObjective::Kind::Callable;

  BestResponse best;
  bool first = true;
  for (const Vec& start : starts) {
    Vec x = gradient_path ? ascend_gradient(objective, space, start, config.iterations)
                          : ascend_pattern(objective, space, start, config.iterations);
    double value = objective.eval(x);
    if (first || value > best.value) {
      best.strategy = std::move(x);
      best.value = value;
      first = false;
    }
  }
  best.certified_global = false;
  return best;
}

BestResponse best_response(const ContinuousGame& game, int player, const Profile& others,
                           const std::vector<Vec>& subgame_atoms, const OracleConfig& config,
                           Rng& rng) {
  BestResponse br;

  if (game.is_finite()) {
    // The strategy set is an explicit finite list; enumeration is exact.
    const std::vector<Vec>& atoms = game.finite_atoms[player];
    bool first = true;
    for (const Vec& atom : atoms) {
      double value = expected_utility_vs_pure(game, player, atom, others);
      if (first || value > br.value) {
        br.strategy = atom;
        br.value = value;
        first = false;
      }
    }
    br.certified_global = true;
    return br;
  }

  InducedObjective objective = induce_objective(game, player, others);
  const StrategySpace& space = game.spaces[player];

  const bool exact_applicable = objective.kind == InducedObjective::Kind::Univariate;
  bool use_exact;
  switch (config.mode) {
    case OracleConfig::Mode::PolyExact:
      if (!exact_applicable) {
        throw std::invalid_argument(
            "poly-exact oracle requested but the induced objective is not a univariate "
            "polynomial over an interval");
      }
      use_exact = true;
      break;
    case OracleConfig::Mode::Multistart:
      use_exact = false;
      break;
    case OracleConfig::Mode::Auto:
    default:
      use_exact = exact_applicable;
      break;
  }

  if (use_exact) {
    br = best_response_univariate_poly(objective.univariate, space.lower[0], space.upper[0]);
  } else {
    br = best_response_multistart(objective, space, subgame_atoms,
                                  {config.starts, config.iterations}, rng);
  }
  // Report the value through the same path the rest of the library uses.
  br.value = expected_utility_vs_pure(game, player, br.strategy, others);
  return br;
}

}  // namespace mogs
