#include "mogs/catalog.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace mogs {

namespace {

UtilityFunction polynomial_utility(std::vector<MonomialTerm> terms) {
  return PolynomialUtility{SparsePolynomial::make(std::move(terms))};
}

BivariatePoly bivariate(std::vector<std::tuple<double, int, int>> entries) {
  std::vector<MonomialTerm> terms;
  for (auto [coef, self_pow, other_pow] : entries) {
    terms.push_back({coef, {{self_pow}, {other_pow}}});
  }
  return BivariatePoly{SparsePolynomial::make(std::move(terms))};
}

ContinuousGame example1() {
  std::vector<StrategySpace> spaces{StrategySpace::box1d(-1, 1), StrategySpace::box1d(-1, 1)};
  // u(x, y) = 2xy^2 - x^2 - y, player 2 gets -u.
  std::vector<MonomialTerm> u1{{2, {{1}, {2}}}, {-1, {{2}, {0}}}, {-1, {{0}, {1}}}};
  std::vector<MonomialTerm> u2{{-2, {{1}, {2}}}, {1, {{2}, {0}}}, {1, {{0}, {1}}}};
  return make_game(std::move(spaces), {polynomial_utility(u1), polynomial_utility(u2)},
                   /*zero_sum=*/true, {}, "example1");
}

ContinuousGame example2() {
  std::vector<StrategySpace> spaces{StrategySpace::box1d(-1, 1), StrategySpace::box1d(-1, 1)};
  std::vector<MonomialTerm> u1{
      {-3, {{2}, {2}}}, {-2, {{3}, {0}}}, {3, {{0}, {3}}}, {2, {{1}, {1}}}, {-1, {{1}, {0}}}};
  std::vector<MonomialTerm> u2{
      {2, {{2}, {2}}}, {1, {{2}, {1}}}, {-4, {{0}, {3}}}, {-1, {{2}, {0}}}, {4, {{0}, {1}}}};
  return make_game(std::move(spaces), {polynomial_utility(u1), polynomial_utility(u2)},
                   /*zero_sum=*/false, {}, "example2");
}

ContinuousGame example3() {
  std::vector<StrategySpace> spaces{StrategySpace::circle(), StrategySpace::circle()};
  const double pi = std::acos(-1.0);
  std::vector<UtilityFunction> utilities{make_torus_utility(0, 1, 1.0, 0.0),
                                         make_torus_utility(1, 0, 1.5, pi / 8.0)};
  return make_game(std::move(spaces), std::move(utilities), /*zero_sum=*/false, {}, "example3");
}

ContinuousGame example4() {
  std::vector<StrategySpace> spaces{StrategySpace::simplex(5), StrategySpace::simplex(5)};
  std::vector<UtilityFunction> utilities{make_blotto_utility(1.0), make_blotto_utility(-1.0)};
  return make_game(std::move(spaces), std::move(utilities), /*zero_sum=*/true, {}, "example4");
}

ContinuousGame example5() {
  std::vector<StrategySpace> spaces{StrategySpace::box1d(-1, 1), StrategySpace::box1d(-1, 1),
                                    StrategySpace::box1d(-1, 1)};
  PolymatrixUtility u1;
  u1.edges.push_back({1, bivariate({{-2, 1, 2}, {5, 1, 1}, {-1, 0, 1}})});
  u1.edges.push_back({2, bivariate({{-2, 2, 0}, {-4, 1, 1}, {-2, 0, 1}})});
  PolymatrixUtility u2;
  u2.edges.push_back({0, bivariate({{2, 2, 1}, {-2, 0, 2}, {-5, 1, 1}, {1, 1, 0}})});
  u2.edges.push_back({2, bivariate({{-2, 1, 2}, {-2, 2, 0}, {5, 1, 1}})});
  PolymatrixUtility u3;
  u3.edges.push_back({0, bivariate({{4, 0, 2}, {4, 1, 1}, {2, 1, 0}})});
  u3.edges.push_back({1, bivariate({{2, 2, 1}, {2, 0, 2}, {-5, 1, 1}})});
  return make_game(std::move(spaces), {UtilityFunction{std::move(u1)},
                                       UtilityFunction{std::move(u2)},
                                       UtilityFunction{std::move(u3)}},
                   /*zero_sum=*/true, {}, "example5");
}

std::vector<std::pair<int, int>> complete_graph(int players) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < players; ++i)
    for (int k = i + 1; k < players; ++k) edges.push_back({i, k});
  return edges;
}

}  // namespace

UtilityFunction make_torus_utility(int self, int other, double alpha, double phi) {
  BlackBoxUtility u;
  u.builtin = "torus";
  u.params = {static_cast<double>(self), static_cast<double>(other), alpha, phi};
  u.eval = [self, other, alpha, phi](const std::vector<Vec>& x) {
    return alpha * std::cos(x[self][0] - phi) - std::cos(x[self][0] - x[other][0]);
  };
  return u;
}

UtilityFunction make_blotto_utility(double sign) {
  BlackBoxUtility u;
  u.builtin = "blotto";
  u.params = {sign};
  u.eval = [sign](const std::vector<Vec>& x) {
    double total = 0.0;
    for (std::size_t j = 0; j < x[0].size(); ++j) {
      double d = x[0][j] - x[1][j];
      total += (d >= 0 ? 1.0 : -1.0) * d * d;
    }
    return sign * total;
  };
  return u;
}

ContinuousGame example_game(int id) {
  switch (id) {
    case 1: return example1();
    case 2: return example2();
    case 3: return example3();
    case 4: return example4();
    case 5: return example5();
    default: throw std::invalid_argument("example id must be between 1 and 5");
  }
}

ContinuousGame random_finite_polymatrix(int players, int actions,
                                        std::vector<std::pair<int, int>> edges, Rng& rng) {
  if (players < 2 || actions < 1) throw std::invalid_argument("need players >= 2, actions >= 1");
  if (edges.empty()) edges = complete_graph(players);

  std::vector<PolymatrixUtility> utilities(players);
  for (auto [i, k] : edges) {
    MatrixTerm forward;
    forward.rows = actions;
    forward.cols = actions;
    forward.data.resize(static_cast<std::size_t>(actions) * actions);
    for (double& v : forward.data) v = rng.uniform(-1.0, 1.0);

    MatrixTerm backward;  // negated transpose keeps the global sum at zero
    backward.rows = actions;
    backward.cols = actions;
    backward.data.resize(forward.data.size());
    for (int a = 0; a < actions; ++a)
      for (int b = 0; b < actions; ++b)
        backward.data[static_cast<std::size_t>(b) * actions + a] =
            -forward.data[static_cast<std::size_t>(a) * actions + b];

    utilities[i].edges.push_back({k, std::move(forward)});
    utilities[k].edges.push_back({i, std::move(backward)});
  }

  std::vector<StrategySpace> spaces;
  std::vector<std::vector<Vec>> atoms(players);
  for (int i = 0; i < players; ++i) {
    spaces.push_back(StrategySpace::box1d(1.0, static_cast<double>(actions)));
    for (int a = 1; a <= actions; ++a) atoms[i].push_back({static_cast<double>(a)});
  }

  std::vector<UtilityFunction> wrapped;
  for (auto& u : utilities) wrapped.push_back(std::move(u));
  return make_game(std::move(spaces), std::move(wrapped), /*zero_sum=*/true, std::move(atoms),
                   "random_finite_polymatrix");
}

ContinuousGame random_polynomial_polymatrix(int players, int degree, int monomials_per_edge,
                                            std::vector<std::pair<int, int>> edges, Rng& rng) {
  if (players < 2 || degree < 1) throw std::invalid_argument("need players >= 2, degree >= 1");
  if (edges.empty()) edges = complete_graph(players);

  // Exponent pairs with 1 <= a+b <= degree.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      if (a + b >= 1) pairs.push_back({a, b});

  std::vector<PolymatrixUtility> utilities(players);
  for (auto [i, k] : edges) {
    std::vector<MonomialTerm> forward, backward;
    for (int t = 0; t < monomials_per_edge; ++t) {
      auto [a, b] = pairs[rng.below(pairs.size())];
      double coef = rng.normal();
      forward.push_back({coef, {{a}, {b}}});
      backward.push_back({-coef, {{b}, {a}}});
    }
    utilities[i].edges.push_back({k, BivariatePoly{SparsePolynomial::make(std::move(forward))}});
    utilities[k].edges.push_back({i, BivariatePoly{SparsePolynomial::make(std::move(backward))}});
  }

  std::vector<StrategySpace> spaces;
  for (int i = 0; i < players; ++i) spaces.push_back(StrategySpace::box1d(-1.0, 1.0));

  std::vector<UtilityFunction> wrapped;
  for (auto& u : utilities) wrapped.push_back(std::move(u));
  return make_game(std::move(spaces), std::move(wrapped), /*zero_sum=*/true, {},
                   "random_polynomial_polymatrix");
}

ContinuousGame random_polynomial_game(int players, int dimension, int degree,
                                      int monomial_count, Rng& rng) {
  if (players < 2 || dimension < 1 || degree < 1) {
    throw std::invalid_argument("need players >= 2, dimension >= 1, degree >= 1");
  }
  std::vector<StrategySpace> spaces;
  for (int i = 0; i < players; ++i) {
    spaces.push_back(StrategySpace::box(Vec(dimension, 0.0), Vec(dimension, 1.0)));
  }

  std::vector<UtilityFunction> utilities;
  const int num_vars = players * dimension;
  for (int i = 0; i < players; ++i) {
    std::vector<MonomialTerm> terms;
    for (int t = 0; t < monomial_count; ++t) {
      MonomialTerm term;
      term.coef = rng.normal();
      term.powers.assign(players, std::vector<int>(dimension, 0));
      int total = static_cast<int>(rng.below(degree + 1));
      for (int unit = 0; unit < total; ++unit) {
        int var = static_cast<int>(rng.below(num_vars));
        term.powers[var / dimension][var % dimension] += 1;
      }
      terms.push_back(std::move(term));
    }
    utilities.push_back(polynomial_utility(std::move(terms)));
  }
  return make_game(std::move(spaces), std::move(utilities), /*zero_sum=*/false, {},
                   "random_polynomial_game");
}

}  // namespace mogs
