#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mogs/catalog.hpp"
#include "mogs/game.hpp"
#include "mogs/rng.hpp"

using namespace mogs;

namespace {

MixedStrategy random_measure(const StrategySpace& space, Rng& rng, int max_atoms) {
  int n = 1 + static_cast<int>(rng.below(max_atoms));
  std::vector<Vec> atoms;
  Vec weights;
  for (int a = 0; a < n; ++a) {
    atoms.push_back(sample(space, rng));
    weights.push_back(rng.uniform(0.05, 1.0));
  }
  return canonicalize(atoms, weights, space);
}

Profile random_profile(const ContinuousGame& game, Rng& rng, int max_atoms) {
  Profile p;
  for (int i = 0; i < game.players; ++i) {
    p.strategies.push_back(random_measure(game.spaces[i], rng, max_atoms));
  }
  return p;
}

// Product-support reference sum, independent of the library's fast paths.
double naive_expected_utility(const ContinuousGame& game, int player, const Profile& profile) {
  std::vector<int> index(game.players, 0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    std::vector<Vec> point(game.players);
    for (int j = 0; j < game.players; ++j) {
      w *= profile.strategies[j].weights[index[j]];
      point[j] = profile.strategies[j].atoms[index[j]];
    }
    total += w * utility(game, player, point);
    int j = 0;
    for (; j < game.players; ++j) {
      if (++index[j] < profile.strategies[j].support_size()) break;
      index[j] = 0;
    }
    if (j == game.players) break;
  }
  return total;
}

}  // namespace

TEST_CASE("pure utility evaluation") {
  ContinuousGame ex1 = example_game(1);
  CHECK(utility(ex1, 0, {{0.4}, {0.63}}) == doctest::Approx(-0.47248).epsilon(1e-12));
  CHECK(utility(ex1, 1, {{0.4}, {0.63}}) == doctest::Approx(0.47248).epsilon(1e-12));

  // Zero polynomial evaluates to zero everywhere.
  ContinuousGame zero = make_game({StrategySpace::box1d(-1, 1), StrategySpace::box1d(-1, 1)},
                                  {PolynomialUtility{}, PolynomialUtility{}}, false);
  CHECK(utility(zero, 0, {{0.3}, {-0.8}}) == 0.0);

  ContinuousGame torus = example_game(3);
  CHECK(utility(torus, 0, {{0.0}, {0.0}}) == doctest::Approx(0.0));
  CHECK(utility(torus, 1, {{0.0}, {0.0}}) ==
        doctest::Approx(1.5 * std::cos(std::acos(-1.0) / 8) - 1.0).epsilon(1e-12));

  CHECK_THROWS_AS(utility(ex1, 0, {{0.4}}), std::invalid_argument);
}

TEST_CASE("expected utility") {
  ContinuousGame ex1 = example_game(1);

  SUBCASE("all-dirac profile equals the pure evaluation") {
    Profile p{{dirac({0.4}), dirac({0.63})}};
    CHECK(expected_utility(ex1, 0, p) == doctest::Approx(-0.47248).epsilon(1e-12));
    CHECK(expected_utility(ex1, 1, p) == doctest::Approx(0.47248).epsilon(1e-12));
  }
  SUBCASE("mixed row against a pure column") {
    StrategySpace box = StrategySpace::box1d(-1, 1);
    Profile p{{canonicalize({{-1.0}, {1.0}}, {0.5, 0.5}, box), dirac({0.0})}};
    CHECK(expected_utility(ex1, 0, p) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(expected_utility(ex1, 1, p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("matches the naive product-support sum") {
    Rng rng(11);
    for (int t = 0; t < 25; ++t) {
      Profile p = random_profile(ex1, rng, 4);
      for (int i = 0; i < 2; ++i) {
        CHECK(expected_utility(ex1, i, p) ==
              doctest::Approx(naive_expected_utility(ex1, i, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("expected utility vs pure deviation") {
  ContinuousGame ex1 = example_game(1);
  Profile p{{dirac({0.123}), dirac({0.63})}};
  CHECK(expected_utility_vs_pure(ex1, 0, {0.4}, p) == doctest::Approx(-0.47248).epsilon(1e-12));

  StrategySpace box = StrategySpace::box1d(-1, 1);
  Profile q{{canonicalize({{-1.0}, {1.0}}, {0.5, 0.5}, box), dirac({0.9})}};
  CHECK(expected_utility_vs_pure(ex1, 1, {0.0}, q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("multilinearity in each player's weights") {
  ContinuousGame ex2 = example_game(2);
  StrategySpace box = StrategySpace::box1d(-1, 1);
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    MixedStrategy p = random_measure(box, rng, 3);
    MixedStrategy q = random_measure(box, rng, 3);
    MixedStrategy other = random_measure(box, rng, 3);
    double alpha = rng.uniform();

    std::vector<Vec> atoms = p.atoms;
    Vec weights;
    for (double w : p.weights) weights.push_back(alpha * w);
    for (std::size_t a = 0; a < q.atoms.size(); ++a) {
      atoms.push_back(q.atoms[a]);
      weights.push_back((1 - alpha) * q.weights[a]);
    }
    MixedStrategy mixture = canonicalize(atoms, weights, box);

    Profile profile_p{{p, other}};
    Profile profile_q{{q, other}};
    Profile profile_mix{{mixture, other}};
    double lhs = expected_utility(ex2, 0, profile_mix);
    double rhs = alpha * expected_utility(ex2, 0, profile_p) +
                 (1 - alpha) * expected_utility(ex2, 0, profile_q);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("polymatrix fast path equals the naive sum") {
  Rng gen(2025);
  for (int players : {2, 3, 4}) {
    ContinuousGame game = random_polynomial_polymatrix(players, 4, 3, {}, gen);
    Rng rng(55 + players);
    for (int t = 0; t < 10; ++t) {
      Profile p = random_profile(game, rng, 4);
      for (int i = 0; i < players; ++i) {
        CHECK(expected_utility(game, i, p) ==
              doctest::Approx(naive_expected_utility(game, i, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("declared zero-sum games sum to zero on random profiles") {
  Rng rng(9);
  for (int id : {1, 4, 5}) {
    ContinuousGame game = example_game(id);
    CHECK(game.zero_sum_verified);
    for (int t = 0; t < 20; ++t) {
      Profile p = random_profile(game, rng, 3);
      double sum = 0.0;
      for (int i = 0; i < game.players; ++i) sum += expected_utility(game, i, p);
      CHECK(std::abs(sum) <= 1e-9);
    }
  }
}

TEST_CASE("game validation") {
  // A false zero-sum declaration is rejected at load time.
  std::vector<MonomialTerm> u1{{1.0, {{1}, {0}}}};
  std::vector<MonomialTerm> u2{{1.0, {{0}, {1}}}};
  CHECK_THROWS_AS(make_game({StrategySpace::box1d(-1, 1), StrategySpace::box1d(-1, 1)},
                            {PolynomialUtility{SparsePolynomial::make(u1)},
                             PolynomialUtility{SparsePolynomial::make(u2)}},
                            /*zero_sum=*/true),
                  std::invalid_argument);

  // Exponent block sized to the wrong dimension.
  std::vector<MonomialTerm> bad{{1.0, {{1, 2}, {0}}}};
  CHECK_THROWS_AS(make_game({StrategySpace::box1d(-1, 1), StrategySpace::box1d(-1, 1)},
                            {PolynomialUtility{SparsePolynomial::make(bad)},
                             PolynomialUtility{}},
                            false),
                  std::invalid_argument);

  CHECK_THROWS_AS(finite_atom_index(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(finite_atom_index(5.0, 4), std::invalid_argument);
  CHECK(finite_atom_index(3.0, 4) == 2);
}

TEST_CASE("restrict fills tensors that match direct evaluation") {
  ContinuousGame ex1 = example_game(1);

  SUBCASE("1x1 restriction is a pair of scalars") {
    FiniteSubgame sub = restrict_game(ex1, {{{0.4}}, {{0.63}}});
    CHECK(sub.payoffs[0].data.size() == 1);
    CHECK(sub.payoffs[0].data[0] == doctest::Approx(-0.47248).epsilon(1e-12));
    CHECK(sub.payoffs[1].data[0] == doctest::Approx(0.47248).epsilon(1e-12));
    CHECK(sub.zero_sum);
  }
  SUBCASE("2x2 restriction matches utility calls") {
    FiniteSubgame sub = restrict_game(ex1, {{{-1.0}, {1.0}}, {{0.0}, {1.0}}});
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        std::vector<Vec> point{sub.strategy_lists[0][a], sub.strategy_lists[1][b]};
        for (int i = 0; i < 2; ++i) {
          CHECK(sub.payoffs[i].at({a, b}) == doctest::Approx(utility(ex1, i, point)).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("empty list is rejected") {
    CHECK_THROWS_AS(restrict_game(ex1, {{}, {{0.5}}}), std::invalid_argument);
  }
  SUBCASE("polymatrix restriction keeps pairwise structure") {
    ContinuousGame ex5 = example_game(5);
    FiniteSubgame sub = restrict_game(ex5, {{{0.1}, {-0.5}}, {{0.2}}, {{0.9}, {-0.9}}});
    CHECK(sub.polymatrix);
    CHECK(sub.zero_sum);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 1; ++b) {
        for (int c = 0; c < 2; ++c) {
          std::vector<Vec> point{sub.strategy_lists[0][a], sub.strategy_lists[1][b],
                                 sub.strategy_lists[2][c]};
          for (int i = 0; i < 3; ++i) {
            CHECK(sub.payoffs[i].at({a, b, c}) ==
                  doctest::Approx(utility(ex5, i, point)).epsilon(1e-12));
          }
        }
      }
    }
  }
}
