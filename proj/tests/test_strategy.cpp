#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mogs/metrics.hpp"
#include "mogs/rng.hpp"
#include "mogs/strategy.hpp"

using namespace mogs;

TEST_CASE("contains on boxes and simplices") {
  StrategySpace box = StrategySpace::box1d(-1, 1);
  CHECK(contains(box, {0.5}, 0.0));
  CHECK_FALSE(contains(box, {1.2}, 0.1));  // outside by 0.2 > tol
  CHECK(contains(box, {1.05}, 0.1));

  StrategySpace simplex = StrategySpace::simplex(5);
  CHECK(contains(simplex, {0, 1, 0, 0, 0}, 0.0));
  CHECK_FALSE(contains(simplex, {0.5, 0.4, 0, 0, 0}, 0.0));
  CHECK_FALSE(contains(simplex, {-0.1, 1.1, 0, 0, 0}, 0.0));

  CHECK_THROWS_AS(contains(box, {0.5, 0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(contains(box, {0.5}, -1.0), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and stays inside the space") {
  StrategySpace box = StrategySpace::box({-1, 0}, {1, 3});
  StrategySpace simplex = StrategySpace::simplex(5);
  StrategySpace circle = StrategySpace::circle();

  Rng a(42), b(42);
  CHECK(sample(box, a) == sample(box, b));
  CHECK(sample(simplex, a) == sample(simplex, b));
  CHECK(sample(circle, a) == sample(circle, b));

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    CHECK(contains(box, sample(box, rng), 1e-15));
    Vec s = sample(simplex, rng);
    double sum = 0.0;
    for (double v : s) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    double theta = sample(circle, rng)[0];
    CHECK(theta >= -std::numbers::pi);
    CHECK(theta < std::numbers::pi);
  }
}

TEST_CASE("projection") {
  StrategySpace box = StrategySpace::box1d(-1, 1);
  CHECK(project(box, {1.7})[0] == 1.0);
  CHECK(project(box, {-3.0})[0] == -1.0);
  CHECK(project(box, {0.25})[0] == 0.25);

  StrategySpace simplex = StrategySpace::simplex(2);
  Vec p = project(simplex, {0.5, 0.7});
  CHECK(p[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.6).epsilon(1e-12));
  Vec q = project(simplex, {2.0, -1.0});
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(0.0).epsilon(1e-12));

  StrategySpace circle = StrategySpace::circle();
  CHECK(project(circle, {3 * std::numbers::pi / 2})[0] ==
        doctest::Approx(-std::numbers::pi / 2).epsilon(1e-12));
  CHECK(wrap_angle(std::numbers::pi) == doctest::Approx(-std::numbers::pi));
}

TEST_CASE("canonicalize merges, renormalizes and rejects empty support") {
  StrategySpace box = StrategySpace::box1d(-1, 1);

  SUBCASE("identical atoms merge") {
    MixedStrategy m = canonicalize({{0.4}, {0.4}}, {0.5, 0.5}, box, 1e-9);
    REQUIRE(m.support_size() == 1);
    CHECK(m.atoms[0][0] == doctest::Approx(0.4));
    CHECK(m.weights[0] == 1.0);
  }
  SUBCASE("weights renormalize") {
    MixedStrategy m = canonicalize({{0.1}, {0.9}}, {0.3, 0.3}, box, 1e-9);
    REQUIRE(m.support_size() == 2);
    CHECK(m.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("empty support throws") {
    CHECK_THROWS_AS(canonicalize({{0.1}}, {0.0}, box, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize({}, {}, box, 1e-9), std::invalid_argument);
  }
  SUBCASE("merge position is mass weighted") {
    MixedStrategy m = canonicalize({{0.1}, {0.1 + 5e-9}}, {0.75, 0.25}, box, 1e-8);
    REQUIRE(m.support_size() == 1);
    CHECK(m.atoms[0][0] == doctest::Approx(0.1 + 0.25 * 5e-9).epsilon(1e-15));
  }
}

TEST_CASE("canonicalize invariants on random inputs") {
  Rng rng(123);
  StrategySpace box = StrategySpace::box({-1, -1}, {1, 1});
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng.below(6));
    std::vector<Vec> atoms;
    Vec weights;
    for (int a = 0; a < n; ++a) {
      atoms.push_back(sample(box, rng));
      weights.push_back(rng.uniform(0.0, 2.0));
    }
    weights[static_cast<int>(rng.below(n))] += 0.1;  // keep the total positive
    MixedStrategy m = canonicalize(atoms, weights, box);

    double sum = 0.0;
    for (double w : m.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (int a = 0; a < m.support_size(); ++a) {
      for (int b = a + 1; b < m.support_size(); ++b) {
        CHECK(ground_distance(box, m.atoms[a], m.atoms[b]) > kDedupRadius);
      }
    }

    MixedStrategy again = canonicalize(m.atoms, m.weights, box);
    REQUIRE(again.support_size() == m.support_size());
    CHECK(again.atoms == m.atoms);
    CHECK(again.weights == m.weights);
  }
}

TEST_CASE("dirac helper") {
  MixedStrategy d = dirac({0.3, 0.7});
  CHECK(d.support_size() == 1);
  CHECK(d.weights[0] == 1.0);
}
