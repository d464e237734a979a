#pragma once

#include <utility>
#include <vector>

#include "mogs/game.hpp"
#include "mogs/rng.hpp"

namespace mogs {

// The worked examples: 1 zero-sum polynomial on [-1,1]^2, 2 general-sum
// polynomial, 3 torus game, 4 General Blotto on two 4-simplices, 5 three-player
// zero-sum polynomial network.
ContinuousGame example_game(int id);

// Evaluators behind the non-polynomial examples, shared with the file loader.
UtilityFunction make_torus_utility(int self, int other, double alpha, double phi);
UtilityFunction make_blotto_utility(double sign);

// Zero-sum separable network over finite action sets: a random matrix per
// edge, transposed and negated on the reverse edge. Atoms sit at 1..actions.
// An empty edge list means the complete graph.
ContinuousGame random_finite_polymatrix(int players, int actions,
                                        std::vector<std::pair<int, int>> edges, Rng& rng);

// Continuous analogue on [-1,1] per player: a few random monomials of total
// degree <= degree per edge, with the negated transpose on the reverse edge.
ContinuousGame random_polynomial_polymatrix(int players, int degree, int monomials_per_edge,
                                            std::vector<std::pair<int, int>> edges, Rng& rng);

// General-sum game with random polynomial payoffs over [0,1]^dimension per
// player, coefficients standard normal, total degree <= degree.
ContinuousGame random_polynomial_game(int players, int dimension, int degree,
                                      int monomial_count, Rng& rng);

}  // namespace mogs
