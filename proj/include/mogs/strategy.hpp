#pragma once

#include <string>
#include <vector>

#include "mogs/rng.hpp"

namespace mogs {

using Vec = std::vector<double>;

inline constexpr double kDedupRadius = 1e-8;      // atom merge radius
inline constexpr double kSimplexSumTol = 1e-9;    // membership tolerance on the coordinate sum
inline constexpr double kWeightSumTol = 1e-12;

enum class SpaceKind { Box, Simplex, Circle };
enum class MetricKind { Euclidean, Arc };

// Compact strategy set of one player: an axis-aligned box, a probability
// simplex, or the circle represented as [-pi, pi) with wraparound.
struct StrategySpace {
  SpaceKind kind = SpaceKind::Box;
  Vec lower;  // Box only
  Vec upper;  // Box only
  int dim = 1;
  MetricKind metric = MetricKind::Euclidean;

  static StrategySpace box(Vec lo, Vec hi);
  static StrategySpace box1d(double lo, double hi) { return box({lo}, {hi}); }
  static StrategySpace simplex(int dimension);
  static StrategySpace circle(MetricKind metric = MetricKind::Arc);

  int dimension() const { return dim; }
};

bool contains(const StrategySpace& space, const Vec& x, double tol);

// Uniform sample: per-coordinate for Box, Dirichlet(1,...,1) for Simplex,
// [-pi, pi) for Circle. Deterministic for a fixed rng state.
Vec sample(const StrategySpace& space, Rng& rng);

// Nearest point of the space (circle coordinates are wrapped, boxes clamped,
// simplex uses the sorting-based Euclidean projection).
Vec project(const StrategySpace& space, const Vec& x);

// Wrap an angle into the canonical range [-pi, pi).
double wrap_angle(double theta);

// Finitely supported probability measure over one strategy space.
// Construction enforces: weights positive and summing to one, atoms pairwise
// farther than the dedup radius apart in the ground metric.
struct MixedStrategy {
  std::vector<Vec> atoms;
  Vec weights;

  int support_size() const { return static_cast<int>(atoms.size()); }
};

MixedStrategy dirac(Vec atom);

// Merge atoms closer than tau (mass-weighted position, projected back to the
// space), drop zero weights, renormalize. Throws on empty support.
MixedStrategy canonicalize(std::vector<Vec> atoms, Vec weights,
                           const StrategySpace& space,
                           double tau = kDedupRadius);

struct Profile {
  std::vector<MixedStrategy> strategies;

  int players() const { return static_cast<int>(strategies.size()); }
};

std::string describe(const StrategySpace& space);

}  // namespace mogs
