#pragma once

#include <utility>
#include <vector>

#include "mogs/strategy.hpp"
#include "mogs/transport.hpp"

namespace mogs {

// Ground metric on a strategy space: Euclidean norm for boxes and simplices;
// for the circle either the shorter arc (default) or the chord through the
// plane embedding.
double ground_distance(const StrategySpace& space, const Vec& x, const Vec& y);

struct WassersteinResult {
  double distance = 0.0;
  TransportPlan plan;
};

// Order-1 Wasserstein distance between finitely supported measures over the
// same space, solved as a transportation LP over support pairs.
WassersteinResult wasserstein(const MixedStrategy& p, const MixedStrategy& q,
                              const StrategySpace& space);

// Half the l1 gap between the measures, atoms matched within the dedup radius.
double total_variation(const MixedStrategy& p, const MixedStrategy& q,
                       const StrategySpace& space, double tau = kDedupRadius);

struct WassersteinBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool dmin_defined = true;  // false when the union of supports is one point
};

// Sandwich bounds d_min * d_TV <= d_W <= d_max * d_TV, with d_min the smallest
// ground distance over distinct support pairs and d_max the largest overall.
WassersteinBounds wasserstein_bounds(const MixedStrategy& p, const MixedStrategy& q,
                                     const StrategySpace& space);

struct MetricReport {
  double wasserstein = 0.0;
  double total_variation = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool dmin_defined = true;
  TransportPlan plan;
};

MetricReport metric_report(const MixedStrategy& p, const MixedStrategy& q,
                           const StrategySpace& space);

// Max over players of the per-player Wasserstein distance (Chebyshev product
// metric on profiles).
double profile_distance(const Profile& a, const Profile& b,
                        const std::vector<StrategySpace>& spaces);

}  // namespace mogs
