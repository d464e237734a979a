#include "mogs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mogs {

double ground_distance(const StrategySpace& space, const Vec& x, const Vec& y) {
  if (x.size() != y.size() || static_cast<int>(x.size()) != space.dim) {
    throw std::invalid_argument("ground_distance: dimension mismatch");
  }
  if (space.kind == SpaceKind::Circle) {
    double a = wrap_angle(x[0]);
    double b = wrap_angle(y[0]);
    double diff = std::abs(a - b);
    double arc = std::min(diff, 2.0 * std::numbers::pi - diff);
    if (space.metric == MetricKind::Arc) return arc;
    return 2.0 * std::sin(arc / 2.0);  // chord length
  }
  double sq = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    double diff = x[d] - y[d];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

WassersteinResult wasserstein(const MixedStrategy& p, const MixedStrategy& q,
                              const StrategySpace& space) {
  const int m = p.support_size();
  const int n = q.support_size();
  std::vector<double> cost(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      cost[static_cast<std::size_t>(i) * n + j] = ground_distance(space, p.atoms[i], q.atoms[j]);
  TransportSolution sol = solve_transport(p.weights, q.weights, cost);
  return {sol.cost, std::move(sol.plan)};
}

double total_variation(const MixedStrategy& p, const MixedStrategy& q,
                       const StrategySpace& space, double tau) {
  // Union of supports with atoms matched within tau.
  std::vector<char> q_matched(q.atoms.size(), 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.atoms.size(); ++i) {
    double q_mass = 0.0;
    for (std::size_t j = 0; j < q.atoms.size(); ++j) {
      if (!q_matched[j] && ground_distance(space, p.atoms[i], q.atoms[j]) <= tau) {
        q_matched[j] = 1;
        q_mass += q.weights[j];
      }
    }
    sum += std::abs(p.weights[i] - q_mass);
  }
  for (std::size_t j = 0; j < q.atoms.size(); ++j) {
    if (!q_matched[j]) sum += q.weights[j];
  }
  return 0.5 * sum;
}

WassersteinBounds wasserstein_bounds(const MixedStrategy& p, const MixedStrategy& q,
                                     const StrategySpace& space) {
  std::vector<const Vec*> support;
  for (const Vec& a : p.atoms) support.push_back(&a);
  for (const Vec& a : q.atoms) support.push_back(&a);

  double d_min = std::numeric_limits<double>::infinity();
  double d_max = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      double d = ground_distance(space, *support[a], *support[b]);
      d_max = std::max(d_max, d);
      if (d > kDedupRadius) d_min = std::min(d_min, d);
    }
  }

  WassersteinBounds out;
  if (!std::isfinite(d_min)) {
    // All support points coincide; d_min is undefined over distinct pairs.
    out.dmin_defined = false;
    out.lower = 0.0;
    out.upper = 0.0;
    return out;
  }
  double tv = total_variation(p, q, space);
  out.lower = d_min * tv;
  out.upper = d_max * tv;
  return out;
}

MetricReport metric_report(const MixedStrategy& p, const MixedStrategy& q,
                           const StrategySpace& space) {
  MetricReport r;
  WassersteinResult w = wasserstein(p, q, space);
  WassersteinBounds b = wasserstein_bounds(p, q, space);
  r.wasserstein = w.distance;
  r.plan = std::move(w.plan);
  r.total_variation = total_variation(p, q, space);
  r.lower_bound = b.lower;
  r.upper_bound = b.upper;
  r.dmin_defined = b.dmin_defined;
  return r;
}

double profile_distance(const Profile& a, const Profile& b,
                        const std::vector<StrategySpace>& spaces) {
  if (a.players() != b.players() || a.players() != static_cast<int>(spaces.size())) {
    throw std::invalid_argument("profile_distance: player count mismatch");
  }
  double worst = 0.0;
  for (int i = 0; i < a.players(); ++i) {
    worst = std::max(worst, wasserstein(a.strategies[i], b.strategies[i], spaces[i]).distance);
  }
  return worst;
}

}  // namespace mogs
