#include "mogs/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mogs/metrics.hpp"

namespace mogs {

namespace {

void check_dim(const StrategySpace& space, const Vec& x) {
  if (static_cast<int>(x.size()) != space.dim) {
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match space dimension " +
                                std::to_string(space.dim));
  }
}

}  // namespace

StrategySpace StrategySpace::box(Vec lo, Vec hi) {
  if (lo.empty() || lo.size() != hi.size()) {
    throw std::invalid_argument("box bounds must be nonempty and equal-sized");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("box lower bound exceeds upper bound");
  }
  StrategySpace s;
  s.kind = SpaceKind::Box;
  s.dim = static_cast<int>(lo.size());
  s.lower = std::move(lo);
  s.upper = std::move(hi);
  s.metric = MetricKind::Euclidean;
  return s;
}

StrategySpace StrategySpace::simplex(int dimension) {
  if (dimension < 1) throw std::invalid_argument("simplex dimension must be >= 1");
  StrategySpace s;
  s.kind = SpaceKind::Simplex;
  s.dim = dimension;
  s.metric = MetricKind::Euclidean;
  return s;
}

StrategySpace StrategySpace::circle(MetricKind metric) {
  StrategySpace s;
  s.kind = SpaceKind::Circle;
  s.dim = 1;
  s.metric = metric;
  return s;
}

bool contains(const StrategySpace& space, const Vec& x, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be nonnegative");
  check_dim(space, x);
  switch (space.kind) {
    case SpaceKind::Box:
      for (int i = 0; i < space.dim; ++i) {
        if (x[i] < space.lower[i] - tol || x[i] > space.upper[i] + tol) return false;
      }
      return true;
    case SpaceKind::Simplex: {
      double sum = 0.0;
      for (double v : x) {
        if (v < -tol) return false;
        sum += v;
      }
      return std::abs(sum - 1.0) <= kSimplexSumTol + tol;
    }
    case SpaceKind::Circle:
      // Every angle has a canonical representative in range.
      return std::isfinite(x[0]);
  }
  return false;
}

Vec sample(const StrategySpace& space, Rng& rng) {
  switch (space.kind) {
    case SpaceKind::Box: {
      Vec x(space.dim);
      for (int i = 0; i < space.dim; ++i) x[i] = rng.uniform(space.lower[i], space.upper[i]);
      return x;
    }
    case SpaceKind::Simplex: {
      // Normalized exponentials give Dirichlet(1,...,1), uniform on the simplex.
      Vec x(space.dim);
      double sum = 0.0;
      for (int i = 0; i < space.dim; ++i) {
        double u = rng.uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        x[i] = -std::log(u);
        sum += x[i];
      }
      for (double& v : x) v /= sum;
      return x;
    }
    case SpaceKind::Circle:
      return {rng.uniform(-std::numbers::pi, std::numbers::pi)};
  }
  throw std::logic_error("unreachable");
}

double wrap_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta + std::numbers::pi, two_pi);
  if (t < 0) t += two_pi;
  return t - std::numbers::pi;
}

Vec project(const StrategySpace& space, const Vec& x) {
  check_dim(space, x);
  switch (space.kind) {
    case SpaceKind::Box: {
      Vec y(space.dim);
      for (int i = 0; i < space.dim; ++i) y[i] = std::clamp(x[i], space.lower[i], space.upper[i]);
      return y;
    }
    case SpaceKind::Simplex: {
      // Sorting-based Euclidean projection onto the probability simplex.
      Vec sorted = x;
      std::sort(sorted.begin(), sorted.end(), std::greater<double>());
      double cumulative = 0.0;
      double theta = 0.0;
      int rho = 0;
      for (int i = 0; i < space.dim; ++i) {
        cumulative += sorted[i];
        double candidate = (cumulative - 1.0) / (i + 1);
        if (sorted[i] - candidate > 0) {
          rho = i + 1;
          theta = candidate;
        }
      }
      Vec y(space.dim);
      for (int i = 0; i < space.dim; ++i) y[i] = std::max(0.0, x[i] - theta);
      (void)rho;
      return y;
    }
    case SpaceKind::Circle:
      return {wrap_angle(x[0])};
  }
  throw std::logic_error("unreachable");
}

MixedStrategy dirac(Vec atom) {
  MixedStrategy m;
  m.atoms.push_back(std::move(atom));
  m.weights.push_back(1.0);
  return m;
}

MixedStrategy canonicalize(std::vector<Vec> atoms, Vec weights,
                           const StrategySpace& space, double tau) {
  if (atoms.size() != weights.size()) {
    throw std::invalid_argument("atom/weight lists differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (atoms.empty() || total <= 0.0) throw std::invalid_argument("empty support");

  std::vector<Vec> merged_atoms;
  Vec merged_weights;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (weights[a] <= 0.0) continue;
    Vec canonical = project(space, atoms[a]);
    bool merged = false;
    for (std::size_t b = 0; b < merged_atoms.size(); ++b) {
      if (ground_distance(space, merged_atoms[b], canonical) <= tau) {
        // Mass-weighted midpoint, pulled back onto the space.
        double wa = merged_weights[b];
        double wb = weights[a];
        Vec mix(space.dim);
        for (int d = 0; d < space.dim; ++d) {
          mix[d] = (wa * merged_atoms[b][d] + wb * canonical[d]) / (wa + wb);
        }
        merged_atoms[b] = project(space, mix);
        merged_weights[b] = wa + wb;
        merged = true;
        break;
      }
    }
    if (!merged) {
      merged_atoms.push_back(std::move(canonical));
      merged_weights.push_back(weights[a]);
    }
  }

  // Merging can move atoms; repeat until the support is tau-separated.
  bool changed = true;
  while (changed && merged_atoms.size() > 1) {
    changed = false;
    for (std::size_t a = 0; a < merged_atoms.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < merged_atoms.size() && !changed; ++b) {
        if (ground_distance(space, merged_atoms[a], merged_atoms[b]) <= tau) {
          double wa = merged_weights[a];
          double wb = merged_weights[b];
          Vec mix(space.dim);
          for (int d = 0; d < space.dim; ++d) {
            mix[d] = (wa * merged_atoms[a][d] + wb * merged_atoms[b][d]) / (wa + wb);
          }
          merged_atoms[a] = project(space, mix);
          merged_weights[a] = wa + wb;
          merged_atoms.erase(merged_atoms.begin() + b);
          merged_weights.erase(merged_weights.begin() + b);
          changed = true;
        }
      }
    }
  }

  // Renormalize unless the sum is already within float dust of one; the skip
  // keeps repeated canonicalization bit-identical.
  double sum = std::accumulate(merged_weights.begin(), merged_weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-13) {
    for (double& w : merged_weights) w /= sum;
  }

  MixedStrategy out;
  out.atoms = std::move(merged_atoms);
  out.weights = std::move(merged_weights);
  return out;
}

std::string describe(const StrategySpace& space) {
  switch (space.kind) {
    case SpaceKind::Box: {
      std::string s = "box[";
      for (int i = 0; i < space.dim; ++i) {
        if (i) s += ", ";
        s += std::to_string(space.lower[i]) + ".." + std::to_string(space.upper[i]);
      }
      return s + "]";
    }
    case SpaceKind::Simplex:
      return "simplex(" + std::to_string(space.dim) + ")";
    case SpaceKind::Circle:
      return space.metric == MetricKind::Arc ? "circle(arc)" : "circle(chord)";
  }
  return "?";
}

}  // namespace mogs
