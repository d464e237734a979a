#include "mogs/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace mogs {

SparsePolynomial SparsePolynomial::make(std::vector<MonomialTerm> raw_terms) {
  std::map<std::vector<std::vector<int>>, double> merged;
  for (MonomialTerm& t : raw_terms) merged[std::move(t.powers)] += t.coef;
  SparsePolynomial p;
  for (auto& [powers, coef] : merged) {
    if (coef != 0.0) p.terms.push_back({coef, powers});
  }
  return p;
}

double SparsePolynomial::eval(const std::vector<Vec>& profile) const {
  double sum = 0.0;
  for (const MonomialTerm& t : terms) {
    double prod = t.coef;
    for (std::size_t j = 0; j < t.powers.size(); ++j) {
      for (std::size_t d = 0; d < t.powers[j].size(); ++d) {
        for (int e = 0; e < t.powers[j][d]; ++e) prod *= profile[j][d];
      }
    }
    sum += prod;
  }
  return sum;
}

int SparsePolynomial::total_degree() const {
  int deg = 0;
  for (const MonomialTerm& t : terms) {
    int td = 0;
    for (const auto& block : t.powers)
      for (int e : block) td += e;
    deg = std::max(deg, td);
  }
  return deg;
}

double UnivariatePoly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
  return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
  UnivariatePoly d;
  if (coef.size() <= 1) {
    d.coef = {0.0};
    return d;
  }
  d.coef.resize(coef.size() - 1);
  for (std::size_t i = 1; i < coef.size(); ++i) d.coef[i - 1] = coef[i] * static_cast<double>(i);
  return d;
}

void UnivariatePoly::trim(double rel_tol) {
  double scale = 0.0;
  for (double c : coef) scale = std::max(scale, std::abs(c));
  while (coef.size() > 1 && std::abs(coef.back()) <= rel_tol * scale) coef.pop_back();
  if (coef.empty()) coef = {0.0};
}

namespace {

// Bisection on a sign change of f in [a, b]; returns the midpoint if the
// bracket never closes.
double bisect(const UnivariatePoly& f, double a, double b) {
  double fa = f.eval(a);
  double fb = f.eval(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) return 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    double fm = f.eval(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fa > 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
    if (b - a <= 1e-15 * (1.0 + std::abs(a))) break;
  }
  return 0.5 * (a + b);
}

// Newton polish of a companion-matrix root estimate, with bisection on an
// expanding bracket as the fallback for stalled steps.
double refine_root(const UnivariatePoly& f, const UnivariatePoly& fprime,
                   double estimate, double lo, double hi) {
  double x = estimate;
  for (int it = 0; it < 60; ++it) {
    double fx = f.eval(x);
    double dfx = fprime.eval(x);
    if (dfx == 0.0) break;
    double step = fx / dfx;
    double next = std::clamp(x - step, lo, hi);
    if (std::abs(next - x) <= 1e-15 * (1.0 + std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  if (std::abs(f.eval(x)) <= std::abs(f.eval(estimate))) {
    if (std::abs(f.eval(x)) < 1e-10 * (1.0 + std::abs(f.eval(estimate)))) return x;
  }
  // Newton stalled (multiple roots, flat regions): bracket around the estimate.
  double span = 1e-8 * (1.0 + hi - lo);
  for (int attempt = 0; attempt < 24; ++attempt, span *= 4.0) {
    double a = std::max(lo, estimate - span);
    double b = std::min(hi, estimate + span);
    if ((f.eval(a) > 0) != (f.eval(b) > 0)) return bisect(f, a, b);
    if (a == lo && b == hi) break;
  }
  return std::abs(f.eval(x)) < std::abs(f.eval(estimate)) ? x : estimate;
}

}  // namespace

std::vector<double> real_roots_in_interval(const UnivariatePoly& poly, double lo, double hi) {
  UnivariatePoly p = poly;
  p.trim(1e-14);
  const int deg = p.degree();
  if (deg < 1) return {};
  if (deg == 1) {
    double r = -p.coef[0] / p.coef[1];
    if (r >= lo && r <= hi) return {r};
    return {};
  }

  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  double lead = p.coef[deg];
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p.coef[i] / lead;
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> eigensolver(companion, /*computeEigenvectors=*/false);
  if (eigensolver.info() != Eigen::Success) {
    throw std::runtime_error("companion eigenvalue computation failed");
  }

  const double imag_tol = 1e-8 * (1.0 + (hi - lo));
  const UnivariatePoly dp = p.derivative();

  std::vector<double> roots;
  for (int k = 0; k < deg; ++k) {
    std::complex<double> z = eigensolver.eigenvalues()[k];
    if (std::abs(z.imag()) > imag_tol) continue;
    double estimate = z.real();
    if (estimate < lo - 1e-9 || estimate > hi + 1e-9) continue;
    double refined = std::clamp(refine_root(p, dp, std::clamp(estimate, lo, hi), lo, hi), lo, hi);
    roots.push_back(refined);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }),
              roots.end());
  return roots;
}

UnivariateMax maximize_univariate(const UnivariatePoly& poly, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("interval must satisfy lo < hi");
  UnivariateMax best{lo, poly.eval(lo)};
  auto consider = [&](double x) {
    double v = poly.eval(x);
    if (v > best.value) best = {x, v};
  };
  consider(hi);
  for (double root : real_roots_in_interval(poly.derivative(), lo, hi)) consider(root);
  return best;
}

double PlayerPolynomial::eval(const Vec& x) const {
  double sum = 0.0;
  for (const Term& t : terms) {
    double prod = t.coef;
    for (int d = 0; d < dim; ++d)
      for (int e = 0; e < t.powers[d]; ++e) prod *= x[d];
    sum += prod;
  }
  return sum;
}

Vec PlayerPolynomial::gradient(const Vec& x) const {
  Vec g(dim, 0.0);
  for (const Term& t : terms) {
    for (int d = 0; d < dim; ++d) {
      if (t.powers[d] == 0) continue;
      double prod = t.coef * t.powers[d];
      for (int k = 0; k < dim; ++k) {
        int e = t.powers[k] - (k == d ? 1 : 0);
        for (int i = 0; i < e; ++i) prod *= x[k];
      }
      g[d] += prod;
    }
  }
  return g;
}

UnivariatePoly PlayerPolynomial::to_univariate() const {
  if (dim != 1) throw std::logic_error("to_univariate requires a one-dimensional player");
  int deg = 0;
  for (const Term& t : terms) deg = std::max(deg, t.powers[0]);
  UnivariatePoly p;
  p.coef.assign(deg + 1, 0.0);
  for (const Term& t : terms) p.coef[t.powers[0]] += t.coef;
  return p;
}

}  // namespace mogs
