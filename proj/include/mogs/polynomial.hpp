#pragma once

#include <vector>

#include "mogs/strategy.hpp"

namespace mogs {

// One monomial of a multi-player polynomial: coef * prod_j prod_d x_j[d]^e.
// powers holds one exponent vector per player, sized to that player's
// dimension.
struct MonomialTerm {
  double coef = 0.0;
  std::vector<std::vector<int>> powers;
};

// Sparse polynomial over the joint strategy variables of all players.
// Construction merges duplicate monomials and drops zero coefficients.
struct SparsePolynomial {
  std::vector<MonomialTerm> terms;

  static SparsePolynomial make(std::vector<MonomialTerm> raw_terms);

  double eval(const std::vector<Vec>& profile) const;
  int total_degree() const;
};

// Dense univariate polynomial c[0] + c[1] x + ... + c[k] x^k.
struct UnivariatePoly {
  Vec coef;

  double eval(double x) const;
  UnivariatePoly derivative() const;
  int degree() const { return static_cast<int>(coef.size()) - 1; }
  void trim(double rel_tol = 0.0);
};

// Real roots inside [lo, hi], found from companion-matrix eigenvalues and
// refined by bisection/Newton to ~1e-12.
std::vector<double> real_roots_in_interval(const UnivariatePoly& poly, double lo, double hi);

struct UnivariateMax {
  double arg = 0.0;
  double value = 0.0;
};

// Exact global maximum of the polynomial over [lo, hi]: evaluates endpoints
// and all real critical points inside the interval.
UnivariateMax maximize_univariate(const UnivariatePoly& poly, double lo, double hi);

// Multivariate polynomial restricted to one player's variables; exponents are
// indexed by that player's coordinates only.
struct PlayerPolynomial {
  struct Term {
    double coef = 0.0;
    std::vector<int> powers;
  };
  std::vector<Term> terms;
  int dim = 0;

  double eval(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  // Dense coefficient vector; valid only when dim == 1.
  UnivariatePoly to_univariate() const;
};

}  // namespace mogs
