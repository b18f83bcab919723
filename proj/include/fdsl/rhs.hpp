#pragma once

#include "fdsl/corrections.hpp"

#include <stdexcept>
#include <vector>

namespace fdsl {

/// Raised when an operation is called before the steps it depends on exist.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Steps computed so far: terms[j] = u^{(j)}, lambdas[j] = lambda^{(j)}
/// (lambdas[0] is the base eigenvalue). Lambda for step j+1 is appended
/// before the term for step j+1, so lambdas may run one entry ahead.
struct History {
  std::vector<CorrectionTerm> terms;
  std::vector<Real> lambdas;

  int last_term() const { return static_cast<int>(terms.size()) - 1; }
};

/// Coefficients of the right-hand side of step j+1 grouped by basis function:
///
///   F(x) = sum_p x^p (f_cos[p] cos + f_sin[p] sin)
///        + sum_p x^p (f_cosh[p] cosh + f_sinh[p] sinh),
///
/// with M(j+1) trigonometric and M(j) hyperbolic entries.
struct RhsCoefficients {
  std::vector<Real> f_cos, f_sin, f_cosh, f_sinh;
};

/// F = sum_{s=0}^{j} lambda^{(j+1-s)} u^{(s)} - (q2 u'' + q1 u' + q0 u)|_{u = u^{(j)}},
/// accumulated term by term over explicit index ranges. Requires terms 0..j
/// and lambdas 0..j+1 in `history`.
RhsCoefficients build_rhs(const ProblemSpec& spec, int n, int j, const History& history);

/// The right-hand side as a basis expansion (c/d hold the hyperbolic part).
BasisExpansion rhs_expansion(const RhsCoefficients& rhs, const Real& freq);

/// Smallest integer >= t / (r + 1) for t >= 0.
inline int ceil_div(int t, int r) { return (t + r) / (r + 1); }

}  // namespace fdsl
