#pragma once

#include "fdsl/numerics.hpp"
#include "fdsl/problem.hpp"

#include <string>
#include <vector>

namespace fdsl {

/// Values of the four basis oscillators at one point.
struct BasisValues {
  Real sin, cos, sinh, cosh;
};

BasisValues basis_values(const Real& freq, const Real& x);

/// Finite expansion in the basis x^p {cos, sin, cosh, sinh}(freq x):
///
///   u(x) = sum_p x^p (b_p cos + a_p sin) + sum_p x^p (d_p cosh + c_p sinh).
///
/// The family pairs are kept at equal length: a.size() == b.size() and
/// c.size() == d.size(). Either family may be empty.
struct BasisExpansion {
  Real freq;
  std::vector<Real> a, b, c, d;

  std::size_t trig_size() const { return a.size(); }
  std::size_t hyp_size() const { return c.size(); }
};

/// Exact derivative. Differentiation preserves both lengths:
///   b'_p = (p+1) b_{p+1} + k a_p,   a'_p = (p+1) a_{p+1} - k b_p,
///   d'_p = (p+1) d_{p+1} + k c_p,   c'_p = (p+1) c_{p+1} + k d_p.
BasisExpansion derivative(const BasisExpansion& u, int order = 1);

/// Exact product with a polynomial (degrees add).
BasisExpansion multiply(const Polynomial& q, const BasisExpansion& u);

/// y += s * x; grows y's arrays as needed. Both must share freq.
void add_scaled(BasisExpansion& y, const Real& s, const BasisExpansion& x);

Real evaluate(const BasisExpansion& u, const Real& x);
Real evaluate(const BasisExpansion& u, const Real& x, const BasisValues& v);

/// One correction u_n^{(j)}: a has M(j)+1 entries, c has M(j-1)+1 (none at j = 0).
struct CorrectionTerm {
  int n = 1;
  int j = 0;
  Real X;
  BasisExpansion u;

  const std::vector<Real>& a() const { return u.a; }
  const std::vector<Real>& b() const { return u.b; }
  const std::vector<Real>& c() const { return u.c; }
  const std::vector<Real>& d() const { return u.d; }
};

/// Base eigenpair: u = sqrt(2/X) sin(n pi x / X), lambda = (n pi / X)^4.
struct BasePair {
  CorrectionTerm term;
  Real lambda0;
};

BasePair base_pair(const ProblemSpec& spec, int n);

/// d^deriv/dx^deriv of the term at x in [0, X]; deriv in 0..4.
Real eval_term(const CorrectionTerm& t, const Real& x, int deriv);

/// Recorded when the top-coefficient formulas reach index 0 (M = 2) and the
/// boundary/orthogonality closure overrides them.
struct ClosureOverride {
  int j;
  std::string family;
  Real discrepancy;
};

/// Rank-m approximation: lambda_approx = lambda0 + sum_{j=1}^{m} lambda^{(j)}
/// and u = sum_{j=0}^{m} u^{(j)}.
struct FDSolution {
  int n = 1;
  int m = 0;
  Real X;
  Real lambda0;
  std::vector<Real> lambda_corrections;  // [j-1] holds lambda^{(j)}
  std::vector<CorrectionTerm> terms;     // [j] holds u^{(j)}
  Real lambda_approx;
  std::vector<ClosureOverride> overrides;

  const Real& lambda_correction(int j) const { return lambda_corrections.at(static_cast<std::size_t>(j - 1)); }
  /// Partial sums for a lower rank without recomputation.
  Real lambda_at_rank(int rank) const;
  BasisExpansion eigenfunction(int rank) const;
  BasisExpansion eigenfunction() const { return eigenfunction(m); }
};

/// Sums the first m+1 terms and m corrections. Requires terms.size() >= m+1
/// and lambda_corrections.size() >= m.
FDSolution assemble(std::vector<CorrectionTerm> terms, std::vector<Real> lambda_corrections, const Real& lambda0,
                    int m);

/// JSON export with decimal strings for every Real.
std::string to_json(const FDSolution& sol, int print_digits, int indent = 2);

}  // namespace fdsl
