#pragma once

#include "fdsl/problem.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fdsl {

using BigInt = boost::multiprecision::cpp_int;

/// Contraction constant
///   M_n = (X^2/pi^2) omega / (2n^2 - 2n + 1) [n + X/pi + X^2/(n pi^2)] max{1, sqrt(2/X)}.
/// The first overload takes omega from the potentials.
Real constant_Mn(const ProblemSpec& spec, int n);
Real constant_Mn(const ProblemSpec& spec, int n, const Real& omega);

struct ConvergenceReport {
  int n = 1;
  Real X;
  Real omega;
  Real M_n;
  Real r_n;  // 4 M_n
  bool converges = false;  // sufficient condition r_n < 1
};

/// omega is taken from `omega_override`, then spec.stated_omega, then omega(spec).
ConvergenceReport convergence_report(const ProblemSpec& spec, int n, std::optional<Real> omega_override = {});

/// Catalan majorant U_{j+1} = (2j+2)! / ((j+1)! (j+2)!) in exact integers.
BigInt majorant(int j);

/// U_0..U_J from U_0 = 1 and U_{i+1} = sum_{s=0}^{i} U_{i-s} U_s.
std::vector<BigInt> majorant_sequence(int J);

BigInt double_factorial(int k);  // (-1)!! = 0!! = 1

struct ErrorBounds {
  bool applicable = false;
  std::string reason;  // why not, when not applicable
  Real lambda_bound;
  Real u_bound;
};

/// A-priori bounds for rank m >= 1 when r_n < 1:
///   |lambda - lambda^m| <= omega sqrt(2/X) [k^2 + k + 1] r^m / ((1 - r)(m + 1) sqrt(pi m)),
///   ||u - u^m||         <= r^{m+1} / ((m + 2) sqrt(pi (m + 1))),   k = n pi / X.
ErrorBounds error_bounds(const ConvergenceReport& report, int m);

/// Envelope for a single correction:
///   |lambda^{(j+1)}| <= omega sqrt(2/X) [k^2 + k + 1] (4 M_n)^j 2 (2j-1)!! / (2j+2)!!.
Real lambda_envelope(const ConvergenceReport& report, int j);

}  // namespace fdsl
