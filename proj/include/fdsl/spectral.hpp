#pragma once

#include "fdsl/recursion.hpp"

#include <vector>

namespace fdsl {

/// Closed-form integrals over [0, X] with k = pi n / X:
///   alpha_t = int x^t sin^2(kx),      beta_t = int x^t sin(kx) cos(kx),
///   eta_t   = int x^t sin(kx) cosh(kx), mu_t = int x^t sin(kx) sinh(kx).
struct MomentTable {
  int n = 1;
  Real X;
  std::vector<Real> alpha, beta, eta, mu;

  int max_t() const { return static_cast<int>(alpha.size()) - 1; }
  const Real& alpha_at(std::size_t t) const { return alpha.at(t); }
  const Real& beta_at(std::size_t t) const { return beta.at(t); }
  const Real& eta_at(std::size_t t) const { return eta.at(t); }
  const Real& mu_at(std::size_t t) const { return mu.at(t); }
};

MomentTable moments(int n, const Real& X, int T);

/// lambda^{(j+1)} from the terms of step j (sums against the moments,
/// scaled by the base amplitude sqrt(2/X)).
Real lambda_correction(int j, int n, const ProblemSpec& spec, const History& history, const MomentTable& moments);

/// Runs the full recursion up to rank m at the context's precision.
FDSolution solve(const ProblemSpec& spec, int n, int m, const PrecisionContext& ctx);

/// Independent solves for several n. The parallel path spreads the list
/// over OpenMP threads; the serial path is the reference. Output order
/// follows `ns` in both.
std::vector<FDSolution> solve_batch(const ProblemSpec& spec, const std::vector<int>& ns, int m,
                                    const PrecisionContext& ctx);
std::vector<FDSolution> solve_batch_serial(const ProblemSpec& spec, const std::vector<int>& ns, int m,
                                           const PrecisionContext& ctx);

/// Closed form of the second eigenvalue correction for q0 = x on [0, 1]:
///   1/(32 (n pi)^4) - 5/(32 (n pi)^6) + (cos n pi - cosh n pi)/(2 (n pi)^7 sinh n pi).
Real lambda_second_correction_check(int n);

}  // namespace fdsl
