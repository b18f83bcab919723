#pragma once

#include "fdsl/corrections.hpp"
#include "fdsl/fixtures.hpp"

#include <optional>
#include <string>

namespace fdsl {

struct ResidualResult {
  Real norm;
  int panels = 0;
  /// Set when two successive panel doublings still disagreed.
  bool flagged = false;
};

/// phi = u'''' + q2 u'' + q1 u' + (q0 - lambda) u, formed exactly in the
/// basis representation.
BasisExpansion residual_expansion(const BasisExpansion& u, const Real& lambda, const ProblemSpec& spec);

/// delta = ||phi||_2 on [0, X] for the rank-`rank` partial sums of `sol`
/// (rank defaults to sol.m). Composite Gauss-Legendre with 20 nodes per
/// panel, starting from max(8, 2n, degree of phi^2) panels and doubling until
/// two values agree to 1e-10 relative.
ResidualResult residual_norm(const FDSolution& sol, const ProblemSpec& spec, std::optional<int> rank = {},
                             bool parallel = true);

/// ||u||_2 on [0, X] with the same quadrature policy.
ResidualResult l2_norm(const BasisExpansion& u, const Real& X, bool parallel = true);

struct FixtureComparison {
  bool found = false;
  /// Leading digits shared with the fixture eigenvalue, when one exists.
  std::optional<int> lambda_digits;
  /// |exact - approx| against a fixture exact eigenvalue.
  std::optional<Real> abs_error;
  std::optional<double> fixture_error;
  std::optional<double> error_ratio;  // computed / fixture
  std::optional<double> fixture_residual;
  std::optional<double> residual_ratio;
};

/// `tag` is "ex1" or "ex2". `residual` is compared when a fixture value
/// exists for (n, m).
FixtureComparison compare_to_fixture(const FDSolution& sol, const std::string& tag,
                                     const FixtureSet& fixtures = builtin_fixtures(),
                                     std::optional<Real> residual = {});

/// max(ratio, 1/ratio) <= factor
bool within_factor(double ratio, double factor);

}  // namespace fdsl
