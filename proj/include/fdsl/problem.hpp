#pragma once

#include "fdsl/numerics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fdsl {

/// Dense polynomial; coeffs[l] multiplies x^l. The stored degree is
/// coeffs.size() - 1 even when trailing coefficients are zero.
struct Polynomial {
  std::vector<Real> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<Real> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Coefficient of x^l, zero past the stored degree.
  Real coeff(int l) const;
  bool is_zero() const;
};

Real poly_eval(const Polynomial& p, const Real& x);
Polynomial poly_derivative(const Polynomial& p, int order);
Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_scale(const Polynomial& p, const Real& s);
/// Pads with explicit zeros up to `degree`; never truncates.
Polynomial poly_padded(const Polynomial& p, int degree);

/// max_{x in [0, X]} |p(x)|: dense sampling with 64(deg+1)+1 points, then a
/// golden-section refinement of the best bracket.
Real sup_norm(const Polynomial& p, const Real& X);

/// Interval length and the three potentials of
///   u'''' + q2 u'' + q1 u' + (q0 - lambda) u = 0,  u = u'' = 0 at 0 and X.
struct ProblemSpec {
  std::string name;
  Real X;
  Polynomial q0, q1, q2;
  /// Fixture set tag ("ex1", "ex2") when the problem is one of the shipped
  /// reference problems; empty otherwise.
  std::string fixture;
  /// Potential size to use in convergence diagnostics instead of omega().
  std::optional<Real> stated_omega;

  /// Validates X > 0 and pads every potential to degree >= 1.
  ProblemSpec(std::string name, Real X, Polynomial q0, Polynomial q1, Polynomial q2,
              std::string fixture = {});

  int r() const;
};

/// M(j) = j (r + 1); M(-1) is reported as -1 so that index ranges 0..M(j-1)
/// are empty at j = 0.
/// Copy with X, the potentials and stated_omega rounded to the current
/// thread precision.
ProblemSpec at_current_precision(const ProblemSpec& spec);

struct StepBudget {
  int r;
  explicit StepBudget(int r_) : r(r_) {}
  explicit StepBudget(const ProblemSpec& spec) : r(spec.r()) {}
  int M(int j) const { return j < 0 ? -1 : j * (r + 1); }
};

/// max{ |q2|, |2 q2' - q1|, |q2'' - q1' + q0| } over [0, X].
Real omega(const ProblemSpec& spec);

/// Error raised while reading a problem config; carries the 1-based line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message, const std::string& source = {});
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

/// Parses the key-value problem format:
///
///   # comment
///   [problem]
///   name = example2
///   X = 1
///   q0 = [0, 1]          # lowest degree first
///   q1 = [0]
///   q2 = [0]
///   fixture = ex2        # optional
///   omega = 1            # optional, used by the convergence diagnostics
///
/// Reals are parsed at the active precision, so call this inside a
/// PrecisionScope.
ProblemSpec parse_problem(std::string_view text);
ProblemSpec load_problem(const std::filesystem::path& path);

/// The two reference problems: X = 5, q0 = 1e-4 x^4 - 0.02, q1 = -0.04 x,
/// q2 = -0.02 x^2 (stated omega 0.2); and X = 1, q0 = x, q1 = q2 = 0.
ProblemSpec example1_problem();
ProblemSpec example2_problem();
ProblemSpec zero_problem(const Real& X);

}  // namespace fdsl
