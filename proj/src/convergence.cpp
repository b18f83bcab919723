#include "fdsl/convergence.hpp"

#include <algorithm>

namespace fdsl {

namespace mp = boost::multiprecision;

Real constant_Mn(const ProblemSpec& spec, int n, const Real& omega) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const Real pi = fdsl::pi();
  const Real& X = spec.X;
  const Real scale = std::max(Real(1), mp::sqrt(Real(2) / X));
  const Real bracket = Real(n) + X / pi + X * X / (n * pi * pi);
  return X * X / (pi * pi) * omega / (2 * n * n - 2 * n + 1) * bracket * scale;
}

Real constant_Mn(const ProblemSpec& spec, int n) { return constant_Mn(spec, n, omega(spec)); }

ConvergenceReport convergence_report(const ProblemSpec& input, int n, std::optional<Real> omega_override) {
  const ProblemSpec spec = at_current_precision(input);
  ConvergenceReport rep;
  rep.n = n;
  rep.X = spec.X;
  rep.omega = omega_override ? *omega_override : spec.stated_omega ? *spec.stated_omega : omega(spec);
  rep.M_n = constant_Mn(spec, n, rep.omega);
  rep.r_n = 4 * rep.M_n;
  rep.converges = rep.r_n < 1;
  return rep;
}

BigInt majorant(int j) {
  if (j < 0) throw std::invalid_argument("majorant index must be >= 0");
  BigInt num = 1, den = 1;
  for (int i = 2; i <= 2 * j + 2; ++i) num *= i;
  for (int i = 2; i <= j + 1; ++i) den *= i;
  BigInt den2 = 1;
  for (int i = 2; i <= j + 2; ++i) den2 *= i;
  return num / (den * den2);
}

std::vector<BigInt> majorant_sequence(int J) {
  if (J < 0) throw std::invalid_argument("sequence length must be >= 0");
  std::vector<BigInt> u(static_cast<std::size_t>(J + 1));
  u[0] = 1;
  for (int i = 0; i < J; ++i) {
    BigInt s = 0;
    for (int k = 0; k <= i; ++k) s += u[static_cast<std::size_t>(i - k)] * u[static_cast<std::size_t>(k)];
    u[static_cast<std::size_t>(i + 1)] = s;
  }
  return u;
}

BigInt double_factorial(int k) {
  if (k < -1) throw std::invalid_argument("double factorial needs k >= -1");
  BigInt r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

namespace {

Real amplitude(const ConvergenceReport& rep) {
  const Real k = pi() * rep.n / rep.X;
  return rep.omega * mp::sqrt(Real(2) / rep.X) * (k * k + k + 1);
}

Real to_real(const BigInt& v) { return Real(v.str()); }

}  // namespace

ErrorBounds error_bounds(const ConvergenceReport& rep, int m) {
  ErrorBounds b;
  if (m < 1) {
    b.reason = "bounds are defined for m >= 1";
    return b;
  }
  if (!rep.converges) {
    b.reason = "sufficient condition r_n < 1 not met";
    return b;
  }
  const Real pi = fdsl::pi();
  const Real& r = rep.r_n;
  b.applicable = true;
  b.lambda_bound = amplitude(rep) * mp::pow(r, m) / ((1 - r) * (m + 1) * mp::sqrt(pi * m));
  b.u_bound = mp::pow(r, m + 1) / ((m + 2) * mp::sqrt(pi * (m + 1)));
  return b;
}

Real lambda_envelope(const ConvergenceReport& rep, int j) {
  if (j < 0) throw std::invalid_argument("envelope index must be >= 0");
  const Real ratio = 2 * to_real(double_factorial(2 * j - 1)) / to_real(double_factorial(2 * j + 2));
  return amplitude(rep) * mp::pow(4 * rep.M_n, j) * ratio;
}

}  // namespace fdsl
