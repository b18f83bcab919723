#include "fdsl/verify.hpp"

#include "fdsl/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fdsl {

namespace mp = boost::multiprecision;

namespace {

constexpr int kNodesPerPanel = 20;
constexpr double kRelTol = 1e-10;
constexpr int kMaxDoublings = 6;

int expansion_degree(const BasisExpansion& u) {
  const auto t = static_cast<int>(u.trig_size());
  const auto h = static_cast<int>(u.hyp_size());
  return std::max({t - 1, h - 1, 0});
}

ResidualResult squared_norm(const BasisExpansion& f, const Real& X, int n, bool parallel) {
  const int panels = std::max({8, 2 * n, 2 * expansion_degree(f)});
  Integrand g = [&f](const Real& x) {
    const Real v = evaluate(f, x);
    return v * v;
  };
  const QuadratureResult q = integrate_doubling(g, Real(0), X, panels, kNodesPerPanel, kRelTol, kMaxDoublings, parallel);
  ResidualResult r;
  r.norm = mp::sqrt(mp::abs(q.value));
  r.panels = q.panels;
  // An exact zero integrand never satisfies a relative test.
  r.flagged = !q.converged && q.value != 0;
  return r;
}

int freq_index(const Real& freq, const Real& X) {
  const Real v = freq * X / pi();
  return std::max(1, static_cast<int>(std::lround(to_double(v))));
}

}  // namespace

BasisExpansion residual_expansion(const BasisExpansion& u, const Real& lambda, const ProblemSpec& input) {
  const ProblemSpec spec = at_current_precision(input);
  BasisExpansion phi = derivative(u, 4);
  add_scaled(phi, Real(1), multiply(spec.q2, derivative(u, 2)));
  add_scaled(phi, Real(1), multiply(spec.q1, derivative(u, 1)));
  Polynomial shifted = spec.q0;
  if (shifted.coeffs.empty()) shifted.coeffs.push_back(Real(0));
  shifted.coeffs[0] -= lambda;
  add_scaled(phi, Real(1), multiply(shifted, u));
  return phi;
}

ResidualResult residual_norm(const FDSolution& sol, const ProblemSpec& spec, std::optional<int> rank, bool parallel) {
  const int m = rank.value_or(sol.m);
  if (m < 0 || m > sol.m) throw std::out_of_range("rank outside the assembled solution");
  const BasisExpansion phi = residual_expansion(sol.eigenfunction(m), sol.lambda_at_rank(m), spec);
  return squared_norm(phi, sol.X, sol.n, parallel);
}

ResidualResult l2_norm(const BasisExpansion& u, const Real& X, bool parallel) {
  return squared_norm(u, X, freq_index(u.freq, X), parallel);
}

bool within_factor(double ratio, double factor) {
  if (!(ratio > 0) || !std::isfinite(ratio)) return false;
  return std::max(ratio, 1 / ratio) <= factor;
}

FixtureComparison compare_to_fixture(const FDSolution& sol, const std::string& tag, const FixtureSet& fixtures,
                                     std::optional<Real> residual) {
  FixtureComparison out;
  const auto key = std::make_pair(sol.n, sol.m);
  if (tag == "ex1") {
    if (auto it = fixtures.ex1_exact.find(sol.n); it != fixtures.ex1_exact.end()) {
      out.found = true;
      const Real exact = parse_real(it->second);
      out.abs_error = mp::abs(exact - sol.lambda_approx);
      out.lambda_digits = agreeing_digits(exact, sol.lambda_approx, 60);
      if (auto e = fixtures.ex1_error.find(key); e != fixtures.ex1_error.end()) {
        out.fixture_error = std::stod(e->second);
        out.error_ratio = to_double(*out.abs_error) / *out.fixture_error;
      }
    }
  } else if (tag == "ex2") {
    if (auto it = fixtures.ex2_lambda.find(key); it != fixtures.ex2_lambda.end()) {
      out.found = true;
      out.lambda_digits = agreeing_digits(parse_real(it->second), sol.lambda_approx, 60);
    }
    if (auto it = fixtures.ex2_residual.find(key); it != fixtures.ex2_residual.end()) {
      out.found = true;
      out.fixture_residual = std::stod(it->second);
      if (residual) out.residual_ratio = to_double(*residual) / *out.fixture_residual;
    }
  } else {
    throw std::invalid_argument("unknown fixture tag: " + tag);
  }
  return out;
}

}  // namespace fdsl
