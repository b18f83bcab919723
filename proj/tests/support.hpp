#pragma once

#include "fdsl/corrections.hpp"
#include "fdsl/problem.hpp"
#include "fdsl/quadrature.hpp"
#include "fdsl/rhs.hpp"
#include "fdsl/spectral.hpp"

#include <random>
#include <string>

namespace fdsl::test {

constexpr int kDigits = 300;

inline Real ten_pow(int e) { return boost::multiprecision::pow(Real(10), e); }

inline Real rel_diff(const Real& a, const Real& b) {
  const Real scale = std::max(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
  if (scale == 0) return Real(0);
  return boost::multiprecision::abs(a - b) / scale;
}

inline Real uniform(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return Real(d(rng));
}

/// Problem with random X in [0.5, 3] and potentials of random degree <= 4.
/// Coefficients scale so that |q_i| stays around `size` on [0, X].
inline ProblemSpec random_problem(std::mt19937& rng, double size = 0.05) {
  const Real X = uniform(rng, 0.5, 3.0);
  std::uniform_int_distribution<int> deg(0, 4);
  auto poly = [&] {
    const int d = deg(rng);
    std::vector<Real> c;
    Real xp(1);
    for (int l = 0; l <= d; ++l) {
      c.push_back(uniform(rng, -size, size) / xp);
      xp *= X;
    }
    return Polynomial(c);
  };
  return ProblemSpec("random", X, poly(), poly(), poly());
}

/// sum_{s=0}^{j} lambda^{(j+1-s)} u^{(s)}(x) - (q2 u'' + q1 u' + q0 u)(x) at u = u^{(j)},
/// from the stored terms and the potentials only.
inline Real rhs_direct(const FDSolution& sol, const ProblemSpec& spec, int j, const Real& x) {
  Real v(0);
  for (int s = 0; s <= j; ++s) {
    v += sol.lambda_correction(j + 1 - s) * eval_term(sol.terms[static_cast<std::size_t>(s)], x, 0);
  }
  const CorrectionTerm& t = sol.terms[static_cast<std::size_t>(j)];
  v -= poly_eval(spec.q2, x) * eval_term(t, x, 2) + poly_eval(spec.q1, x) * eval_term(t, x, 1) +
       poly_eval(spec.q0, x) * eval_term(t, x, 0);
  return v;
}

/// int_0^X f with 20-point panels refined until `rel_tol`.
inline Real quad(const Integrand& f, const Real& X, double rel_tol = 1e-45, int panels = 8) {
  const QuadratureResult r = integrate_doubling(f, Real(0), X, panels, 20, rel_tol, 8, false);
  return r.value;
}

/// History holding terms 0..j and corrections up to lambda^{(j+1)} of a solved run.
inline History history_for(const FDSolution& sol, int j) {
  History h;
  for (int s = 0; s <= j; ++s) h.terms.push_back(sol.terms[static_cast<std::size_t>(s)]);
  h.lambdas.push_back(sol.lambda0);
  for (int s = 1; s <= j + 1; ++s) h.lambdas.push_back(sol.lambda_correction(s));
  return h;
}

/// int_0^X F u^{(0)}, up to the base amplitude, from the moment table.
inline Real solvability(const RhsCoefficients& f, const MomentTable& mo) {
  Real s(0);
  for (std::size_t p = 0; p < f.f_cos.size(); ++p) s += f.f_cos[p] * mo.beta_at(p) + f.f_sin[p] * mo.alpha_at(p);
  for (std::size_t p = 0; p < f.f_cosh.size(); ++p) s += f.f_cosh[p] * mo.eta_at(p) + f.f_sinh[p] * mo.mu_at(p);
  return s;
}

/// int_0^X u^{(j)} u^{(0)} from the moment table.
inline Real overlap_with_base(const CorrectionTerm& t, const MomentTable& mo) {
  Real s(0);
  for (std::size_t p = 0; p < t.a().size(); ++p) s += t.b()[p] * mo.beta_at(p) + t.a()[p] * mo.alpha_at(p);
  for (std::size_t p = 0; p < t.c().size(); ++p) s += t.d()[p] * mo.eta_at(p) + t.c()[p] * mo.mu_at(p);
  return boost::multiprecision::sqrt(Real(2) / t.X) * s;
}

}  // namespace fdsl::test
