#include "fdsl/rhs.hpp"

#include <algorithm>

namespace fdsl {

namespace mp = boost::multiprecision;

namespace {

const Real& at(const std::vector<Real>& v, int i) {
  if (i < 0 || i >= static_cast<int>(v.size())) {
    throw std::out_of_range("coefficient index " + std::to_string(i) + " outside stored range");
  }
  return v[static_cast<std::size_t>(i)];
}

// One output family: `lead` is the coefficient array multiplying the same
// basis function (b for cos, a for sin, d for cosh, c for sinh) and `pair`
// its partner. The two signs are those of pair*B_l*k and pair*C_l*2k.
struct FamilyRule {
  const std::vector<Real>* lead;
  const std::vector<Real>* pair;
  int sign_pair_q1;
  int sign_pair_q2;
  bool hyperbolic;
};

std::vector<Real> build_family(const ProblemSpec& spec, const FamilyRule& rule, int Mj, int Mnext, const Real& k) {
  const int r = spec.r();
  const Real k2 = k * k;
  std::vector<Real> out(static_cast<std::size_t>(std::max(Mnext, 0)), Real(0));
  const auto& lead = *rule.lead;
  const auto& pair = *rule.pair;
  for (int t = 0; t < Mnext; ++t) {
    Real acc(0);
    for (int l = std::max(0, t - Mj); l <= std::min(r, t); ++l) {
      Real Al = spec.q0.coeff(l);
      Real Bl = spec.q1.coeff(l);
      Real Cl = spec.q2.coeff(l);
      Real diag = rule.hyperbolic ? -(Al + Cl * k2) : -Al + Cl * k2;
      Real cross = Bl * k * rule.sign_pair_q1;
      acc += at(lead, t - l) * diag + at(pair, t - l) * cross;
    }
    if (t <= Mnext - 2) {
      for (int l = std::max(0, t - Mj + 1); l <= std::min(r, t); ++l) {
        Real Bl = spec.q1.coeff(l);
        Real Cl = spec.q2.coeff(l);
        acc -= (at(lead, t - l + 1) * Bl + at(pair, t - l + 1) * Cl * 2 * k * rule.sign_pair_q2) * (t - l + 1);
      }
    }
    if (t <= Mnext - 3) {
      for (int l = std::max(0, t - Mj + 2); l <= std::min(r, t); ++l) {
        acc -= at(lead, t - l + 2) * spec.q2.coeff(l) * ((t - l + 2) * (t - l + 1));
      }
    }
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

}  // namespace

RhsCoefficients build_rhs(const ProblemSpec& spec, int n, int j, const History& history) {
  if (j < 0) throw std::invalid_argument("step index j must be >= 0");
  if (history.last_term() < j) {
    throw StateError("right-hand side of step " + std::to_string(j + 1) + " needs correction terms 0.." +
                     std::to_string(j));
  }
  if (static_cast<int>(history.lambdas.size()) < j + 2) {
    throw StateError("right-hand side of step " + std::to_string(j + 1) + " needs lambda corrections up to " +
                     std::to_string(j + 1));
  }
  const StepBudget budget(spec);
  const int r = budget.r;
  const Real k = pi() * n / spec.X;
  const CorrectionTerm& uj = history.terms[static_cast<std::size_t>(j)];

  RhsCoefficients out;
  out.f_cos = build_family(spec, {&uj.u.b, &uj.u.a, -1, +1, false}, budget.M(j), budget.M(j + 1), k);
  out.f_sin = build_family(spec, {&uj.u.a, &uj.u.b, +1, -1, false}, budget.M(j), budget.M(j + 1), k);
  out.f_cosh = build_family(spec, {&uj.u.d, &uj.u.c, -1, +1, true}, budget.M(j - 1), budget.M(j), k);
  out.f_sinh = build_family(spec, {&uj.u.c, &uj.u.d, -1, +1, true}, budget.M(j - 1), budget.M(j), k);

  // Eigenvalue part: sum over earlier terms s whose arrays reach index t.
  auto lam = [&](int s) -> const Real& { return history.lambdas[static_cast<std::size_t>(j + 1 - s)]; };
  for (int t = 0; t <= budget.M(j) && t < static_cast<int>(out.f_cos.size()); ++t) {
    for (int s = ceil_div(t, r); s <= j; ++s) {
      const auto& us = history.terms[static_cast<std::size_t>(s)].u;
      out.f_cos[static_cast<std::size_t>(t)] += lam(s) * at(us.b, t);
      out.f_sin[static_cast<std::size_t>(t)] += lam(s) * at(us.a, t);
    }
  }
  for (int t = 0; t <= budget.M(j - 1) && t < static_cast<int>(out.f_cosh.size()); ++t) {
    for (int s = ceil_div(t, r) + 1; s <= j; ++s) {
      const auto& us = history.terms[static_cast<std::size_t>(s)].u;
      out.f_cosh[static_cast<std::size_t>(t)] += lam(s) * at(us.d, t);
      out.f_sinh[static_cast<std::size_t>(t)] += lam(s) * at(us.c, t);
    }
  }
  return out;
}

BasisExpansion rhs_expansion(const RhsCoefficients& rhs, const Real& freq) {
  BasisExpansion e;
  e.freq = freq;
  e.b = rhs.f_cos;
  e.a = rhs.f_sin;
  e.d = rhs.f_cosh;
  e.c = rhs.f_sinh;
  return e;
}

}  // namespace fdsl
