#include "fdsl/spectral.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fdsl {

namespace mp = boost::multiprecision;

namespace {

// cos(m pi / 4) for integer m, exact zeros and +-1.
Real quarter_cos(int m, const Real& half_sqrt2) {
  switch (((m % 8) + 8) % 8) {
    case 0:
      return Real(1);
    case 1:
    case 7:
      return half_sqrt2;
    case 2:
    case 6:
      return Real(0);
    case 3:
    case 5:
      return -half_sqrt2;
    default:
      return Real(-1);
  }
}

Real quarter_sin(int m, const Real& half_sqrt2) { return quarter_cos(m - 2, half_sqrt2); }

}  // namespace

MomentTable moments(int n, const Real& X, int T) {
  if (n < 1) throw std::invalid_argument("moments need n >= 1");
  if (T < 0) throw std::invalid_argument("moments need T >= 0");
  const Real pi = fdsl::pi();
  const Real pin = pi * n;
  const Real two_pin = 2 * pin;
  const Real sqrt2 = mp::sqrt(Real(2));
  const Real half_sqrt2 = sqrt2 / 2;
  const Real rot_pin = sqrt2 * pin;
  const Real cos_pin = n % 2 == 0 ? Real(1) : Real(-1);
  Real sh, ch;
  mpfr_sinh_cosh(sh.backend().data(), ch.backend().data(), pin.backend().data(), MPFR_RNDN);

  MomentTable mt;
  mt.n = n;
  mt.X = X;
  const auto size = static_cast<std::size_t>(T + 1);
  mt.alpha.resize(size);
  mt.beta.resize(size);
  mt.eta.resize(size);
  mt.mu.resize(size);

  Real xt1 = X;  // X^{t+1}
  for (int t = 0; t <= T; ++t) {
    // falling = t! / (t-k)!, built up with k.
    Real sum_sin(0), sum_cos(0);
    Real falling(1), w = two_pin;
    for (int k = 0; k <= t - 1; ++k) {
      const Real term = falling / w;
      sum_sin += term * quarter_sin(2 * k, half_sqrt2);
      sum_cos += term * quarter_cos(2 * k, half_sqrt2);
      falling *= (t - k);
      w *= two_pin;
    }
    mt.alpha[static_cast<std::size_t>(t)] = xt1 / (2 * (t + 1)) - xt1 * sum_sin / 2;
    mt.beta[static_cast<std::size_t>(t)] = -xt1 * sum_cos / 2;

    Real eta_sum(0), mu_sum(0);
    Real ff(1), v = rot_pin;
    for (int k = 0; k <= t; ++k) {
      if (k > 0) ff *= (t - k + 1);
      const Real term = ff / v;
      const Real c1 = quarter_cos(k + 1, half_sqrt2), s1 = quarter_sin(k + 1, half_sqrt2);
      const Real c2 = quarter_cos(2 * k, half_sqrt2), s2 = quarter_sin(2 * k, half_sqrt2);
      eta_sum += term * (c1 * c2 * ch - s1 * s2 * sh);
      mu_sum += term * (s1 * s2 * ch - c1 * c2 * sh);
      v *= rot_pin;
    }
    // After the loop ff = t! and v = (sqrt2 pi n)^{t+2}.
    const Real lead = xt1 * ff / (v / rot_pin);
    mt.eta[static_cast<std::size_t>(t)] =
        lead * quarter_cos(2 * t, half_sqrt2) * quarter_cos(t + 1, half_sqrt2) - xt1 * cos_pin * eta_sum;
    mt.mu[static_cast<std::size_t>(t)] =
        -lead * quarter_sin(2 * t, half_sqrt2) * quarter_sin(t + 1, half_sqrt2) + xt1 * cos_pin * mu_sum;
    xt1 *= X;
  }
  return mt;
}

Real lambda_correction(int j, int n, const ProblemSpec& spec, const History& history, const MomentTable& mt) {
  if (history.last_term() < j) {
    throw StateError("eigenvalue correction " + std::to_string(j + 1) + " needs correction term " + std::to_string(j));
  }
  const StepBudget budget(spec);
  const int r = budget.r;
  if (mt.max_t() < budget.M(j + 1) - 1) throw StateError("moment table too short for this step");
  const Real k = pi() * n / spec.X;
  const Real k2 = k * k;
  const auto& u = history.terms[static_cast<std::size_t>(j)].u;
  auto A = [&](int l) { return spec.q0.coeff(l); };
  auto B = [&](int l) { return spec.q1.coeff(l); };
  auto C = [&](int l) { return spec.q2.coeff(l); };
  auto z = [](int i) { return static_cast<std::size_t>(i); };

  Real total(0);
  const int Mj = budget.M(j), Mn = budget.M(j + 1), Mp = budget.M(j - 1);
  for (int t = 0; t <= Mn - 1; ++t) {
    const Real& al = mt.alpha[z(t)];
    const Real& be = mt.beta[z(t)];
    for (int l = std::max(0, t - Mj); l <= std::min(r, t); ++l) {
      const Real& a = u.a[z(t - l)];
      const Real& b = u.b[z(t - l)];
      total += k * B(l) * (be * a - al * b) - (be * b + al * a) * (-A(l) + k2 * C(l));
    }
    if (t <= Mn - 2) {
      for (int l = std::max(0, t - Mj + 1); l <= std::min(r, t); ++l) {
        const Real& a = u.a[z(t - l + 1)];
        const Real& b = u.b[z(t - l + 1)];
        total += (t - l + 1) * (B(l) * (be * b + al * a) + 2 * k * C(l) * (be * a - al * b));
      }
    }
    if (t <= Mn - 3) {
      for (int l = std::max(0, t - Mj + 2); l <= std::min(r, t); ++l) {
        total += (t - l + 1) * (t - l + 2) * C(l) * (be * u.b[z(t - l + 2)] + al * u.a[z(t - l + 2)]);
      }
    }
  }
  for (int t = 0; t <= Mj - 1; ++t) {
    const Real& et = mt.eta[z(t)];
    const Real& mu = mt.mu[z(t)];
    for (int l = std::max(0, t - Mp); l <= std::min(r, t); ++l) {
      const Real& c = u.c[z(t - l)];
      const Real& d = u.d[z(t - l)];
      total += k * B(l) * (et * c + mu * d) + (et * d + mu * c) * (A(l) + k2 * C(l));
    }
    if (t <= Mj - 2) {
      for (int l = std::max(0, t - Mp + 1); l <= std::min(r, t); ++l) {
        const Real& c = u.c[z(t - l + 1)];
        const Real& d = u.d[z(t - l + 1)];
        total += (t - l + 1) * (B(l) * (et * d + mu * c) + 2 * k * C(l) * (et * c + mu * d));
      }
    }
    if (t <= Mj - 3) {
      for (int l = std::max(0, t - Mp + 2); l <= std::min(r, t); ++l) {
        total += (t - l + 1) * (t - l + 2) * C(l) * (et * u.d[z(t - l + 2)] + mu * u.c[z(t - l + 2)]);
      }
    }
  }
  return mp::sqrt(Real(2) / spec.X) * total;
}

FDSolution solve(const ProblemSpec& input, int n, int m, const PrecisionContext& ctx) {
  if (n < 1) throw std::invalid_argument("eigenpair index n must be >= 1, got " + std::to_string(n));
  if (m < 0) throw std::invalid_argument("rank m must be >= 0, got " + std::to_string(m));
  PrecisionScope scope(ctx);
  const ProblemSpec spec = at_current_precision(input);
  const StepBudget budget(spec);
  BasePair base = base_pair(spec, n);
  History h;
  h.terms.push_back(base.term);
  h.lambdas.push_back(base.lambda0);
  const MomentTable mt = moments(n, spec.X, budget.M(m) + budget.r);
  std::vector<ClosureOverride> overrides;
  for (int j = 0; j < m; ++j) {
    h.lambdas.push_back(lambda_correction(j, n, spec, h, mt));
    const RhsCoefficients rhs = build_rhs(spec, n, j, h);
    h.terms.push_back(solve_step(spec, n, j, rhs, mt, &overrides));
  }
  std::vector<Real> corrections(h.lambdas.begin() + 1, h.lambdas.end());
  FDSolution sol = assemble(std::move(h.terms), std::move(corrections), base.lambda0, m);
  sol.overrides = std::move(overrides);
  return sol;
}

std::vector<FDSolution> solve_batch_serial(const ProblemSpec& spec, const std::vector<int>& ns, int m,
                                           const PrecisionContext& ctx) {
  std::vector<FDSolution> out;
  out.reserve(ns.size());
  for (int n : ns) out.push_back(solve(spec, n, m, ctx));
  return out;
}

std::vector<FDSolution> solve_batch(const ProblemSpec& spec, const std::vector<int>& ns, int m,
                                    const PrecisionContext& ctx) {
  std::vector<FDSolution> out(ns.size());
  std::vector<std::exception_ptr> errors(ns.size());
  const long count = static_cast<long>(ns.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = solve(spec, ns[static_cast<std::size_t>(i)], m, ctx);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Real lambda_second_correction_check(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const Real npi = pi() * n;
  const Real cos_npi = n % 2 == 0 ? Real(1) : Real(-1);
  return 1 / (32 * mp::pow(npi, 4)) - 5 / (32 * mp::pow(npi, 6)) +
         (cos_npi - mp::cosh(npi)) / (2 * mp::pow(npi, 7) * mp::sinh(npi));
}

}  // namespace fdsl
