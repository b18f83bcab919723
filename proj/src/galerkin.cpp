#include "fdsl/galerkin.hpp"

#include <algorithm>
#include <cmath>

namespace fdsl {

namespace mp = boost::multiprecision;

namespace {

// Tables of cos/sin moments for l <= L and 0 <= m <= max_m.
struct MomentGrid {
  int L = 0;
  int max_m = 0;
  std::vector<Real> C, S;

  Real cos_at(int l, int m) const { return C[idx(l, std::abs(m))]; }
  Real sin_at(int l, int m) const {
    const Real& v = S[idx(l, std::abs(m))];
    return m < 0 ? Real(-v) : v;
  }
  std::size_t idx(int l, int m) const { return static_cast<std::size_t>(l * (max_m + 1) + m); }
};

void fill_column(int L, int m, const Real& X, Real* C, Real* S, std::size_t stride) {
  if (m == 0) {
    Real xp = X;
    for (int l = 0; l <= L; ++l) {
      C[l * stride] = xp / (l + 1);
      S[l * stride] = 0;
      xp *= X;
    }
    return;
  }
  const Real w = pi() * m / X;
  const int sign = (m % 2 == 0) ? 1 : -1;  // cos(m pi)
  C[0] = 0;
  S[0] = Real(1 - sign) / w;
  Real xl(1);
  for (int l = 1; l <= L; ++l) {
    xl *= X;
    S[l * stride] = -xl * sign / w + Real(l) / w * C[(l - 1) * stride];
    C[l * stride] = -Real(l) / w * S[(l - 1) * stride];
  }
}

MomentGrid moment_grid(int L, int max_m, const Real& X) {
  MomentGrid g;
  g.L = L;
  g.max_m = max_m;
  const auto size = static_cast<std::size_t>((L + 1) * (max_m + 1));
  g.C.resize(size);
  g.S.resize(size);
  for (int m = 0; m <= max_m; ++m) {
    fill_column(L, m, X, &g.C[g.idx(0, m)], &g.S[g.idx(0, m)], static_cast<std::size_t>(max_m + 1));
  }
  return g;
}

struct Assembly {
  const ProblemSpec& spec;
  int N;
  int L;
  MomentGrid grid;
  Real two_over_X;
  Real pi_over_X;

  Assembly(const ProblemSpec& s, int n)
      : spec(s),
        N(n),
        L(std::max({s.q0.degree(), s.q1.degree(), s.q2.degree(), 0})),
        grid(moment_grid(L, 2 * n, s.X)),
        two_over_X(Real(2) / s.X),
        pi_over_X(pi() / s.X) {}

  void row(int q, Real* out) const {
    for (int p = 1; p <= N; ++p) {
      const Real kp = pi_over_X * p;
      const Real kp2 = kp * kp;
      Real s(0);
      for (int l = 0; l <= L; ++l) {
        const Real diag = spec.q0.coeff(l) - spec.q2.coeff(l) * kp2;
        const Real ss = (grid.cos_at(l, p - q) - grid.cos_at(l, p + q)) / 2;
        const Real cs = (grid.sin_at(l, q + p) + grid.sin_at(l, q - p)) / 2;
        s += diag * ss + spec.q1.coeff(l) * kp * cs;
      }
      s *= two_over_X;
      if (p == q) s += kp2 * kp2;
      out[p - 1] = s;
    }
  }
};

void check_size(int N) {
  if (N < 1) throw std::invalid_argument("Galerkin basis size must be >= 1");
}

}  // namespace

Real cos_moment(int l, int m, const Real& X) {
  if (l < 0) throw std::invalid_argument("moment power must be >= 0");
  std::vector<Real> C(static_cast<std::size_t>(l + 1)), S(C.size());
  fill_column(l, std::abs(m), X, C.data(), S.data(), 1);
  return C.back();
}

Real sin_moment(int l, int m, const Real& X) {
  if (l < 0) throw std::invalid_argument("moment power must be >= 0");
  std::vector<Real> C(static_cast<std::size_t>(l + 1)), S(C.size());
  fill_column(l, std::abs(m), X, C.data(), S.data(), 1);
  return m < 0 ? Real(-S.back()) : S.back();
}

GalerkinOracle galerkin_assemble_serial(const ProblemSpec& input, int N) {
  check_size(N);
  const ProblemSpec spec = at_current_precision(input);
  const Assembly as(spec, N);
  GalerkinOracle g;
  g.N = N;
  g.X = spec.X;
  g.A.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
  for (int q = 1; q <= N; ++q) as.row(q, &g.A[static_cast<std::size_t>((q - 1) * N)]);
  return g;
}

GalerkinOracle galerkin_assemble(const ProblemSpec& input, int N) {
  check_size(N);
  const ProblemSpec spec = at_current_precision(input);
  const Assembly as(spec, N);
  GalerkinOracle g;
  g.N = N;
  g.X = spec.X;
  g.A.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
  const PrecisionContext ctx(current_digits());
#pragma omp parallel
  {
    PrecisionScope scope(ctx);
#pragma omp for schedule(dynamic, 4)
    for (int q = 1; q <= N; ++q) as.row(q, &g.A[static_cast<std::size_t>((q - 1) * N)]);
  }
  return g;
}

namespace {

struct LU {
  int N = 0;
  std::vector<Real> a;
  std::vector<int> piv;
  bool singular = false;

  Real& at(int i, int j) { return a[static_cast<std::size_t>(i * N + j)]; }
  const Real& at(int i, int j) const { return a[static_cast<std::size_t>(i * N + j)]; }

  void solve(std::vector<Real>& x) const {
    for (int i = 0; i < N; ++i) std::swap(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(piv[i])]);
    for (int i = 0; i < N; ++i) {
      Real s = x[static_cast<std::size_t>(i)];
      for (int k = 0; k < i; ++k) s -= at(i, k) * x[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(i)] = s;
    }
    for (int i = N - 1; i >= 0; --i) {
      Real s = x[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < N; ++k) s -= at(i, k) * x[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(i)] = s / at(i, i);
    }
  }
};

LU factor(const GalerkinOracle& g, const Real& shift) {
  LU lu;
  lu.N = g.N;
  lu.a = g.A;
  lu.piv.resize(static_cast<std::size_t>(g.N));
  const int N = g.N;
  for (int i = 0; i < N; ++i) lu.at(i, i) -= shift;
  for (int k = 0; k < N; ++k) {
    int p = k;
    for (int i = k + 1; i < N; ++i) {
      if (mp::abs(lu.at(i, k)) > mp::abs(lu.at(p, k))) p = i;
    }
    lu.piv[static_cast<std::size_t>(k)] = p;
    if (p != k) {
      for (int j = 0; j < N; ++j) std::swap(lu.at(k, j), lu.at(p, j));
    }
    if (lu.at(k, k) == 0) {
      lu.singular = true;
      return lu;
    }
    for (int i = k + 1; i < N; ++i) {
      if (lu.at(i, k) == 0) continue;
      const Real f = lu.at(i, k) / lu.at(k, k);
      lu.at(i, k) = f;
      for (int j = k + 1; j < N; ++j) lu.at(i, j) -= f * lu.at(k, j);
    }
  }
  return lu;
}

std::vector<Real> matvec(const GalerkinOracle& g, const std::vector<Real>& x) {
  std::vector<Real> y(x.size());
  for (int i = 0; i < g.N; ++i) {
    Real s(0);
    for (int j = 0; j < g.N; ++j) s += g.at(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

Real dot(const std::vector<Real>& x, const std::vector<Real>& y) {
  Real s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

OracleResult inverse_iteration(const GalerkinOracle& oracle, const Real& shift, int max_iter) {
  if (oracle.N < 1) throw std::invalid_argument("empty oracle matrix");
  const int digits = current_digits();
  Real sigma = shift;
  LU lu = factor(oracle, sigma);
  for (int bump = 1; lu.singular && bump <= 8; ++bump) {
    sigma = shift + bump * mp::pow(Real(10), -digits / 3) * std::max(Real(1), mp::abs(shift));
    lu = factor(oracle, sigma);
  }
  if (lu.singular) throw OracleError("shifted matrix stays singular", Real(0));

  const Real tol = mp::pow(Real(10), -(digits / 2));
  std::vector<Real> x(static_cast<std::size_t>(oracle.N));
  for (int i = 0; i < oracle.N; ++i) x[static_cast<std::size_t>(i)] = Real(1) / (i + 1);
  OracleResult res;
  Real prev_lambda = sigma;
  for (int it = 1; it <= max_iter; ++it) {
    lu.solve(x);
    const Real nrm = mp::sqrt(dot(x, x));
    for (auto& v : x) v /= nrm;
    const std::vector<Real> Ax = matvec(oracle, x);
    const Real lambda = dot(x, Ax);
    Real r2(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Real e = Ax[i] - lambda * x[i];
      r2 += e * e;
    }
    res.eigenvalue = lambda;
    res.iterations = it;
    res.residual = mp::sqrt(r2);
    const Real scale = std::max(Real(1), mp::abs(lambda));
    if (res.residual <= tol * scale && mp::abs(lambda - prev_lambda) <= tol * scale) return res;
    prev_lambda = lambda;
  }
  throw OracleError("inverse iteration did not converge in " + std::to_string(max_iter) +
                        " iterations (residual " + to_scientific(res.residual, 3) + ")",
                    res.residual);
}

Real galerkin_nearest_eigenvalue(const ProblemSpec& spec, const Real& shift, int N) {
  if (N < 20) throw std::invalid_argument("Galerkin oracle needs N >= 20");
  return inverse_iteration(galerkin_assemble(spec, N), shift).eigenvalue;
}

}  // namespace fdsl
