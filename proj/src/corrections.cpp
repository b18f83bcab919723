#include "fdsl/corrections.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace fdsl {

namespace mp = boost::multiprecision;

BasisValues basis_values(const Real& freq, const Real& x) {
  Real arg = freq * x;
  BasisValues v;
  mpfr_sin_cos(v.sin.backend().data(), v.cos.backend().data(), arg.backend().data(), MPFR_RNDN);
  mpfr_sinh_cosh(v.sinh.backend().data(), v.cosh.backend().data(), arg.backend().data(), MPFR_RNDN);
  return v;
}

namespace {

Real at(const std::vector<Real>& v, std::size_t i) { return i < v.size() ? v[i] : Real(0); }

Real horner(const std::vector<Real>& c, const Real& x) {
  Real acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void check_shape(const BasisExpansion& u) {
  if (u.a.size() != u.b.size() || u.c.size() != u.d.size()) {
    throw std::invalid_argument("basis expansion families must have paired lengths");
  }
}

}  // namespace

BasisExpansion derivative(const BasisExpansion& u, int order) {
  check_shape(u);
  if (order < 0) throw std::invalid_argument("negative derivative order");
  BasisExpansion cur = u;
  const Real& k = u.freq;
  for (int step = 0; step < order; ++step) {
    BasisExpansion next;
    next.freq = k;
    const std::size_t nt = cur.a.size();
    next.a.resize(nt);
    next.b.resize(nt);
    for (std::size_t p = 0; p < nt; ++p) {
      next.b[p] = at(cur.b, p + 1) * static_cast<long>(p + 1) + k * cur.a[p];
      next.a[p] = at(cur.a, p + 1) * static_cast<long>(p + 1) - k * cur.b[p];
    }
    const std::size_t nh = cur.c.size();
    next.c.resize(nh);
    next.d.resize(nh);
    for (std::size_t p = 0; p < nh; ++p) {
      next.d[p] = at(cur.d, p + 1) * static_cast<long>(p + 1) + k * cur.c[p];
      next.c[p] = at(cur.c, p + 1) * static_cast<long>(p + 1) + k * cur.d[p];
    }
    cur = std::move(next);
  }
  return cur;
}

BasisExpansion multiply(const Polynomial& q, const BasisExpansion& u) {
  check_shape(u);
  BasisExpansion out;
  out.freq = u.freq;
  auto conv = [&](const std::vector<Real>& src) {
    std::vector<Real> dst;
    if (src.empty()) return dst;
    dst.assign(src.size() + q.coeffs.size() - 1, Real(0));
    for (std::size_t l = 0; l < q.coeffs.size(); ++l) {
      if (q.coeffs[l] == 0) continue;
      for (std::size_t p = 0; p < src.size(); ++p) dst[l + p] += q.coeffs[l] * src[p];
    }
    return dst;
  };
  out.a = conv(u.a);
  out.b = conv(u.b);
  out.c = conv(u.c);
  out.d = conv(u.d);
  return out;
}

void add_scaled(BasisExpansion& y, const Real& s, const BasisExpansion& x) {
  check_shape(x);
  auto axpy = [&](std::vector<Real>& dst, const std::vector<Real>& src) {
    if (dst.size() < src.size()) dst.resize(src.size(), Real(0));
    for (std::size_t p = 0; p < src.size(); ++p) dst[p] += s * src[p];
  };
  axpy(y.a, x.a);
  axpy(y.b, x.b);
  axpy(y.c, x.c);
  axpy(y.d, x.d);
}

Real evaluate(const BasisExpansion& u, const Real& x, const BasisValues& v) {
  Real trig = horner(u.b, x) * v.cos + horner(u.a, x) * v.sin;
  if (u.c.empty()) return trig;
  return trig + horner(u.d, x) * v.cosh + horner(u.c, x) * v.sinh;
}

Real evaluate(const BasisExpansion& u, const Real& x) { return evaluate(u, x, basis_values(u.freq, x)); }

BasePair base_pair(const ProblemSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("eigenpair index n must be >= 1, got " + std::to_string(n));
  const Real pi = fdsl::pi();
  BasePair out;
  out.term.n = n;
  out.term.j = 0;
  out.term.X = spec.X;
  out.term.u.freq = pi * n / spec.X;
  out.term.u.a = {mp::sqrt(Real(2) / spec.X)};
  out.term.u.b = {Real(0)};
  out.lambda0 = mp::pow(out.term.u.freq, 4);
  return out;
}

Real eval_term(const CorrectionTerm& t, const Real& x, int deriv) {
  if (deriv < 0 || deriv > 4) throw std::invalid_argument("derivative order must be in 0..4");
  if (x < 0 || x > t.X) throw std::invalid_argument("evaluation point outside [0, X]");
  return evaluate(derivative(t.u, deriv), x);
}

Real FDSolution::lambda_at_rank(int rank) const {
  if (rank < 0 || rank > m) throw std::out_of_range("rank outside 0..m");
  Real s = lambda0;
  for (int j = 1; j <= rank; ++j) s += lambda_correction(j);
  return s;
}

BasisExpansion FDSolution::eigenfunction(int rank) const {
  if (rank < 0 || rank > m) throw std::out_of_range("rank outside 0..m");
  BasisExpansion u;
  u.freq = terms.front().u.freq;
  for (int j = 0; j <= rank; ++j) add_scaled(u, Real(1), terms[static_cast<std::size_t>(j)].u);
  return u;
}

FDSolution assemble(std::vector<CorrectionTerm> terms, std::vector<Real> lambda_corrections, const Real& lambda0,
                    int m) {
  if (m < 0) throw std::invalid_argument("rank m must be >= 0");
  if (terms.size() < static_cast<std::size_t>(m + 1) || lambda_corrections.size() < static_cast<std::size_t>(m)) {
    throw std::invalid_argument("not enough correction terms for rank " + std::to_string(m));
  }
  terms.resize(static_cast<std::size_t>(m + 1));
  lambda_corrections.resize(static_cast<std::size_t>(m));
  FDSolution sol;
  sol.n = terms.front().n;
  sol.m = m;
  sol.X = terms.front().X;
  sol.lambda0 = lambda0;
  sol.terms = std::move(terms);
  sol.lambda_corrections = std::move(lambda_corrections);
  sol.lambda_approx = sol.lambda_at_rank(m);
  return sol;
}

std::string to_json(const FDSolution& sol, int print_digits, int indent) {
  using nlohmann::json;
  auto arr = [&](const std::vector<Real>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_scientific(x, print_digits));
    return out;
  };
  json j;
  j["n"] = sol.n;
  j["m"] = sol.m;
  j["X"] = to_decimal(sol.X, print_digits);
  j["frequency"] = to_scientific(sol.terms.front().u.freq, print_digits);
  j["lambda0"] = to_scientific(sol.lambda0, print_digits);
  j["lambda_corrections"] = arr(sol.lambda_corrections);
  j["lambda_approx"] = to_decimal(sol.lambda_approx, print_digits);
  json terms = json::array();
  for (const auto& t : sol.terms) {
    terms.push_back({{"j", t.j}, {"a", arr(t.a())}, {"b", arr(t.b())}, {"c", arr(t.c())}, {"d", arr(t.d())}});
  }
  j["terms"] = std::move(terms);
  json ov = json::array();
  for (const auto& o : sol.overrides) {
    ov.push_back({{"j", o.j}, {"family", o.family}, {"discrepancy", to_scientific(o.discrepancy, 6)}});
  }
  j["closure_overrides"] = std::move(ov);
  return j.dump(indent);
}

}  // namespace fdsl
