#include "fdsl/recursion.hpp"

#include "fdsl/spectral.hpp"

namespace fdsl {

namespace mp = boost::multiprecision;

const char* family_name(Family f) { return f == Family::trig ? "trig" : "hyp"; }

Mat2 Mat2::zero() { return {Real(0), Real(0), Real(0), Real(0)}; }
Mat2 Mat2::identity() { return {Real(1), Real(0), Real(0), Real(1)}; }
Mat2 Mat2::rotation() { return {Real(0), Real(-1), Real(1), Real(0)}; }
Mat2 Mat2::reflection() { return {Real(1), Real(0), Real(0), Real(-1)}; }

Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.x + v.x, u.y + v.y}; }

Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y}; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11, a.m10 * b.m00 + a.m11 * b.m10,
          a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 operator*(const Real& s, const Mat2& m) { return {s * m.m00, s * m.m01, s * m.m10, s * m.m11}; }

int KroneckerFloorHelpers::floor_div(int y, int d) {
  int q = y / d;
  if ((y % d != 0) && ((y < 0) != (d < 0))) --q;
  return q;
}

int family_extent(Family f, const StepBudget& budget, int j) { return f == Family::trig ? budget.M(j + 1) : budget.M(j); }

namespace {

Real freq_of(const ProblemSpec& spec, int n) { return pi() * n / spec.X; }

const std::vector<Real>& even_rhs(Family f, const RhsCoefficients& rhs) {
  return f == Family::trig ? rhs.f_cos : rhs.f_cosh;
}

const std::vector<Real>& odd_rhs(Family f, const RhsCoefficients& rhs) {
  return f == Family::trig ? rhs.f_sin : rhs.f_sinh;
}

}  // namespace

std::optional<Top3> top_initial_coeffs(Family f, const RhsCoefficients& rhs, const ProblemSpec& spec, int n, int j) {
  using H = KroneckerFloorHelpers;
  const StepBudget budget(spec);
  const int M = family_extent(f, budget, j);
  if (M < 2) return std::nullopt;
  const Real inv = 1 / freq_of(spec, n);
  const auto& fe = even_rhs(f, rhs);
  const auto& fo = odd_rhs(f, rhs);
  auto pick = [&](int k, int idx) -> const Real* {
    const auto& v = H::chi_is_even(k) ? fe : fo;
    if (idx < 0 || idx >= static_cast<int>(v.size())) return nullptr;
    return &v[static_cast<std::size_t>(idx)];
  };
  Top3 top{Vec2{Real(0), Real(0)}, Vec2{Real(0), Real(0)}, Vec2{Real(0), Real(0)}};
  for (int s = 0; s <= 2; ++s) {
    for (int k = 0; k <= s; ++k) {
      const int idx = M - s - 1 + k;
      const int denom = M - s + H::floor_div(k + H::delta(2, s), 2);
      Real factor = Real(2 * k + 1) * mp::pow(Real(M - 1), k) / (mp::pow(Real(2), 2 + k) * denom) *
                    mp::pow(inv, 3 + k);
      int sign_first, sign_second;
      if (f == Family::trig) {
        sign_first = (H::floor_div(k, 2) + 1) % 2 == 0 ? 1 : -1;
        sign_second = H::floor_div(k + 1, 2) % 2 == 0 ? 1 : -1;
      } else {
        // Alternating in k; the k = 2 member follows from solving the
        // hyperbolic system downwards.
        sign_first = k % 2 == 0 ? 1 : -1;
        sign_second = sign_first;
      }
      if (const Real* v = pick(k, idx)) top[static_cast<std::size_t>(s)].x += *v * factor * sign_first;
      if (const Real* v = pick(k + 1, idx)) top[static_cast<std::size_t>(s)].y += *v * factor * sign_second;
    }
  }
  return top;
}

RecurrenceState recurrence_state(Family f, const RhsCoefficients& rhs, const ProblemSpec& spec, int n, int j) {
  const StepBudget budget(spec);
  return RecurrenceState{f, family_extent(f, budget, j), freq_of(spec, n), &rhs};
}

Mat2 RecurrenceState::D(int col, int p) const {
  const Real& k = freq;
  Mat2 ab;
  switch (col) {
    case 1:
      ab = (Real(3) * (M - p - 2) / (2 * k)) * Mat2::rotation();
      break;
    case 2:
      ab = (Real((M - p - 1) * (M - p - 2)) / (k * k)) * Mat2::identity();
      break;
    case 3:
      ab = (-Real((M - p) * (M - p - 1) * (M - p - 2)) / (4 * k * k * k)) * Mat2::rotation();
      break;
    default:
      throw std::out_of_range("recurrence matrix column must be 1..3");
  }
  if (family == Family::trig) return ab;
  switch (col) {
    case 1:
      return Mat2::reflection() * ab;
    case 2:
      return Real(-1) * ab;
    default:
      return Real(-1) * (Mat2::reflection() * ab);
  }
}

Vec2 RecurrenceState::F(int p) const {
  const int idx = M - p - 4;
  const Real scale = 1 / (Real(4 * (M - p - 3)) * freq * freq * freq);
  const auto& fe = even_rhs(family, *rhs);
  const auto& fo = odd_rhs(family, *rhs);
  const Real& e = fe.at(static_cast<std::size_t>(idx));
  const Real& o = fo.at(static_cast<std::size_t>(idx));
  if (family == Family::trig) return {-e * scale, o * scale};
  return {e * scale, o * scale};
}

Mat2 RecurrenceState::block(int row, int col, int p) const {
  if (row == 1) return D(col, p);
  if (row == 2) return col == 1 ? Mat2::identity() : Mat2::zero();
  if (row == 3) return col == 2 ? Mat2::identity() : Mat2::zero();
  throw std::out_of_range("block row must be 1..3");
}

std::vector<Vec2> run_recurrence(const RecurrenceState& st, const Top3& top) {
  std::vector<Vec2> z;
  z.reserve(static_cast<std::size_t>(st.M + 1));
  for (int i = 0; i <= std::min(2, st.M); ++i) z.push_back(top[static_cast<std::size_t>(i)]);
  for (int p = 0; p <= st.M - 4; ++p) {
    const auto q = static_cast<std::size_t>(p);
    z.push_back(st.D(1, p) * z[q + 2] + st.D(2, p) * z[q + 1] + st.D(3, p) * z[q] + st.F(p));
  }
  return z;
}

namespace {

// Sum over index tuples l_0..l_L (l_L = 1) of
//   block(l_L, l_{L-1}, s0 + L - 1) ... block(l_1, l_0, s0) * v(l_0),
// with l_0 fixed to `l0` when l0 > 0.
Vec2 sum_paths(const RecurrenceState& st, int s0, int L, int l0, const std::function<Vec2(int)>& v) {
  Vec2 total{Real(0), Real(0)};
  const int free_from = l0 > 0 ? 1 : 0;
  const int free_count = L - free_from;
  int combos = 1;
  for (int i = 0; i < free_count; ++i) combos *= 3;
  std::vector<int> l(static_cast<std::size_t>(L + 1), 1);
  for (int c = 0; c < combos; ++c) {
    int code = c;
    if (l0 > 0) l[0] = l0;
    for (int i = free_from; i < L; ++i) {
      l[static_cast<std::size_t>(i)] = 1 + code % 3;
      code /= 3;
    }
    l[static_cast<std::size_t>(L)] = 1;
    Vec2 acc = v(l[0]);
    for (int i = 0; i < L; ++i) {
      acc = st.block(l[static_cast<std::size_t>(i + 1)], l[static_cast<std::size_t>(i)], s0 + i) * acc;
    }
    total = total + acc;
  }
  return total;
}

}  // namespace

Vec2 product_form(const RecurrenceState& st, const Top3& top, int p) {
  if (p < 0 || p > st.M - 4) throw std::out_of_range("product form needs 0 <= p <= M - 4");
  Vec2 z = sum_paths(st, 0, p + 1, 0, [&](int l0) { return top[static_cast<std::size_t>(3 - l0)]; });
  for (int s = 1; s <= p; ++s) {
    const Vec2 f = st.F(p - s);
    z = z + sum_paths(st, p - s + 1, s, 1, [&](int) { return f; });
  }
  return z + st.F(p);
}

Closure closure_index0(const CorrectionTerm& term, const MomentTable& moments) {
  const auto& u = term.u;
  const Real& k = u.freq;
  auto get = [](const std::vector<Real>& v, std::size_t i) { return i < v.size() ? v[i] : Real(0); };
  Closure c;
  c.b0 = (get(u.a, 1) + get(u.c, 1) + (get(u.b, 2) + get(u.d, 2)) / k) / k;
  c.d0 = -c.b0;
  const Real pin = k * term.X;
  const Real cos_pin = term.n % 2 == 0 ? Real(1) : Real(-1);
  Real sh, ch;
  mpfr_sinh_cosh(sh.backend().data(), ch.backend().data(), pin.backend().data(), MPFR_RNDN);
  Real sum_b(0), sum_d(0), sum_c(0), xt(1);
  for (std::size_t t = 0; t < std::max(u.b.size(), u.d.size()); ++t) {
    if (t < u.b.size()) sum_b += xt * (t == 0 ? c.b0 : u.b[t]);
    if (t < u.d.size()) sum_d += xt * (t == 0 ? c.d0 : u.d[t]);
    if (t >= 1 && t < u.c.size()) sum_c += xt * u.c[t];
    xt *= term.X;
  }
  c.c0 = -(sum_b * cos_pin + sum_d * ch) / sh - sum_c;
  Real orth(0);
  for (std::size_t t = 1; t < u.a.size(); ++t) orth += moments.beta_at(t) * u.b[t] + moments.alpha_at(t) * u.a[t];
  for (std::size_t t = 0; t < u.c.size(); ++t) {
    const Real& dt = t == 0 ? c.d0 : u.d[t];
    const Real& ct = t == 0 ? c.c0 : u.c[t];
    orth += moments.eta_at(t) * dt + moments.mu_at(t) * ct;
  }
  c.a0 = -2 * orth / term.X;
  return c;
}

CorrectionTerm solve_step(const ProblemSpec& spec, int n, int j, const RhsCoefficients& rhs,
                          const MomentTable& moments, std::vector<ClosureOverride>* overrides) {
  const StepBudget budget(spec);
  CorrectionTerm term;
  term.n = n;
  term.j = j + 1;
  term.X = spec.X;
  term.u.freq = freq_of(spec, n);

  std::optional<Vec2> trig_index0, hyp_index0;
  auto fill = [&](Family f, std::vector<Real>& first, std::vector<Real>& second, std::optional<Vec2>& index0) {
    const int M = family_extent(f, budget, j);
    first.assign(static_cast<std::size_t>(M + 1), Real(0));
    second.assign(static_cast<std::size_t>(M + 1), Real(0));
    auto top = top_initial_coeffs(f, rhs, spec, n, j);
    if (!top) return;
    auto z = run_recurrence(recurrence_state(f, rhs, spec, n, j), *top);
    for (std::size_t i = 0; i < z.size(); ++i) {
      first[static_cast<std::size_t>(M) - i] = z[i].x;
      second[static_cast<std::size_t>(M) - i] = z[i].y;
    }
    if (M == 2) index0 = z[2];
  };
  fill(Family::trig, term.u.a, term.u.b, trig_index0);
  fill(Family::hyp, term.u.c, term.u.d, hyp_index0);

  const Closure c = closure_index0(term, moments);
  term.u.a[0] = c.a0;
  term.u.b[0] = c.b0;
  term.u.c[0] = c.c0;
  term.u.d[0] = c.d0;
  if (overrides) {
    if (trig_index0) {
      overrides->push_back(
          {j + 1, "trig", std::max(mp::abs(trig_index0->x - c.a0), mp::abs(trig_index0->y - c.b0))});
    }
    if (hyp_index0) {
      overrides->push_back({j + 1, "hyp", std::max(mp::abs(hyp_index0->x - c.c0), mp::abs(hyp_index0->y - c.d0))});
    }
  }
  return term;
}

}  // namespace fdsl
