#include "fdsl/numerics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace fdsl {

namespace mp = boost::multiprecision;

PrecisionContext::PrecisionContext(int d) : digits(d) {
  if (d < kMinDigits) {
    throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                " digits, got " + std::to_string(d));
  }
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : previous_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(ctx.digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

int current_digits() { return static_cast<int>(Real::default_precision()); }

Real at_current_precision(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), GMP_RNDN);
  return r;
}

Real const_pi(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return pi();
}

Real elem(ElemFn f, const Real& x, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Real arg(x);
  switch (f) {
    case ElemFn::sin:
      return mp::sin(arg);
    case ElemFn::cos:
      return mp::cos(arg);
    case ElemFn::sinh:
      return mp::sinh(arg);
    case ElemFn::cosh:
      return mp::cosh(arg);
    case ElemFn::exp:
      return mp::exp(arg);
    case ElemFn::sqrt:
      if (arg < 0) throw std::domain_error("sqrt of a negative number");
      return mp::sqrt(arg);
  }
  throw std::logic_error("unknown elementary function");
}

Real parse_real(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (text[i] == ' ' || text[i] == '\t') continue;
    s.push_back(text[i]);
  }
  if (s.empty()) throw std::invalid_argument("empty number");
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
}

std::string to_scientific(const Real& x, int significant) {
  // str() counts digits after the point in scientific mode.
  return x.str(std::max(significant - 1, 0), std::ios_base::scientific);
}

std::string to_decimal(const Real& x, int significant) {
  if (x == 0) return "0";
  // str() with no format flags gives `significant` digits, switching to
  // exponent form only for very large or small magnitudes.
  return x.str(significant);
}

double to_double(const Real& x) {
  if (x > DBL_MAX) return DBL_MAX;
  if (x < -DBL_MAX) return -DBL_MAX;
  return x.convert_to<double>();
}

int agreeing_digits(const Real& a, const Real& b, int cap) {
  if (a == b) return cap;
  Real scale = std::max(mp::abs(a), mp::abs(b));
  Real rel = mp::abs(a - b) / scale;
  if (rel >= 1) return 0;
  double d = -mp::log10(rel).convert_to<double>();
  return std::clamp(static_cast<int>(std::floor(d)), 0, cap);
}

int stability_probe(const std::function<Real()>& computation, const PrecisionContext& ctx_hi,
                    const PrecisionContext& ctx_lo) {
  if (ctx_hi.digits <= ctx_lo.digits) {
    throw std::invalid_argument("stability_probe needs ctx_hi.digits > ctx_lo.digits");
  }
  Real lo;
  {
    PrecisionScope scope(ctx_lo);
    lo = computation();
  }
  PrecisionScope scope(ctx_hi);
  Real hi = computation();
  Real lo_widened(lo);
  return agreeing_digits(hi, lo_widened, ctx_lo.digits);
}

bool below_power_of_ten(const Real& x, int exponent) {
  if (x == 0) return true;
  return log10_abs(x) <= -static_cast<double>(exponent);
}

double log10_abs(const Real& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return mp::log10(mp::abs(x)).convert_to<double>();
}

}  // namespace fdsl
