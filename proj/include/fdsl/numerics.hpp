#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdsl {

/// Arbitrary-precision real. Expression templates are disabled so that
/// temporaries behave like plain values inside OpenMP regions.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

constexpr int kDefaultDigits = 300;
constexpr int kMinDigits = 30;

/// Working precision in decimal digits.
struct PrecisionContext {
  int digits = kDefaultDigits;

  explicit PrecisionContext(int d = kDefaultDigits);
};

/// Makes `ctx` the precision of every Real created on this thread until the
/// scope ends. The previous thread precision is restored on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Digits of the precision currently active on this thread.
int current_digits();

/// Copy of `x` rounded to the current thread precision. Plain copies and
/// arithmetic keep the precision of their operands.
Real at_current_precision(const Real& x);

/// pi at the current thread precision.
Real pi();
Real const_pi(const PrecisionContext& ctx);

enum class ElemFn { sin, cos, sinh, cosh, exp, sqrt };

/// Elementary function at the context's precision; throws std::domain_error
/// for sqrt of a negative argument.
Real elem(ElemFn f, const Real& x, const PrecisionContext& ctx);

/// Parses a decimal literal at full working precision. Accepts the Unicode
/// minus sign (U+2212) in place of '-'.
Real parse_real(std::string_view text);

/// Round-to-nearest scientific rendering with `significant` digits.
std::string to_scientific(const Real& x, int significant);

/// Round-to-nearest fixed-point style rendering with `significant` digits
/// (plain digits without an exponent).
std::string to_decimal(const Real& x, int significant);

/// Converts to double with saturation to +-DBL_MAX and flush to zero.
double to_double(const Real& x);

/// Number of leading significant decimal digits on which `a` and `b` agree,
/// clamped to [0, cap]. Two exact zeros agree on all `cap` digits.
int agreeing_digits(const Real& a, const Real& b, int cap);

/// Runs `computation` under both contexts and reports how many leading digits
/// of the two results agree (at most ctx_lo.digits).
int stability_probe(const std::function<Real()>& computation, const PrecisionContext& ctx_hi,
                    const PrecisionContext& ctx_lo);

/// |x| <= 10^{-exponent}
bool below_power_of_ten(const Real& x, int exponent);

/// log10|x| as a double; -infinity for zero.
double log10_abs(const Real& x);

}  // namespace fdsl
