#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace l1split {

// Decimal precision budget for a job. Arithmetic runs at digits + guard.
struct PrecisionContext {
  int digits = 50;
  int guard = 50;

  int working_digits() const { return digits + guard; }
  mpfr_prec_t bits() const;
  void validate() const;
};

// Binary precision used when constructing new Real values on this thread.
mpfr_prec_t working_bits();
int working_digits10();
// Context installed by the innermost PrecisionScope on this thread.
PrecisionContext current_context();

// Sets the thread's working precision for its lifetime and restores the old one.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  explicit PrecisionScope(mpfr_prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
  int saved_digits_;
  PrecisionContext saved_ctx_;
};

// Owning MPFR value, round-to-nearest throughout.
class Real {
 public:
  Real();
  Real(int v);
  Real(long v);
  Real(long long v);
  Real(unsigned long v);
  Real(double v);
  explicit Real(std::string_view decimal);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  ~Real();

  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  Real& operator=(long v);
  Real& operator=(int v) { return *this = static_cast<long>(v); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);
  Real operator-() const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // log10|x| as a double, valid far outside double range; -inf for zero.
  double log10_abs() const;
  // Full-precision scientific decimal; round-trips exactly at this precision.
  std::string str() const;
  // Scientific decimal with the given number of significant digits.
  std::string str(int significant) const;

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);
inline Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
inline Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator+(int a, const Real& b) { return static_cast<long>(a) + b; }
inline Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
inline Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
inline Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
inline bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) == 0; }
inline std::partial_ordering operator<=>(const Real& a, long b) {
  int c = mpfr_cmp_si(a.get(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}
inline bool operator==(const Real& a, int b) { return a == static_cast<long>(b); }
inline std::partial_ordering operator<=>(const Real& a, int b) { return a <=> static_cast<long>(b); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real tan(const Real& x);
Real asin(const Real& x);
Real acos(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real hypot(const Real& x, const Real& y);
Real floor(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real pi();
// 10^e exactly rounded.
Real pow10(long e);
Real ldexp(const Real& x, long e);

// Real and imaginary parts kept as a pair; only used where a complex value is unavoidable.
struct ComplexPair {
  Real re;
  Real im;
};

}  // namespace l1split
