#include "l1split/real.hpp"

#include <cmath>

#include "l1split/errors.hpp"

namespace l1split {

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 8;
}

thread_local mpfr_prec_t t_bits = digits_to_bits(100);
thread_local int t_digits = 100;
thread_local PrecisionContext t_ctx{50, 50};

}  // namespace

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::CollisionSingularity: return "CollisionSingularity";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::DegenerateCircle: return "DegenerateCircle";
    case ErrorKind::NotAnEquilibrium: return "NotAnEquilibrium";
    case ErrorKind::NoRealUnstableDirection: return "NoRealUnstableDirection";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::CollisionApproach: return "CollisionApproach";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::ResonantOrder: return "ResonantOrder";
    case ErrorKind::SingularSolve: return "SingularSolve";
    case ErrorKind::DomainCollapse: return "DomainCollapse";
    case ErrorKind::CollisionPoint: return "CollisionPoint";
    case ErrorKind::HyperbolicState: return "HyperbolicState";
    case ErrorKind::NearParabolic: return "NearParabolic";
    case ErrorKind::NegativeAction: return "NegativeAction";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::RouteMismatch: return "RouteMismatch";
    case ErrorKind::BelowDeskFloor: return "BelowDeskFloor";
    case ErrorKind::BranchMisidentified: return "BranchMisidentified";
    case ErrorKind::NonpositiveValue: return "NonpositiveValue";
    case ErrorKind::DegenerateAbscissae: return "DegenerateAbscissae";
    case ErrorKind::DuplicateAbscissae: return "DuplicateAbscissae";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

mpfr_prec_t PrecisionContext::bits() const { return digits_to_bits(working_digits()); }

void PrecisionContext::validate() const {
  if (digits < 30) throw Error(ErrorKind::ConfigInvalid, "digits must be >= 30");
  if (guard < 0) throw Error(ErrorKind::ConfigInvalid, "guard must be >= 0");
}

mpfr_prec_t working_bits() { return t_bits; }
int working_digits10() { return t_digits; }
PrecisionContext current_context() { return t_ctx; }

PrecisionScope::PrecisionScope(const PrecisionContext& ctx)
    : saved_(t_bits), saved_digits_(t_digits), saved_ctx_(t_ctx) {
  t_bits = ctx.bits();
  t_digits = ctx.working_digits();
  t_ctx = ctx;
}

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(t_bits), saved_digits_(t_digits), saved_ctx_(t_ctx) {
  t_bits = bits;
  t_digits = static_cast<int>(static_cast<double>(bits) / kLog2Of10);
  t_ctx = PrecisionContext{t_digits, 0};
}

PrecisionScope::~PrecisionScope() {
  t_bits = saved_;
  t_digits = saved_digits_;
  t_ctx = saved_ctx_;
}

Real::Real() {
  mpfr_init2(v_, t_bits);
  mpfr_set_zero(v_, 1);
}
Real::Real(int v) : Real(static_cast<long>(v)) {}
Real::Real(long v) {
  mpfr_init2(v_, t_bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}
Real::Real(long long v) : Real(static_cast<long>(v)) {}
Real::Real(unsigned long v) {
  mpfr_init2(v_, t_bits);
  mpfr_set_ui(v_, v, MPFR_RNDN);
}
Real::Real(double v) {
  mpfr_init2(v_, t_bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}
Real::Real(std::string_view decimal) {
  mpfr_init2(v_, t_bits);
  std::string s(decimal);
  char* end = nullptr;
  mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') {
    mpfr_clear(v_);
    throw Error(ErrorKind::DomainError, "cannot parse real '" + s + "'");
  }
}
Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
Real::~Real() { mpfr_clear(v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real& Real::operator=(long v) {
  mpfr_set_si(v_, v, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
Real& Real::operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

Real Real::operator-() const {
  Real r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

double Real::log10_abs() const {
  if (mpfr_zero_p(v_)) return -INFINITY;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398119521;
}

std::string Real::str() const {
  return str(static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_))));
}

std::string Real::str(int significant) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(significant), v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string out;
  if (digits[0] == '-') {
    out.push_back('-');
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  out.push_back(digits[0]);
  if (digits.size() > 1) {
    out.push_back('.');
    out.append(digits, 1, std::string::npos);
  }
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

#define L1S_BINOP(op, fn)                                \
  Real operator op(const Real& a, const Real& b) {      \
    Real r;                                              \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);            \
    return r;                                            \
  }
L1S_BINOP(+, mpfr_add)
L1S_BINOP(-, mpfr_sub)
L1S_BINOP(*, mpfr_mul)
L1S_BINOP(/, mpfr_div)
#undef L1S_BINOP

Real operator+(const Real& a, long b) { Real r; mpfr_add_si(r.get(), a.get(), b, MPFR_RNDN); return r; }
Real operator-(const Real& a, long b) { Real r; mpfr_sub_si(r.get(), a.get(), b, MPFR_RNDN); return r; }
Real operator*(const Real& a, long b) { Real r; mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN); return r; }
Real operator/(const Real& a, long b) { Real r; mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN); return r; }
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) { Real r; mpfr_si_sub(r.get(), a, b.get(), MPFR_RNDN); return r; }
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) { Real r; mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN); return r; }

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.get(), b.get());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define L1S_UNARY(name, fn)              \
  Real name(const Real& x) {             \
    Real r;                              \
    fn(r.get(), x.get(), MPFR_RNDN);     \
    return r;                            \
  }
L1S_UNARY(abs, mpfr_abs)
L1S_UNARY(sqrt, mpfr_sqrt)
L1S_UNARY(cbrt, mpfr_cbrt)
L1S_UNARY(exp, mpfr_exp)
L1S_UNARY(expm1, mpfr_expm1)
L1S_UNARY(log, mpfr_log)
L1S_UNARY(log1p, mpfr_log1p)
L1S_UNARY(sin, mpfr_sin)
L1S_UNARY(cos, mpfr_cos)
L1S_UNARY(tan, mpfr_tan)
L1S_UNARY(asin, mpfr_asin)
L1S_UNARY(acos, mpfr_acos)
L1S_UNARY(atan, mpfr_atan)
L1S_UNARY(sinh, mpfr_sinh)
L1S_UNARY(cosh, mpfr_cosh)
L1S_UNARY(tanh, mpfr_tanh)
#undef L1S_UNARY

void sin_cos(const Real& x, Real& s, Real& c) { mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN); }

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}
Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.get(), x.get());
  return r;
}
Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
Real pow10(long e) {
  Real r;
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}
Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

}  // namespace l1split
