#include "l1split/series.hpp"

#include "l1split/errors.hpp"

namespace l1split {

namespace {

// Scratch value reused by the kernels; resized when the working precision changes.
Real& scratch(int slot) {
  thread_local Real pool[3];
  Real& r = pool[slot];
  if (r.precision() != working_bits()) mpfr_set_prec(r.get(), working_bits());
  return r;
}

void check_order(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::OrderMismatch, "series orders differ");
}

}  // namespace

namespace kernel {

void convolve(Real& out, const Real* a, const Real* b, int k, int lo) {
  Real& t = scratch(0);
  mpfr_set_zero(out.get(), 1);
  for (int j = lo; j <= k - lo; ++j) {
    mpfr_mul(t.get(), a[j].get(), b[k - j].get(), MPFR_RNDN);
    mpfr_add(out.get(), out.get(), t.get(), MPFR_RNDN);
  }
}

void square(Real& out, const Real* a, int k) {
  Real& t = scratch(0);
  mpfr_set_zero(out.get(), 1);
  for (int j = 0; 2 * j < k; ++j) {
    mpfr_mul(t.get(), a[j].get(), a[k - j].get(), MPFR_RNDN);
    mpfr_add(out.get(), out.get(), t.get(), MPFR_RNDN);
  }
  mpfr_mul_2ui(out.get(), out.get(), 1, MPFR_RNDN);
  if (k % 2 == 0) {
    mpfr_sqr(t.get(), a[k / 2].get(), MPFR_RNDN);
    mpfr_add(out.get(), out.get(), t.get(), MPFR_RNDN);
  }
}

// S_k = (1/k) sum j a_j C_{k-j},  C_k = -(1/k) sum j a_j S_{k-j}
void sin_cos(Real* s, Real* c, const Real* a, int k) {
  if (k == 0) {
    mpfr_sin_cos(s[0].get(), c[0].get(), a[0].get(), MPFR_RNDN);
    return;
  }
  Real& t = scratch(0);
  Real& ja = scratch(1);
  mpfr_set_zero(s[k].get(), 1);
  mpfr_set_zero(c[k].get(), 1);
  for (int j = 1; j <= k; ++j) {
    if (a[j].is_zero()) continue;
    mpfr_mul_si(ja.get(), a[j].get(), j, MPFR_RNDN);
    mpfr_mul(t.get(), ja.get(), c[k - j].get(), MPFR_RNDN);
    mpfr_add(s[k].get(), s[k].get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), ja.get(), s[k - j].get(), MPFR_RNDN);
    mpfr_sub(c[k].get(), c[k].get(), t.get(), MPFR_RNDN);
  }
  mpfr_div_si(s[k].get(), s[k].get(), k, MPFR_RNDN);
  mpfr_div_si(c[k].get(), c[k].get(), k, MPFR_RNDN);
}

// E_k = (1/k) sum j a_j E_{k-j}
void exp(Real* e, const Real* a, int k) {
  if (k == 0) {
    mpfr_exp(e[0].get(), a[0].get(), MPFR_RNDN);
    return;
  }
  Real& t = scratch(0);
  mpfr_set_zero(e[k].get(), 1);
  for (int j = 1; j <= k; ++j) {
    mpfr_mul(t.get(), a[j].get(), e[k - j].get(), MPFR_RNDN);
    mpfr_mul_si(t.get(), t.get(), j, MPFR_RNDN);
    mpfr_add(e[k].get(), e[k].get(), t.get(), MPFR_RNDN);
  }
  mpfr_div_si(e[k].get(), e[k].get(), k, MPFR_RNDN);
}

// k a_0 P_k = sum_{j=1}^k ((alpha+1) j - k) a_j P_{k-j}
void power(Real* p, const Real* a, const Real& alpha, int k) {
  if (k == 0) {
    if (a[0].sign() <= 0) throw Error(ErrorKind::NegativeRadicand, "power of nonpositive leading coefficient");
    mpfr_pow(p[0].get(), a[0].get(), alpha.get(), MPFR_RNDN);
    return;
  }
  Real& t = scratch(0);
  Real& w = scratch(1);
  Real& ap1 = scratch(2);
  mpfr_add_si(ap1.get(), alpha.get(), 1, MPFR_RNDN);
  mpfr_set_zero(p[k].get(), 1);
  for (int j = 1; j <= k; ++j) {
    if (a[j].is_zero()) continue;
    mpfr_mul_si(w.get(), ap1.get(), j, MPFR_RNDN);
    mpfr_sub_si(w.get(), w.get(), k, MPFR_RNDN);
    mpfr_mul(t.get(), a[j].get(), p[k - j].get(), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), w.get(), MPFR_RNDN);
    mpfr_add(p[k].get(), p[k].get(), t.get(), MPFR_RNDN);
  }
  mpfr_div_si(p[k].get(), p[k].get(), k, MPFR_RNDN);
  mpfr_div(p[k].get(), p[k].get(), a[0].get(), MPFR_RNDN);
}

// R_k = -(1/a_0) sum_{j=1}^k a_j R_{k-j}
void recip(Real* r, const Real* a, int k) {
  if (k == 0) {
    if (a[0].is_zero()) throw Error(ErrorKind::ZeroLeadingCoefficient, "reciprocal of series with c0 = 0");
    mpfr_ui_div(r[0].get(), 1, a[0].get(), MPFR_RNDN);
    return;
  }
  Real& t = scratch(0);
  mpfr_set_zero(r[k].get(), 1);
  for (int j = 1; j <= k; ++j) {
    mpfr_mul(t.get(), a[j].get(), r[k - j].get(), MPFR_RNDN);
    mpfr_add(r[k].get(), r[k].get(), t.get(), MPFR_RNDN);
  }
  mpfr_mul(r[k].get(), r[k].get(), r[0].get(), MPFR_RNDN);
  mpfr_neg(r[k].get(), r[k].get(), MPFR_RNDN);
}

// Q_k = (a_k - sum_{j=1}^{k-1} Q_j Q_{k-j}) / (2 Q_0)
void sqrt(Real* q, const Real* a, int k) {
  if (k == 0) {
    if (a[0].sign() <= 0) throw Error(ErrorKind::NegativeRadicand, "sqrt needs c0 > 0");
    mpfr_sqrt(q[0].get(), a[0].get(), MPFR_RNDN);
    return;
  }
  Real& t = scratch(0);
  mpfr_set(q[k].get(), a[k].get(), MPFR_RNDN);
  for (int j = 1; j < k; ++j) {
    mpfr_mul(t.get(), q[j].get(), q[k - j].get(), MPFR_RNDN);
    mpfr_sub(q[k].get(), q[k].get(), t.get(), MPFR_RNDN);
  }
  mpfr_div(q[k].get(), q[k].get(), q[0].get(), MPFR_RNDN);
  mpfr_div_2ui(q[k].get(), q[k].get(), 1, MPFR_RNDN);
}

}  // namespace kernel

TruncSeries::TruncSeries(int order) : c_(static_cast<size_t>(order + 1)) {
  if (order < 0) throw Error(ErrorKind::OrderMismatch, "negative series order");
}

TruncSeries::TruncSeries(std::vector<Real> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw Error(ErrorKind::OrderMismatch, "empty coefficient list");
}

TruncSeries TruncSeries::variable(int order, const Real& c0) {
  TruncSeries s(order);
  s[0] = c0;
  if (order >= 1) s[1] = 1;
  return s;
}

TruncSeries TruncSeries::constant(int order, const Real& c0) {
  TruncSeries s(order);
  s[0] = c0;
  return s;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  check_order(a, b);
  TruncSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  check_order(a, b);
  TruncSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  check_order(a, b);
  TruncSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) kernel::convolve(r[k], &a[0], &b[0], k);
  return r;
}

TruncSeries operator*(const Real& c, const TruncSeries& a) {
  TruncSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = c * a[k];
  return r;
}

TruncSeries recip(const TruncSeries& a) {
  TruncSeries r(a.order());
  for (int k = 0; k <= a.order(); ++k) kernel::recip(&r[0], &a[0], k);
  return r;
}

TruncSeries int_pow(const TruncSeries& a, long n) {
  if (n < 0) return int_pow(recip(a), -n);
  TruncSeries result = TruncSeries::constant(a.order(), Real(1));
  TruncSeries base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::pair<TruncSeries, TruncSeries> sin_cos(const TruncSeries& a) {
  TruncSeries s(a.order()), c(a.order());
  for (int k = 0; k <= a.order(); ++k) kernel::sin_cos(&s[0], &c[0], &a[0], k);
  return {std::move(s), std::move(c)};
}

TruncSeries exp(const TruncSeries& a) {
  TruncSeries e(a.order());
  for (int k = 0; k <= a.order(); ++k) kernel::exp(&e[0], &a[0], k);
  return e;
}

TruncSeries sqrt(const TruncSeries& a) {
  TruncSeries q(a.order());
  for (int k = 0; k <= a.order(); ++k) kernel::sqrt(&q[0], &a[0], k);
  return q;
}

TruncSeries derivative(const TruncSeries& a) {
  TruncSeries d(a.order());
  for (int k = 1; k <= a.order(); ++k) d[k - 1] = a[k] * k;
  return d;
}

TruncSeries ts_arith(ArithKind kind, const TruncSeries& a, const TruncSeries* b, long n) {
  auto need_b = [&]() -> const TruncSeries& {
    if (!b) throw Error(ErrorKind::OrderMismatch, "binary operation needs a second series");
    return *b;
  };
  switch (kind) {
    case ArithKind::add: return a + need_b();
    case ArithKind::sub: return a - need_b();
    case ArithKind::mul: return a * need_b();
    case ArithKind::recip: return recip(a);
    case ArithKind::int_pow: return int_pow(a, n);
  }
  return a;
}

std::pair<TruncSeries, TruncSeries> ts_elem(ElemKind kind, const TruncSeries& a) {
  switch (kind) {
    case ElemKind::sin_cos: return sin_cos(a);
    case ElemKind::exp: return {exp(a), TruncSeries(0)};
    case ElemKind::sqrt: return {sqrt(a), TruncSeries(0)};
  }
  return {a, TruncSeries(0)};
}

void horner(Real& out, const Real* c, int order, const Real& s) {
  mpfr_set(out.get(), c[order].get(), MPFR_RNDN);
  for (int k = order - 1; k >= 0; --k) {
    mpfr_mul(out.get(), out.get(), s.get(), MPFR_RNDN);
    mpfr_add(out.get(), out.get(), c[k].get(), MPFR_RNDN);
  }
}

void horner_derivative(Real& out, const Real* c, int order, const Real& s) {
  if (order == 0) {
    mpfr_set_zero(out.get(), 1);
    return;
  }
  Real& t = scratch(0);
  mpfr_mul_si(out.get(), c[order].get(), order, MPFR_RNDN);
  for (int k = order - 1; k >= 1; --k) {
    mpfr_mul(out.get(), out.get(), s.get(), MPFR_RNDN);
    mpfr_mul_si(t.get(), c[k].get(), k, MPFR_RNDN);
    mpfr_add(out.get(), out.get(), t.get(), MPFR_RNDN);
  }
}

Real ts_eval(const TruncSeries& a, const Real& s) {
  Real r;
  horner(r, &a[0], a.order(), s);
  return r;
}

}  // namespace l1split
