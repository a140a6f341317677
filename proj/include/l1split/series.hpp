#pragma once

#include <utility>
#include <vector>

#include "l1split/real.hpp"

namespace l1split {

// Coefficient-k kernels shared by whole-series operations and the jet engine.
// Each reads coefficients 0..k of its inputs (and 0..k-1 of its own output).
namespace kernel {

// out = sum_{j=lo}^{k-lo} a_j b_{k-j}
void convolve(Real& out, const Real* a, const Real* b, int k, int lo = 0);
// out = sum_{j=0}^k a_j a_{k-j}, using symmetry
void square(Real& out, const Real* a, int k);
void sin_cos(Real* s, Real* c, const Real* a, int k);
void exp(Real* e, const Real* a, int k);
// p = a^alpha with a_0 > 0
void power(Real* p, const Real* a, const Real& alpha, int k);
void recip(Real* r, const Real* a, int k);
void sqrt(Real* q, const Real* a, int k);

}  // namespace kernel

class TruncSeries {
 public:
  explicit TruncSeries(int order);
  explicit TruncSeries(std::vector<Real> coeffs);
  // c0 + s
  static TruncSeries variable(int order, const Real& c0);
  static TruncSeries constant(int order, const Real& c0);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Real& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  Real& operator[](int k) { return c_[static_cast<size_t>(k)]; }
  const std::vector<Real>& coeffs() const { return c_; }

 private:
  std::vector<Real> c_;
};

enum class ArithKind { add, sub, mul, recip, int_pow };
enum class ElemKind { sin_cos, exp, sqrt };

TruncSeries ts_arith(ArithKind kind, const TruncSeries& a, const TruncSeries* b = nullptr, long n = 0);
// For sin_cos the pair is (sin, cos); otherwise second is empty-order (-1) and unused.
std::pair<TruncSeries, TruncSeries> ts_elem(ElemKind kind, const TruncSeries& a);
Real ts_eval(const TruncSeries& a, const Real& s);

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const Real& c, const TruncSeries& a);
TruncSeries recip(const TruncSeries& a);
TruncSeries int_pow(const TruncSeries& a, long n);
std::pair<TruncSeries, TruncSeries> sin_cos(const TruncSeries& a);
TruncSeries exp(const TruncSeries& a);
TruncSeries sqrt(const TruncSeries& a);
TruncSeries derivative(const TruncSeries& a);

// Horner evaluation of sum c_k s^k for a raw coefficient range.
void horner(Real& out, const Real* c, int order, const Real& s);
// Derivative of the same polynomial at s.
void horner_derivative(Real& out, const Real* c, int order, const Real& s);

}  // namespace l1split
