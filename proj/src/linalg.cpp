#include "l1split/linalg.hpp"

#include <cmath>
#include <functional>

#include "l1split/errors.hpp"

namespace l1split {

namespace {

Real relative_floor(int fraction_num, int fraction_den) {
  return pow10(-static_cast<long>(working_digits10()) * fraction_num / fraction_den);
}

}  // namespace

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < y.cols; ++j) {
      Real s = 0;
      for (int k = 0; k < x.cols; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

std::vector<Real> operator*(const Matrix& m, const std::vector<Real>& v) {
  std::vector<Real> r(static_cast<size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i) {
    Real s = 0;
    for (int k = 0; k < m.cols; ++k) s += m(i, k) * v[static_cast<size_t>(k)];
    r[static_cast<size_t>(i)] = s;
  }
  return r;
}

FullPivLU::FullPivLU(Matrix m) : n_(m.rows), lu_(std::move(m)), row_perm_(static_cast<size_t>(n_)), col_perm_(static_cast<size_t>(n_)) {
  for (int i = 0; i < n_; ++i) row_perm_[static_cast<size_t>(i)] = col_perm_[static_cast<size_t>(i)] = i;
  max_pivot_ = 0;
  for (int k = 0; k < n_; ++k) {
    int pi = k, pj = k;
    Real best = -1;
    for (int i = k; i < n_; ++i)
      for (int j = k; j < n_; ++j) {
        Real v = abs(lu_(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi != k) {
      for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(pi, j));
      std::swap(row_perm_[static_cast<size_t>(k)], row_perm_[static_cast<size_t>(pi)]);
    }
    if (pj != k) {
      for (int i = 0; i < n_; ++i) std::swap(lu_(i, k), lu_(i, pj));
      std::swap(col_perm_[static_cast<size_t>(k)], col_perm_[static_cast<size_t>(pj)]);
    }
    if (k == 0) max_pivot_ = best;
    if (lu_(k, k).is_zero()) continue;
    for (int i = k + 1; i < n_; ++i) {
      lu_(i, k) /= lu_(k, k);
      for (int j = k + 1; j < n_; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
    }
  }
}

std::vector<Real> FullPivLU::solve(const std::vector<Real>& b) const {
  Real threshold = max_pivot_ * relative_floor(3, 4);
  std::vector<Real> y(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Real s = b[static_cast<size_t>(row_perm_[static_cast<size_t>(i)])];
    for (int j = 0; j < i; ++j) s -= lu_(i, j) * y[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    if (abs(lu_(i, i)) <= threshold) throw Error(ErrorKind::SingularSolve, "pivot below threshold");
    Real s = y[static_cast<size_t>(i)];
    for (int j = i + 1; j < n_; ++j) s -= lu_(i, j) * y[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s / lu_(i, i);
  }
  std::vector<Real> x(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<size_t>(col_perm_[static_cast<size_t>(i)])] = y[static_cast<size_t>(i)];
  return x;
}

std::vector<Real> FullPivLU::null_vector() const {
  // The last pivot is the (numerically) vanishing one; fix that unknown to 1.
  std::vector<Real> y(static_cast<size_t>(n_));
  y[static_cast<size_t>(n_ - 1)] = 1;
  for (int i = n_ - 2; i >= 0; --i) {
    Real s = 0;
    for (int j = i + 1; j < n_; ++j) s -= lu_(i, j) * y[static_cast<size_t>(j)];
    if (lu_(i, i).is_zero()) throw Error(ErrorKind::SingularSolve, "null space has dimension > 1");
    y[static_cast<size_t>(i)] = s / lu_(i, i);
  }
  std::vector<Real> x(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<size_t>(col_perm_[static_cast<size_t>(i)])] = y[static_cast<size_t>(i)];
  return x;
}

std::vector<Real> characteristic_polynomial(const Matrix& a) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const int n = a.rows;
  std::vector<Real> c(static_cast<size_t>(n + 1));
  c[static_cast<size_t>(n)] = 1;
  Matrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    Matrix next = a * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<size_t>(n - k + 1)];
    Matrix am = a * next;
    Real tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<size_t>(n - k)] = -tr / k;
    mk = std::move(next);
  }
  return c;
}

Real poly_eval(const std::vector<Real>& p, const Real& x) {
  Real r = p.back();
  for (int k = static_cast<int>(p.size()) - 2; k >= 0; --k) r = r * x + p[static_cast<size_t>(k)];
  return r;
}

namespace {

using Poly = std::vector<Real>;

void trim(Poly& p, const Real& scale) {
  Real eps = scale * relative_floor(4, 5);
  while (p.size() > 1 && abs(p.back()) <= eps) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  if (d.empty()) d.push_back(Real(0));
  return d;
}

// Remainder of a / b.
Poly remainder(Poly a, const Poly& b) {
  while (a.size() >= b.size() && a.size() > 0) {
    Real q = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
  }
  if (a.empty()) a.push_back(Real(0));
  return a;
}

Real max_abs(const Poly& p) {
  Real m = 0;
  for (const auto& c : p) m = max(m, abs(c));
  return m;
}

int sign_changes(const std::vector<Poly>& seq, const Real& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = poly_eval(p, x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Real refine_root(const Poly& p, Real lo, Real hi) {
  Poly dp = derivative(p);
  int slo = poly_eval(p, lo).sign();
  if (slo == 0) return lo;
  if (poly_eval(p, hi).sign() == 0) return hi;
  for (int it = 0; it < 80; ++it) {
    Real mid = ldexp(lo + hi, -1);
    int sm = poly_eval(p, mid).sign();
    if (sm == 0) return mid;
    if (sm == slo) lo = mid;
    else hi = mid;
  }
  Real x = ldexp(lo + hi, -1);
  Real tiny = ldexp(abs(x) + abs(hi - lo), -static_cast<long>(working_bits()) + 4);
  for (int it = 0; it < 60; ++it) {
    Real d = poly_eval(dp, x);
    if (d.is_zero()) break;
    Real dx = poly_eval(p, x) / d;
    x -= dx;
    if (abs(dx) <= tiny) break;
  }
  return x;
}

}  // namespace

std::vector<Real> real_roots(const std::vector<Real>& poly_in) {
  Poly p = poly_in;
  trim(p, max_abs(p));
  if (p.size() <= 1) return {};
  std::vector<Poly> seq{p, derivative(p)};
  while (seq.back().size() > 1) {
    Poly r = remainder(seq[seq.size() - 2], seq.back());
    trim(r, max_abs(seq[seq.size() - 2]));
    for (auto& c : r) c = -c;
    if (r.size() == 1 && r[0].is_zero()) break;
    seq.push_back(std::move(r));
  }
  Real bound = 0;
  for (size_t k = 0; k + 1 < p.size(); ++k) bound = max(bound, abs(p[k] / p.back()));
  bound += 1;

  std::vector<Real> roots;
  std::function<void(const Real&, const Real&, int, int)> isolate = [&](const Real& a, const Real& b, int va, int depth) {
    int vb = sign_changes(seq, b);
    int count = va - vb;
    if (count <= 0) return;
    if (count == 1) {
      roots.push_back(refine_root(p, a, b));
      return;
    }
    if (depth > static_cast<int>(working_bits())) {
      for (int i = 0; i < count; ++i) roots.push_back(ldexp(a + b, -1));
      return;
    }
    Real mid = ldexp(a + b, -1);
    isolate(a, mid, va, depth + 1);
    isolate(mid, b, sign_changes(seq, mid), depth + 1);
  };
  Real lo = -bound;
  isolate(lo, bound, sign_changes(seq, lo), 0);
  return roots;
}

std::vector<ComplexPair> eigenvalues(const Matrix& m) {
  Poly p = characteristic_polynomial(m);
  std::vector<Real> reals = real_roots(p);
  std::vector<ComplexPair> out;
  Poly rest = p;
  for (const auto& r : reals) {
    out.push_back({r, Real(0)});
    // synthetic division by (mu - r)
    Poly q(rest.size() - 1);
    Real carry = 0;
    for (int k = static_cast<int>(rest.size()) - 1; k >= 1; --k) {
      carry = rest[static_cast<size_t>(k)] + carry * r;
      q[static_cast<size_t>(k - 1)] = carry;
    }
    rest = std::move(q);
  }
  if (rest.size() == 3) {
    Real b = rest[1] / rest[2], c = rest[0] / rest[2];
    Real re = -b / 2;
    Real disc = c - re * re;
    if (disc < 0) disc = 0;
    Real im = sqrt(disc);
    out.push_back({re, im});
    out.push_back({re, -im});
  } else if (rest.size() == 5) {
    // Even quartic in mu (Hamiltonian spectra): solve in mu^2.
    Real b = rest[2] / rest[4], c = rest[0] / rest[4];
    Real disc = b * b - 4 * c;
    if (disc < 0) {
      // mu^2 = alpha +- i beta: a complex quadruplet
      Real alpha = -b / 2, beta = sqrt(-disc) / 2;
      Real modulus = hypot(alpha, beta);
      Real re = sqrt((modulus + alpha) / 2), im = sqrt((modulus - alpha) / 2);
      out.push_back({re, im});
      out.push_back({re, -im});
      out.push_back({-re, im});
      out.push_back({-re, -im});
      return out;
    }
    for (int s : {-1, 1}) {
      Real mu2 = (-b + s * sqrt(disc)) / 2;
      Real im = sqrt(abs(mu2));
      out.push_back({Real(0), im});
      out.push_back({Real(0), -im});
    }
  } else if (rest.size() > 1) {
    throw Error(ErrorKind::DomainError, "unsupported residual spectrum degree");
  }
  return out;
}

std::vector<Real> eigenvector(const Matrix& m, const Real& lambda) {
  Matrix shifted = m;
  for (int i = 0; i < m.rows; ++i) shifted(i, i) -= lambda;
  FullPivLU lu(std::move(shifted));
  std::vector<Real> v = lu.null_vector();
  Real nrm = norm2(v);
  for (auto& c : v) c /= nrm;
  Real floor = relative_floor(1, 2);
  for (auto& c : v) {
    if (abs(c) > floor) {
      if (c < 0)
        for (auto& d : v) d = -d;
      break;
    }
  }
  return v;
}

Real norm_inf(const std::vector<Real>& v) {
  Real m = 0;
  for (const auto& c : v) m = max(m, abs(c));
  return m;
}

Real norm2(const std::vector<Real>& v) {
  Real s = 0;
  for (const auto& c : v) s += c * c;
  return sqrt(s);
}

}  // namespace l1split
