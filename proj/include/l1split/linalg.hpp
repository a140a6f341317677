#pragma once

#include <vector>

#include "l1split/real.hpp"

namespace l1split {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Real> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r * c)) {}
  Real& operator()(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
  const Real& operator()(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }
  static Matrix identity(int n);
};

Matrix operator*(const Matrix& x, const Matrix& y);
std::vector<Real> operator*(const Matrix& m, const std::vector<Real>& v);

// LU factorization with full (row and column) pivoting.
class FullPivLU {
 public:
  explicit FullPivLU(Matrix m);
  // Throws SingularSolve when a pivot falls below `singular_threshold` relative to the largest one.
  std::vector<Real> solve(const std::vector<Real>& b) const;
  // Unit vector spanning the kernel of a matrix with one-dimensional null space.
  std::vector<Real> null_vector() const;
  int n() const { return n_; }

 private:
  int n_;
  Matrix lu_;
  std::vector<int> row_perm_;
  std::vector<int> col_perm_;
  Real max_pivot_;
};

// Coefficients c_0..c_n of det(mu I - M) = sum c_k mu^k, c_n = 1.
std::vector<Real> characteristic_polynomial(const Matrix& m);

// Real roots of a polynomial (coefficients low to high), ascending, isolated by
// Sturm sequences and polished by Newton to working precision.
std::vector<Real> real_roots(const std::vector<Real>& poly);

Real poly_eval(const std::vector<Real>& poly, const Real& x);

struct EigenPair {
  ComplexPair value;
  std::vector<Real> vector;  // filled for real eigenvalues only
};

// All eigenvalues of a small real matrix: real roots by root isolation, the rest
// from the deflated polynomial (at most one complex pair per remaining quadratic).
std::vector<ComplexPair> eigenvalues(const Matrix& m);

// Unit eigenvector for a real eigenvalue, first significant component positive.
std::vector<Real> eigenvector(const Matrix& m, const Real& lambda);

Real norm_inf(const std::vector<Real>& v);
Real norm2(const std::vector<Real>& v);

}  // namespace l1split
