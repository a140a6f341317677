#pragma once

#include <string>

#include "l1split/models.hpp"

namespace l1split {

// External separatrix has y > 0 and crosses x = pi; internal has y < 0 and crosses x = -pi.
enum class Branch { external, internal };
enum class MelnikovMethod { closed_form, quadrature, amended_pipeline };

const char* branch_name(Branch b);
const char* method_name(MelnikovMethod m);

struct MelnikovResult {
  Real eps;
  Real omega;
  Branch branch = Branch::external;
  MelnikovMethod method = MelnikovMethod::closed_form;
  // Melnikov integral A = int (cos(omega s) - cos(2 x0(s) + omega s)) ds over the line.
  Real value;
  // z(0) = int_{-inf}^0 (cos(2x + omega t) - cos(omega t)) dt = -A/2, split as tail + main.
  Real z0;
  Real tail;
  Real main;
  Real T;
  Real s0;
  int order = 0;
  // Only with MelnikovOptions::full_line: cosine and sine integrals over the whole line.
  Real full_cos;
  Real full_sin;
};

struct MelnikovOptions {
  int order = 0;            // manifold order, 0 picks max(40, 1.2 * working digits)
  Real s_hat_scale{1};      // shrinks the validated radius to move the tail split point
  bool full_line = false;
};

// Closed-form A for the standard pendulum separatrix; omega < 0.
Real closed_A(const Real& omega, Branch branch);

// Melnikov integral along the separatrix of a Pendulum-family model (any a, eps) at a
// free omega: manifold expansion, analytic tail on (-inf, -T], Taylor integration on [-T, 0].
MelnikovResult quadrature_A(const Model& pendulum, const Real& omega, Branch branch, const Real& tol,
                            const MelnikovOptions& options = {});

// Amended pendulum (a = 1) with omega = -1/(3 eps^2), external branch.
MelnikovResult amended_z0(const Real& eps, const Real& tol, const MelnikovOptions& options = {});

// Linear splitting prediction Delta p = -eps^m A / 2; a = 0 uses closed_A, a = 1 the amended integral.
Real melnikov_prediction(const Real& eps, const Real& m, int a, Branch branch, const Real& tol);

std::string melnikov_csv_row(const MelnikovResult& r);

}  // namespace l1split
