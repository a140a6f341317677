#pragma once

#include <vector>

#include "l1split/real.hpp"

namespace l1split {

// Roots of y^2/2 - (2/3) eps^2 y^3 - 2 = 0: y0 near 2, y1 ~ 3/(4 eps^2), y2 near -2.
struct CubicRoots {
  Real y0;
  Real y1;
  Real y2;
  bool y1_infinite = false;  // eps = 0
};
CubicRoots cubic_roots(const Real& eps);
// y^2/2 - (2/3) eps^2 y^3 - 2
Real section_cubic(const Real& y, const Real& eps);

// Complex-time singularity of the amended-pendulum separatrix through (pi, y0).
struct SingularityResult {
  Real eps;
  CubicRoots roots;
  Real neg_s_re;   // Re(-s*)
  Real neg_s_im;   // Im(-s*)
  Real delta;      // Re(-s*) - pi/2
  Real route_gap;  // |Y-route - v-route|
};

// Both improper integrals (in Y from y0 to infinity, in v = 2/Y from 0 to 2/y0), continued
// analytically along a path passing both branch points y1 and Yc on the same side: the
// stretch between them contributes -i times its modulus and the tail beyond Yc changes sign.
SingularityResult s_star(const Real& eps, const Real& tol);

struct DeltaFit {
  Real rho;
  Real A;
  std::vector<Real> K;
  std::vector<Real> delta;
  std::vector<Real> normalized;  // delta / (K |ln K|)^2.051
};
// Least squares of ln delta against ln(K |ln K|).
DeltaFit delta_fit(const std::vector<Real>& K_list, const Real& tol);
DeltaFit delta_fit_values(const std::vector<Real>& K_list, const std::vector<Real>& deltas);

}  // namespace l1split
