#pragma once

#include <functional>
#include <vector>

#include "l1split/real.hpp"

namespace l1split {

// Gauss-Legendre nodes and weights on [-1, 1] at the working precision, cached per thread.
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};
const GaussRule& gauss_legendre(int n);

struct QuadratureResult {
  Real value;
  Real error_estimate;
  int intervals = 0;
};

// Adaptive bisection driven by the difference between one n-point rule and two
// half-interval rules. Throws IllConditioned if max_depth is exhausted.
QuadratureResult integrate_adaptive(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                                    const Real& tol, int n = 24, int max_depth = 40);

// Ordinary least squares y = slope x + intercept.
struct LinearFit {
  Real slope;
  Real intercept;
  Real rms;
};
LinearFit linreg(const std::vector<Real>& x, const std::vector<Real>& y);

}  // namespace l1split
