#pragma once

#include <string>
#include <vector>

#include "l1split/flow.hpp"
#include "l1split/models.hpp"

namespace l1split {

// One-dimensional invariant manifold W(s) = z* + sum_k w_k s^k with linear
// internal dynamics s' = lambda s. lambda < 0 gives a stable manifold.
struct ManifoldExpansion {
  Model model;
  Equilibrium equilibrium;
  Real lambda;
  std::vector<Real> v;
  int order = 0;
  int branch = 1;
  std::vector<std::vector<Real>> w;  // w[k][i], k = 0..order; w[0] = z*
  Real s_hat;                         // 0 until choose_domain succeeds

  std::vector<Real> eval(const Real& s) const;
  std::vector<Real> eval_derivative(const Real& s) const;
  // Parameter-space coefficients of component i, length order + 1.
  std::vector<Real> component(int i) const;
};

ManifoldExpansion expand(const Model& model, const Equilibrium& eq, const Real& lambda, const std::vector<Real>& v,
                         int order, int branch = 1);

// sup norm of F(W(s)) - lambda s W'(s)
Real invariance_residual(const ManifoldExpansion& W, const Real& s);
// Tail estimate |w_{N-1}| s^{N-1} + |w_N| s^N.
Real tail_estimate(const ManifoldExpansion& W, const Real& s);

// Largest s on a 2^(-1/16) grid with tail <= tol and residual <= 10 tol; stores it.
Real choose_domain(ManifoldExpansion& W, const Real& tol);

struct GlobalizeResult {
  State state;
  Real T;
  Real s0;
  long n_steps = 0;
  Real max_drift;  // first-integral drift along the trajectory
};

// Flows W(s_hat) to the section. Stable branches integrate backwards, t_max is taken as |t_max|.
GlobalizeResult globalize(const ManifoldExpansion& W, const SectionSpec& section, const Real& tol,
                          const Real& t_max, const FlowOptions& options = {});

// Header lines (model, lambda, N, s_hat) then one CSV row per order.
std::string manifold_dump(const ManifoldExpansion& W);

}  // namespace l1split
