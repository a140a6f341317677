#include "l1split/manifold.hpp"

#include <cmath>
#include <sstream>

#include "l1split/errors.hpp"
#include "l1split/jet.hpp"
#include "l1split/linalg.hpp"
#include "l1split/series.hpp"

namespace l1split {

std::vector<Real> ManifoldExpansion::component(int i) const {
  std::vector<Real> c(static_cast<size_t>(order + 1));
  for (int k = 0; k <= order; ++k) c[static_cast<size_t>(k)] = w[static_cast<size_t>(k)][static_cast<size_t>(i)];
  return c;
}

std::vector<Real> ManifoldExpansion::eval(const Real& s) const {
  std::vector<Real> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    auto c = component(static_cast<int>(i));
    horner(out[i], c.data(), order, s);
  }
  return out;
}

std::vector<Real> ManifoldExpansion::eval_derivative(const Real& s) const {
  std::vector<Real> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    auto c = component(static_cast<int>(i));
    horner_derivative(out[i], c.data(), order, s);
  }
  return out;
}

ManifoldExpansion expand(const Model& model, const Equilibrium& eq, const Real& lambda, const std::vector<Real>& v,
                         int order, int branch) {
  if (eq.location.chart != model.chart()) throw Error(ErrorKind::ChartMismatch, "equilibrium chart");
  if (order < 1) throw Error(ErrorKind::ConfigInvalid, "manifold order must be positive");
  if (branch != 1 && branch != -1) throw Error(ErrorKind::ConfigInvalid, "branch must be +1 or -1");
  const int n = static_cast<int>(eq.location.z.size());
  JetProgram prog = field_program(model);
  Matrix DF = field_jacobian(prog, eq.location.z);
  std::vector<ComplexPair> spec = eigenvalues(DF);

  ManifoldExpansion W;
  W.model = model;
  W.equilibrium = eq;
  W.lambda = lambda;
  W.v = v;
  W.order = order;
  W.branch = branch;
  W.w.assign(static_cast<size_t>(order + 1), std::vector<Real>(static_cast<size_t>(n)));
  W.s_hat = Real(0);

  JetEvaluator ev(prog, order);
  for (int i = 0; i < n; ++i) {
    ev.var(i)[0] = eq.location.z[static_cast<size_t>(i)];
    ev.var(i)[1] = branch * v[static_cast<size_t>(i)];
    W.w[0][static_cast<size_t>(i)] = ev.var(i)[0];
    W.w[1][static_cast<size_t>(i)] = ev.var(i)[1];
  }
  ev.compute(0);
  ev.compute(1);

  const Real res_tol = pow10(-working_digits10() / 2) * (1 + abs(lambda));
  for (int k = 2; k <= order; ++k) {
    Real kl = k * lambda;
    for (const auto& mu : spec) {
      if (abs(mu.im) <= res_tol && abs(mu.re - kl) <= res_tol * k) {
        throw Error(ErrorKind::ResonantOrder, "k lambda hits the spectrum at k = " + std::to_string(k));
      }
    }
    for (int i = 0; i < n; ++i) ev.var(i)[k] = Real(0);
    ev.compute(k);
    std::vector<Real> rhs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rhs[static_cast<size_t>(i)] = -ev.output(i)[k];
    Matrix M = DF;
    for (int i = 0; i < n; ++i) M(i, i) -= kl;
    std::vector<Real> wk = FullPivLU(M).solve(rhs);
    for (int i = 0; i < n; ++i) {
      ev.var(i)[k] = wk[static_cast<size_t>(i)];
      W.w[static_cast<size_t>(k)][static_cast<size_t>(i)] = wk[static_cast<size_t>(i)];
    }
    ev.compute(k);
  }
  return W;
}

Real invariance_residual(const ManifoldExpansion& W, const Real& s) {
  std::vector<Real> z = W.eval(s);
  std::vector<Real> dz = W.eval_derivative(s);
  State f = eval_field(W.model, {W.model.chart(), z});
  Real r(0);
  Real ls = W.lambda * s;
  for (size_t i = 0; i < z.size(); ++i) r = max(r, abs(f.z[i] - ls * dz[i]));
  return r;
}

Real tail_estimate(const ManifoldExpansion& W, const Real& s) {
  const int N = W.order;
  return norm_inf(W.w[static_cast<size_t>(N - 1)]) * pow(abs(s), N - 1) +
         norm_inf(W.w[static_cast<size_t>(N)]) * pow(abs(s), N);
}

Real choose_domain(ManifoldExpansion& W, const Real& tol) {
  if (W.order < 10) throw Error(ErrorKind::ConfigInvalid, "choose_domain needs order >= 10");
  const int N = W.order;
  const Real floor_s = pow10(-(current_context().digits / 2));
  // start a little above the radius where either tail term alone reaches tol
  double lt = tol.log10_abs();
  double top = INFINITY;
  for (int k : {N - 1, N}) {
    double lc = norm_inf(W.w[static_cast<size_t>(k)]).log10_abs();
    if (std::isfinite(lc)) top = std::min(top, (lt - lc) / k);
  }
  if (!std::isfinite(top)) top = 0;
  Real s = exp(Real(top + 0.5) * log(Real(10)));
  const Real shrink = pow(Real(2), Real(-1) / Real(16));
  while (s >= floor_s) {
    if (tail_estimate(W, s) <= tol && invariance_residual(W, s) <= 10 * tol) {
      W.s_hat = s;
      return s;
    }
    s *= shrink;
  }
  throw Error(ErrorKind::DomainCollapse, "no admissible radius above " + floor_s.str(3) + "; raise the order");
}

GlobalizeResult globalize(const ManifoldExpansion& W, const SectionSpec& section, const Real& tol, const Real& t_max,
                          const FlowOptions& options) {
  if (W.s_hat.sign() <= 0) throw Error(ErrorKind::DomainCollapse, "domain radius not validated");
  State z0{W.model.chart(), W.eval(W.s_hat)};
  Real tm = W.lambda.sign() > 0 ? abs(t_max) : -abs(t_max);
  SectionHit hit = integrate_to_section(W.model, z0, section, tol, tm, options);
  GlobalizeResult r;
  r.state = hit.state;
  r.T = hit.T;
  r.s0 = W.s_hat * exp(W.lambda * hit.T);
  r.n_steps = hit.trajectory.n_steps;
  r.max_drift = hit.trajectory.max_integral_drift;
  return r;
}

std::string manifold_dump(const ManifoldExpansion& W) {
  std::ostringstream os;
  os << "# model " << W.model.describe() << "\n";
  os << "# equilibrium " << label_name(W.equilibrium.label) << "\n";
  os << "# lambda " << W.lambda.str() << "\n";
  os << "# order " << W.order << "\n";
  os << "# branch " << W.branch << "\n";
  os << "# s_hat " << W.s_hat.str() << "\n";
  os << "k";
  for (size_t i = 0; i < W.v.size(); ++i) os << ",w" << i;
  os << "\n";
  for (int k = 0; k <= W.order; ++k) {
    os << k;
    for (const auto& c : W.w[static_cast<size_t>(k)]) os << "," << c.str();
    os << "\n";
  }
  return os.str();
}

}  // namespace l1split
