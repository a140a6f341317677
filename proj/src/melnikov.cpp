#include "l1split/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "l1split/errors.hpp"
#include "l1split/flow.hpp"
#include "l1split/manifold.hpp"
#include "l1split/series.hpp"

namespace l1split {

const char* branch_name(Branch b) { return b == Branch::external ? "external" : "internal"; }

const char* method_name(MelnikovMethod m) {
  switch (m) {
    case MelnikovMethod::closed_form: return "closed_form";
    case MelnikovMethod::quadrature: return "quadrature";
    case MelnikovMethod::amended_pipeline: return "amended_pipeline";
  }
  return "?";
}

Real closed_A(const Real& omega, Branch branch) {
  if (omega.sign() >= 0) throw Error(ErrorKind::DomainError, "closed_A needs omega < 0");
  int c = branch == Branch::external ? 1 : 3;
  Real p = pi();
  return 16 * p / 3 * pow(omega, 3) * (1 - 2 / (omega * omega)) * exp(c * p * omega / 2) /
         (1 - exp(2 * p * omega));
}

namespace {

// x' = y - 2 a eps^2 y^2, y' = sin x, z' = cos(2x + w t) - cos(w t), t' = 1, and optionally
// s' = sin(2x + w t) - sin(w t).
JetProgram melnikov_program(const Model& m, const Real& omega, bool with_sine) {
  JetProgram p(with_sine ? 5 : 4);
  auto x = p.var(0), y = p.var(1), t = p.var(3);
  Real amend = -2 * m.a * m.eps * m.eps;
  auto dx = amend.is_zero() ? y : p.add(y, p.scale(amend, p.square(y)));
  auto [sx, cx] = p.sin_cos(x);
  (void)cx;
  auto wt = p.scale(omega, t);
  auto [s1, c1] = p.sin_cos(p.add(p.scale(Real(2), x), wt));
  auto [s0, c0] = p.sin_cos(wt);
  auto dz = p.sub(c1, c0);
  auto one = p.constant(Real(1));
  if (with_sine) {
    p.set_outputs({dx, sx, dz, one, p.sub(s1, s0)});
  } else {
    p.set_outputs({dx, sx, dz, one});
  }
  return p;
}

}  // namespace

MelnikovResult quadrature_A(const Model& model, const Real& omega, Branch branch, const Real& tol,
                            const MelnikovOptions& opt) {
  if (model.family != Family::Pendulum) throw Error(ErrorKind::ChartMismatch, "Melnikov quadrature needs a Pendulum model");
  if (omega.is_zero()) throw Error(ErrorKind::DomainError, "omega must be nonzero");
  const int side = branch == Branch::external ? 1 : -1;
  int N = opt.order > 0 ? opt.order : std::max(40, static_cast<int>(std::ceil(1.2 * working_digits10())));

  // Steps 1-4: separatrix from the origin to x = side * pi
  Equilibrium eq = equilibria(model).at(0);
  ManifoldExpansion W = expand(model, eq, eq.lambda, eq.v, N, side);
  choose_domain(W, tol);
  W.s_hat *= opt.s_hat_scale;
  FlowOptions fopt;
  GlobalizeResult g = globalize(W, SectionSpec::toy_xpi(side, side), tol, Real(1000), fopt);
  const Real& T = g.T;

  // Step 5: tail on (-inf, -T]. With s = s0 e^{lambda t}, ydot = lambda s dy/ds and
  // cos x = 1 - y^2/2 + (2a/3) eps^2 y^3 on the zero level, the integrand is
  // A(s) cos(wt) + B(s) sin(wt) with A = -2 ydot^2 and B = ydot (-2 + y^2 - (4a/3) eps^2 y^3).
  const Real& lam = W.lambda;
  std::vector<Real> yc = W.component(1);
  yc[0] = Real(0);
  TruncSeries y(yc);
  TruncSeries yd(N);
  for (int k = 1; k <= N; ++k) yd[k] = k * lam * y[k];
  TruncSeries y2 = y * y;
  TruncSeries inner = y2;
  inner[0] -= 2;
  Real c3 = -4 * model.a * model.eps * model.eps / 3;
  if (!c3.is_zero()) inner = inner + c3 * (y2 * y);
  TruncSeries A = Real(-2) * (yd * yd);
  TruncSeries B = yd * inner;
  Real swT, cwT;
  sin_cos(-omega * T, swT, cwT);  // sin(-wT), cos(-wT)
  Real tail_c(0), tail_s(0);
  Real sk(1);
  for (int k = 1; k <= N; ++k) {
    sk *= W.s_hat;
    Real kl = k * lam;
    Real den = kl * kl + omega * omega;
    Real Ic = sk * (kl * cwT + omega * swT) / den;  // int e^{k lam t} cos(wt) scaled
    Real Is = sk * (kl * swT - omega * cwT) / den;
    tail_c += A[k] * Ic + B[k] * Is;
    tail_s += -B[k] * Ic + A[k] * Is;
  }

  // Step 6: integrate the augmented system over [-T, 0]
  JetProgram prog = melnikov_program(model, omega, opt.full_line);
  std::vector<Real> z0 = W.eval(W.s_hat);
  z0.push_back(tail_c);
  z0.push_back(-T);
  if (opt.full_line) z0.push_back(tail_s);
  FlowOptions zopt;
  std::vector<Real> at0 = integrate_program(prog, z0, -T, Real(0), tol, zopt);
  if (abs(at0[0] - side * pi()) > sqrt(tol)) throw Error(ErrorKind::NoCrossing, "separatrix missed the section at t = 0");

  MelnikovResult r;
  r.eps = model.eps;
  r.omega = omega;
  r.branch = branch;
  r.method = MelnikovMethod::quadrature;
  r.z0 = at0[2];
  r.tail = tail_c;
  r.main = at0[2] - tail_c;
  r.value = -2 * r.z0;
  r.T = T;
  r.s0 = g.s0;
  r.order = N;
  if (opt.full_line) {
    // by reversibility the stable half contributes the same tail; (-inf,-T] and [T, inf)
    std::vector<Real> atT = integrate_program(prog, z0, -T, T, tol, zopt);
    r.full_cos = atT[2] + tail_c;
    r.full_sin = atT[4] - tail_s;
  }
  return r;
}

MelnikovResult amended_z0(const Real& eps, const Real& tol, const MelnikovOptions& opt) {
  if (eps.sign() <= 0 || 4 * sqrt(Real(3)) * eps * eps >= 1)
    throw Error(ErrorKind::DomainError, "amended pendulum needs 0 < 4 sqrt3 eps^2 < 1");
  Model m = Model::pendulum(Real(1), eps);
  Real omega = Real(-1) / (3 * eps * eps);
  MelnikovResult r = quadrature_A(m, omega, Branch::external, tol, opt);
  r.method = MelnikovMethod::amended_pipeline;
  return r;
}

Real melnikov_prediction(const Real& eps, const Real& m, int a, Branch branch, const Real& tol) {
  Real omega = Real(-1) / (3 * eps * eps);
  Real A;
  if (a == 0) {
    A = closed_A(omega, branch);
  } else if (a == 1) {
    if (branch == Branch::external) {
      A = amended_z0(eps, tol).value;
    } else {
      A = quadrature_A(Model::pendulum(Real(1), eps), omega, branch, tol).value;
    }
  } else {
    throw Error(ErrorKind::ConfigInvalid, "Melnikov prediction needs a in {0, 1}");
  }
  return -eps_power(eps, m) * A / 2;
}

std::string melnikov_csv_row(const MelnikovResult& r) {
  std::ostringstream os;
  os << r.eps.str() << "," << r.omega.str() << "," << branch_name(r.branch) << "," << method_name(r.method) << ","
     << r.value.str() << "," << r.z0.str() << "," << r.tail.str() << "," << r.main.str() << "," << r.T.str() << ","
     << r.s0.str();
  return os.str();
}

}  // namespace l1split
