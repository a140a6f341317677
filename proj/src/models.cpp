#include "l1split/models.hpp"

#include <sstream>

#include "l1split/errors.hpp"

namespace l1split {

const char* family_name(Family f) {
  switch (f) {
    case Family::CPSynodic: return "CPSynodic";
    case Family::CPLeviCivita: return "CPLeviCivita";
    case Family::ToyCP: return "ToyCP";
    case Family::Pendulum: return "Pendulum";
  }
  return "?";
}

const char* chart_name(Chart c) {
  switch (c) {
    case Chart::synodic: return "synodic";
    case Chart::levi_civita: return "levi_civita";
    case Chart::delaunay: return "delaunay";
    case Chart::resonant_angle_action: return "resonant_angle_action";
    case Chart::resonant_qp: return "resonant_qp";
    case Chart::pendulum2d: return "pendulum2d";
  }
  return "?";
}

const char* label_name(EquilibriumLabel l) {
  switch (l) {
    case EquilibriumLabel::L1: return "L1";
    case EquilibriumLabel::L2: return "L2";
    case EquilibriumLabel::Lminus: return "Lminus";
    case EquilibriumLabel::Lplus: return "Lplus";
    case EquilibriumLabel::pendulum_origin: return "pendulum_origin";
  }
  return "?";
}

Real eps_power(const Real& eps, const Real& m) { return exp(m * log(eps)); }

namespace {

Real eps_from_K(const Real& K) { return sqrt(sqrt(K / 3)); }
Real omega_from_eps(const Real& eps) { return Real(-1) / (3 * eps * eps); }

void require_chart(const Model& model, const State& z) {
  if (z.chart != model.chart()) {
    throw Error(ErrorKind::ChartMismatch, std::string("model ") + family_name(model.family) +
                                              " expects chart " + chart_name(model.chart()) +
                                              ", got " + chart_name(z.chart));
  }
  if (static_cast<int>(z.z.size()) != model.dim) throw Error(ErrorKind::ChartMismatch, "state dimension mismatch");
}

Real field_threshold() { return pow10(-static_cast<long>(working_digits10()) / 2); }

}  // namespace

Model Model::cp_synodic(const Real& K) {
  Model m;
  m.family = Family::CPSynodic;
  m.K = K;
  if (K.sign() > 0) {
    m.eps = eps_from_K(K);
    m.omega = omega_from_eps(m.eps);
  }
  m.dim = 4;
  return m;
}

Model Model::cp_levi_civita(const Real& K, const Real& C) {
  Model m = cp_synodic(K);
  m.family = Family::CPLeviCivita;
  m.C = C;
  return m;
}

Model Model::toy(const Real& K, const Real& a, const Real& mexp) {
  if (K.sign() <= 0) throw Error(ErrorKind::DomainError, "toy model needs K > 0");
  Model m = toy_from_eps(eps_from_K(K), a, mexp);
  m.K = K;
  return m;
}

Model Model::toy_from_eps(const Real& eps, const Real& a, const Real& mexp) {
  if (eps.sign() <= 0) throw Error(ErrorKind::DomainError, "toy model needs eps > 0");
  if (mexp < 1) throw Error(ErrorKind::DomainError, "toy model needs m >= 1");
  Model m;
  m.family = Family::ToyCP;
  m.eps = eps;
  m.K = 3 * eps * eps * eps * eps;
  m.omega = omega_from_eps(eps);
  m.a = a;
  m.m = mexp;
  m.dim = 4;
  return m;
}

Model Model::pendulum(const Real& a, const Real& eps) {
  Model m;
  m.family = Family::Pendulum;
  m.a = a;
  m.eps = eps;
  m.K = 3 * eps * eps * eps * eps;
  if (eps.sign() > 0) m.omega = omega_from_eps(eps);
  m.dim = 2;
  return m;
}

Chart Model::chart() const {
  switch (family) {
    case Family::CPSynodic: return Chart::synodic;
    case Family::CPLeviCivita: return Chart::levi_civita;
    case Family::ToyCP: return Chart::resonant_qp;
    case Family::Pendulum: return Chart::pendulum2d;
  }
  return Chart::synodic;
}

std::string Model::describe() const {
  std::ostringstream os;
  os << family_name(family) << "(K=" << K.str(17) << ", eps=" << eps.str(17);
  if (family == Family::ToyCP || family == Family::Pendulum) os << ", a=" << a.str(6);
  if (family == Family::ToyCP) os << ", m=" << m.str(6);
  if (family == Family::CPLeviCivita) os << ", C=" << C.str(17);
  os << ")";
  return os.str();
}

JetProgram field_program(const Model& model) {
  switch (model.family) {
    case Family::CPSynodic: {
      // x' = px + y, y' = py - x, px' = py - x/r^3 - K, py' = -px - y/r^3
      JetProgram p(4);
      auto x = p.var(0), y = p.var(1), px = p.var(2), py = p.var(3);
      auto r2 = p.add(p.square(x), p.square(y));
      auto w = p.power(r2, Real(-3) / 2);
      auto dx = p.add(px, y);
      auto dy = p.sub(py, x);
      auto dpx = p.add_const(p.sub(py, p.mul(x, w)), -model.K);
      auto dpy = p.sub(p.neg(px), p.mul(y, w));
      p.set_outputs({dx, dy, dpx, dpy});
      return p;
    }
    case Family::CPLeviCivita: {
      // u'' = 8 r v' - 4 C u - 16 K u^3 + 12 r^2 u
      // v'' = -8 r u' - 4 C v + 16 K v^3 + 12 r^2 v,  r = u^2 + v^2
      JetProgram p(4);
      auto u = p.var(0), v = p.var(1), du = p.var(2), dv = p.var(3);
      auto u2 = p.square(u), v2 = p.square(v);
      auto r = p.add(u2, v2);
      auto r2 = p.square(r);
      // common radial factor 12 r^2 - 4 C
      auto radial = p.add_const(p.scale(Real(12), r2), -4 * model.C);
      auto ddu = p.add(p.scale(Real(8), p.mul(r, dv)),
                       p.sub(p.mul(radial, u), p.scale(16 * model.K, p.mul(u2, u))));
      auto ddv = p.add(p.scale(Real(-8), p.mul(r, du)),
                       p.add(p.mul(radial, v), p.scale(16 * model.K, p.mul(v2, v))));
      p.set_outputs({du, dv, ddu, ddv});
      return p;
    }
    case Family::ToyCP: {
      // From H = w(q^2+p^2)/2 + y^2/2 - (2a/3) e^2 y^3 + cos x - 1 + e^m (3q/2 - q cos2x/2 - p sin2x/2):
      // x' =  H_y = y - 2 a e^2 y^2
      // y' = -H_x = sin x - e^m (q sin 2x - p cos 2x)
      // q' =  H_p = w p - (e^m/2) sin 2x
      // p' = -H_q = -w q - e^m (3/2 - cos(2x)/2)
      JetProgram p(4);
      auto x = p.var(0), y = p.var(1), q = p.var(2), pp = p.var(3);
      Real em = eps_power(model.eps, model.m);
      Real amend = -2 * model.a * model.eps * model.eps;
      auto dx = amend.is_zero() ? y : p.add(y, p.scale(amend, p.square(y)));
      auto [sx, cx] = p.sin_cos(x);
      (void)cx;
      auto [s2, c2] = p.sin_cos(p.scale(Real(2), x));
      auto dy = p.sub(sx, p.scale(em, p.sub(p.mul(q, s2), p.mul(pp, c2))));
      auto dq = p.sub(p.scale(model.omega, pp), p.scale(em / 2, s2));
      auto dp = p.sub(p.scale(-model.omega, q), p.scale(em, p.add_const(p.scale(Real(-1) / 2, c2), Real(3) / 2)));
      p.set_outputs({dx, dy, dq, dp});
      return p;
    }
    case Family::Pendulum: {
      JetProgram p(2);
      auto x = p.var(0), y = p.var(1);
      Real amend = -2 * model.a * model.eps * model.eps;
      auto dx = amend.is_zero() ? y : p.add(y, p.scale(amend, p.square(y)));
      auto [sx, cx] = p.sin_cos(x);
      (void)cx;
      p.set_outputs({dx, sx});
      return p;
    }
  }
  throw Error(ErrorKind::ChartMismatch, "unknown family");
}

State eval_field(const Model& model, const State& z) {
  require_chart(model, z);
  if (model.family == Family::CPSynodic && z.z[0].is_zero() && z.z[1].is_zero()) {
    throw Error(ErrorKind::CollisionSingularity, "synodic field at r = 0");
  }
  return {z.chart, field_value(field_program(model), z.z)};
}

Real first_integral(const Model& model, const State& s) {
  require_chart(model, s);
  const auto& z = s.z;
  switch (model.family) {
    case Family::CPSynodic: {
      const Real &x = z[0], &y = z[1], &px = z[2], &py = z[3];
      Real r = hypot(x, y);
      if (r.is_zero()) throw Error(ErrorKind::CollisionSingularity, "H at r = 0");
      return (px * px + py * py) / 2 - 1 / r - (x * py - y * px) + model.K * x;
    }
    case Family::CPLeviCivita: {
      // U^2 + V^2 - 8 r (r^2/2 + 1/r - K(u^2 - v^2) - C/2), expanded to stay regular at r = 0
      const Real &u = z[0], &v = z[1], &du = z[2], &dv = z[3];
      Real u2 = u * u, v2 = v * v, r = u2 + v2;
      return du * du + dv * dv - 4 * r * r * r - 8 + 8 * model.K * r * (u2 - v2) + 4 * model.C * r;
    }
    case Family::ToyCP: {
      const Real &x = z[0], &y = z[1], &q = z[2], &p = z[3];
      Real em = eps_power(model.eps, model.m);
      Real s2, c2;
      sin_cos(2 * x, s2, c2);
      return model.omega * (q * q + p * p) / 2 + y * y / 2 + cos(x) - 1 -
             2 * model.a * model.eps * model.eps * y * y * y / 3 +
             em * (3 * q / 2 - q * c2 / 2 - p * s2 / 2);
    }
    case Family::Pendulum: {
      const Real &x = z[0], &y = z[1];
      return y * y / 2 - 2 * model.a * model.eps * model.eps * y * y * y / 3 + cos(x) - 1;
    }
  }
  return Real(0);
}

Real jacobi_constant(const Model& model, const State& s) {
  if (model.family != Family::CPSynodic) throw Error(ErrorKind::ChartMismatch, "Jacobi constant needs the synodic model");
  require_chart(model, s);
  const auto& z = s.z;
  Real r = hypot(z[0], z[1]);
  if (r.is_zero()) throw Error(ErrorKind::CollisionSingularity, "Jacobi constant at r = 0");
  Real xd = z[2] + z[1], yd = z[3] - z[0];
  Real Omega = r * r / 2 + 1 / r - model.K * z[0];
  return 2 * Omega - (xd * xd + yd * yd);
}

State reversibility_map(const Model& model, const State& s) {
  require_chart(model, s);
  State out = s;
  auto& z = out.z;
  switch (model.family) {
    case Family::CPSynodic:  // (x, y, px, py) -> (x, -y, -px, py)
      z[1] = -z[1];
      z[2] = -z[2];
      break;
    case Family::CPLeviCivita:  // (u, v, u', v') -> (u, -v, -u', v')
      z[1] = -z[1];
      z[2] = -z[2];
      break;
    case Family::ToyCP:  // (x, y, q, p) -> (2 pi - x, y, q, -p)
      z[0] = 2 * pi() - z[0];
      z[3] = -z[3];
      break;
    case Family::Pendulum:  // (x, y) -> (-x, y)
      z[0] = -z[0];
      break;
  }
  return out;
}

namespace {

// Root of f(t) = t^3 - K t^2 + s in [lo, hi] by bisection then Newton.
Real cubic_root(const Real& K, int s, Real lo, Real hi) {
  auto f = [&](const Real& t) { return t * t * t - K * t * t + s; };
  int slo = f(lo).sign();
  if (slo == f(hi).sign()) throw Error(ErrorKind::DomainError, "cubic bracket without sign change");
  for (int it = 0; it < 60; ++it) {
    Real mid = ldexp(lo + hi, -1);
    if (f(mid).sign() == slo) lo = mid;
    else hi = mid;
  }
  Real t = ldexp(lo + hi, -1);
  Real tiny = ldexp(Real(1), -static_cast<long>(working_bits()) + 4);
  for (int it = 0; it < 40; ++it) {
    Real dt = f(t) / (3 * t * t - 2 * K * t);
    t -= dt;
    if (abs(dt) <= tiny) break;
  }
  return t;
}

Linearization linearize_at(const Model& model, const std::vector<Real>& z, bool require_unstable) {
  JetProgram prog = field_program(model);
  Linearization lin;
  lin.jacobian = field_jacobian(prog, z);
  lin.eigenvalues = eigenvalues(lin.jacobian);
  Real thr = field_threshold();
  lin.lambda = 0;
  for (const auto& e : lin.eigenvalues)
    if (abs(e.im) <= thr && e.re > lin.lambda) lin.lambda = e.re;
  if (lin.lambda <= thr) {
    if (require_unstable) throw Error(ErrorKind::NoRealUnstableDirection, "no real positive eigenvalue");
    return lin;
  }
  lin.v_unstable = eigenvector(lin.jacobian, lin.lambda);
  // stable partner: the real eigenvalue closest to -lambda
  const ComplexPair* best = nullptr;
  for (const auto& e : lin.eigenvalues)
    if (abs(e.im) <= thr && (!best || abs(e.re + lin.lambda) < abs(best->re + lin.lambda))) best = &e;
  if (best && best->re < 0) lin.v_stable = eigenvector(lin.jacobian, best->re);
  return lin;
}

Equilibrium make_equilibrium(const Model& model, std::vector<Real> z, EquilibriumLabel label) {
  Equilibrium eq;
  eq.location = {model.chart(), std::move(z)};
  eq.label = label;
  if (model.family == Family::CPLeviCivita) eq.energy = -model.C / 2;
  else eq.energy = first_integral(model, eq.location);
  Linearization lin = linearize_at(model, eq.location.z, false);
  eq.eigenvalues = lin.eigenvalues;
  eq.lambda = lin.lambda;
  eq.v = lin.v_unstable;
  return eq;
}

std::vector<Equilibrium> cp_synodic_equilibria(const Real& K) {
  if (K.sign() <= 0) throw Error(ErrorKind::DegenerateCircle, "K = 0 gives a whole circle r = 1 of equilibria");
  Model syn = Model::cp_synodic(K);
  Real scale = 1 + K;
  // x > 0: x^3 - K x^2 - 1 = 0;  x < 0: x^3 - K x^2 + 1 = 0
  Real xpos = cubic_root(K, -1, Real(1) / 2 * scale, 2 * scale);
  Real xneg = cubic_root(K, +1, -2 * scale, Real(-1) / 2 * scale);
  std::vector<Equilibrium> eqs;
  for (const Real& x : {xneg, xpos}) eqs.push_back(make_equilibrium(syn, {x, Real(0), Real(0), x}, EquilibriumLabel::L2));
  // L1 is the center-saddle; if both qualify, the lower energy one.
  auto saddle = [&](const Equilibrium& e) { return e.lambda.sign() > 0; };
  int l1 = -1;
  for (int i = 0; i < 2; ++i)
    if (saddle(eqs[static_cast<size_t>(i)]) &&
        (l1 < 0 || eqs[static_cast<size_t>(i)].energy < eqs[static_cast<size_t>(l1)].energy))
      l1 = i;
  if (l1 < 0) throw Error(ErrorKind::NoRealUnstableDirection, "no center-saddle equilibrium found");
  eqs[static_cast<size_t>(l1)].label = EquilibriumLabel::L1;
  if (l1 == 1) std::swap(eqs[0], eqs[1]);
  return eqs;
}

}  // namespace

std::vector<Equilibrium> equilibria(const Model& model) {
  switch (model.family) {
    case Family::CPSynodic:
      return cp_synodic_equilibria(model.K);
    case Family::CPLeviCivita: {
      // Only points whose Jacobi level matches the model's C are equilibria of the regularized field.
      std::vector<Equilibrium> out;
      for (const auto& e : cp_synodic_equilibria(model.K)) {
        const Real& x = e.location.z[0];
        std::vector<Real> z = x > 0 ? std::vector<Real>{sqrt(x), Real(0), Real(0), Real(0)}
                                    : std::vector<Real>{Real(0), sqrt(-x), Real(0), Real(0)};
        if (norm_inf(field_value(field_program(model), z)) > field_threshold()) continue;
        out.push_back(make_equilibrium(model, std::move(z), e.label));
      }
      return out;
    }
    case Family::ToyCP: {
      Real q = 3 * eps_power(model.eps, model.m) * model.eps * model.eps;
      std::vector<Equilibrium> out;
      out.push_back(make_equilibrium(model, {Real(0), Real(0), q, Real(0)}, EquilibriumLabel::Lminus));
      out.push_back(make_equilibrium(model, {2 * pi(), Real(0), q, Real(0)}, EquilibriumLabel::Lplus));
      return out;
    }
    case Family::Pendulum:
      return {make_equilibrium(model, {Real(0), Real(0)}, EquilibriumLabel::pendulum_origin)};
  }
  return {};
}

Linearization linearize(const Model& model, const Equilibrium& eq) {
  require_chart(model, eq.location);
  Real fnorm = norm_inf(field_value(field_program(model), eq.location.z));
  if (fnorm > field_threshold()) throw Error(ErrorKind::NotAnEquilibrium, "field norm " + fnorm.str(6));
  return linearize_at(model, eq.location.z, true);
}

Equilibrium cp_l1(const Model& model) {
  if (model.family == Family::CPSynodic) return cp_synodic_equilibria(model.K)[0];
  if (model.family == Family::CPLeviCivita) {
    for (auto& e : equilibria(model))
      if (e.label == EquilibriumLabel::L1) return e;
    throw Error(ErrorKind::NotAnEquilibrium, "model C does not match the L1 level");
  }
  throw Error(ErrorKind::ChartMismatch, "L1 is defined for CP families only");
}

HillResult hill_membership(const Model& model, const Real& x, const Real& y, const Real& C) {
  if (model.family != Family::CPSynodic && model.family != Family::CPLeviCivita) {
    throw Error(ErrorKind::ChartMismatch, "Hill regions are defined for CP families");
  }
  Real r = hypot(x, y);
  if (r.is_zero()) throw Error(ErrorKind::CollisionSingularity, "Hill region at r = 0");
  HillResult h;
  h.Omega = r * r / 2 + 1 / r - model.K * x;
  h.allowed = 2 * h.Omega >= C;
  return h;
}

}  // namespace l1split
