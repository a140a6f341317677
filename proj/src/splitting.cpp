#include "l1split/splitting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "l1split/errors.hpp"

namespace l1split {

const char* sample_kind_name(SampleKind k) {
  switch (k) {
    case SampleKind::dx_dot: return "dx_dot";
    case SampleKind::dp_resonant: return "dp_resonant";
    case SampleKind::dp_toy: return "dp_toy";
    case SampleKind::z0_melnikov: return "z0_melnikov";
  }
  return "?";
}

SampleKind parse_sample_kind(const std::string& name) {
  for (SampleKind k : {SampleKind::dx_dot, SampleKind::dp_resonant, SampleKind::dp_toy, SampleKind::z0_melnikov})
    if (name == sample_kind_name(k)) return k;
  throw Error(ErrorKind::ConfigInvalid, "unknown sample kind '" + name + "'");
}

PrecisionPolicy precision_policy(const Real& K, const PolicyOptions& opt) {
  if (K.sign() <= 0) throw Error(ErrorKind::DomainError, "K must be positive");
  double Kd = K.to_double();
  if (Kd < opt.desk_floor && !opt.override_floor)
    throw Error(ErrorKind::BelowDeskFloor, "K = " + K.str(6) + " is below the desk floor; pass the override flag");
  double w = 1.0 / std::sqrt(3.0 * Kd);
  // the small offset keeps exact products such as 0.69 * 100/3 from rounding up
  int digits = static_cast<int>(std::ceil(0.69 * w - 1e-9)) + 60;
  if (opt.digits_override > 0) digits = opt.digits_override;
  digits += opt.extra_digits;
  PrecisionPolicy p;
  p.ctx.digits = digits;
  p.ctx.guard = opt.guard;
  p.ctx.validate();
  p.order = std::min(opt.order_cap, std::max(100, static_cast<int>(std::ceil(1.2 * digits))));
  return p;
}

PrecisionPolicy precision_policy(const std::string& K_text, const PolicyOptions& opt) {
  PrecisionScope scope(PrecisionContext{30, 10});
  return precision_policy(Real(K_text), opt);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SplitSample base_sample(SampleKind kind, const std::string& K_text, const Model& model, const PrecisionPolicy& pol) {
  SplitSample s;
  s.kind = kind;
  s.K_text = K_text;
  s.K = model.K;
  s.eps = model.eps;
  s.omega = model.omega;
  s.digits = pol.ctx.digits;
  s.order = pol.order;
  s.x_offset = Real(0);
  return s;
}

int sign_of(const Real& x) { return x.sign() >= 0 ? 1 : -1; }

Equilibrium find_equilibrium(const Model& model, EquilibriumLabel label) {
  for (auto& e : equilibria(model))
    if (e.label == label) return e;
  throw Error(ErrorKind::NotAnEquilibrium, std::string("missing equilibrium ") + label_name(label));
}

// Horizon for the globalization: far beyond the separatrix transit time 1/lambda * O(10).
Real horizon(const Real& lambda) { return 400 / abs(lambda); }

}  // namespace

ManifoldExpansion cp_external_manifold(const Real& K, int order, const Real& tol) {
  Model syn = Model::cp_synodic(K);
  Real C = jacobi_constant(syn, cp_l1(syn).location);
  Model lc = Model::cp_levi_civita(K, C);
  Equilibrium l1 = cp_l1(lc);
  Linearization lin = linearize(lc, l1);
  const Real& vL = l1.location.z[1];

  // y = 2uv grows with sign(du * vL); r = u^2 + v^2 grows with sign(dv * vL)
  const std::vector<Real>& v = lin.v_unstable;
  int sigma = sign_of(v[0]) * sign_of(vL);
  if (sigma * sign_of(v[1]) * sign_of(vL) < 0)
    throw Error(ErrorKind::BranchMisidentified, "no unstable direction with both y > 0 and r increasing");
  ManifoldExpansion W = expand(lc, l1, lin.lambda, v, order, sigma);
  choose_domain(W, tol);
  return W;
}

ManifoldExpansion toy_unstable_manifold(const Real& K, int a, int m, Branch branch, int order, const Real& tol) {
  if (a != 0 && a != 1) throw Error(ErrorKind::ConfigInvalid, "toy model needs a in {0, 1}");
  if (m < 1) throw Error(ErrorKind::ConfigInvalid, "toy model needs m >= 1");
  Model model = Model::toy(K, Real(a), Real(m));
  Equilibrium Lm = find_equilibrium(model, EquilibriumLabel::Lminus);
  Linearization lin = linearize(model, Lm);
  const int side = branch == Branch::external ? 1 : -1;
  int sigma = side * sign_of(lin.v_unstable[0]);
  ManifoldExpansion W = expand(model, Lm, lin.lambda, lin.v_unstable, order, sigma);
  choose_domain(W, tol);
  return W;
}

CPSplit cp_split(const std::string& K_text, const SplitOptions& opt) {
  auto t0 = Clock::now();
  PrecisionPolicy pol = precision_policy(K_text, opt.policy);
  PrecisionScope scope(pol.ctx);
  Real K(K_text);
  Real tol = pow10(-pol.ctx.digits);
  if (opt.branch != Branch::external)
    throw Error(ErrorKind::ConfigInvalid, "CP splitting is computed on the external branch only");

  Model syn = Model::cp_synodic(K);
  ManifoldExpansion W = cp_external_manifold(K, pol.order, tol);
  const Model& lc = W.model;
  const Equilibrium& l1 = W.equilibrium;
  GlobalizeResult g = globalize(W, SectionSpec::lc_v0(0), tol, horizon(W.lambda));

  CPSplit out;
  out.crossing_lc = g.state;
  out.crossing_synodic = lc_to_synodic(g.state);
  const auto& zs = out.crossing_synodic.z;
  if (zs[0].sign() <= 0)
    throw Error(ErrorKind::BranchMisidentified, "first crossing has synodic x <= 0");
  out.max_drift = g.max_drift;

  SplitSample s = base_sample(SampleKind::dx_dot, K_text, syn, pol);
  s.value = 2 * (zs[2] + zs[1]);
  s.section = SectionSpec::lc_v0(0).name();
  s.T = g.T;
  s.s_hat = W.s_hat;

  out.crossing_resonant = synodic_to_resonant(out.crossing_synodic, syn.eps);
  SplitSample r = s;
  r.kind = SampleKind::dp_resonant;
  r.value = 2 * out.crossing_resonant.z[3];
  r.x_offset = out.crossing_resonant.z[0] - pi();

  if (opt.verify_stable) {
    // mirrored branch: y < 0 initially, r increasing, integrated backwards
    Linearization lin = linearize(lc, l1);
    const Real& vL = l1.location.z[1];
    const std::vector<Real>& vs = lin.v_stable;
    int ss = -sign_of(vs[0]) * sign_of(vL);
    if (ss * sign_of(vs[1]) * sign_of(vL) < 0)
      throw Error(ErrorKind::BranchMisidentified, "stable direction does not mirror the unstable one");
    ManifoldExpansion Ws = expand(lc, l1, -lin.lambda, vs, pol.order, ss);
    choose_domain(Ws, tol);
    GlobalizeResult gs = globalize(Ws, SectionSpec::lc_v0(0), tol, horizon(lin.lambda));
    State zsyn = lc_to_synodic(gs.state);
    out.stable_xdot = zsyn.z[2] + zsyn.z[1];
    out.max_drift = max(out.max_drift, gs.max_drift);
  }

  double wall = seconds_since(t0);
  s.wall_seconds = wall;
  r.wall_seconds = wall;
  out.synodic = s;
  out.resonant = r;
  return out;
}

SplitSample cp_split_synodic(const std::string& K_text, const SplitOptions& opt) {
  return cp_split(K_text, opt).synodic;
}

SplitSample cp_split_resonant(const std::string& K_text, const SplitOptions& opt) {
  return cp_split(K_text, opt).resonant;
}

ToySplit toy_split_full(const std::string& K_text, int a, int m, const SplitOptions& opt) {
  if (a != 0 && a != 1) throw Error(ErrorKind::ConfigInvalid, "toy model needs a in {0, 1}");
  if (m < 1) throw Error(ErrorKind::ConfigInvalid, "toy model needs m >= 1");
  auto t0 = Clock::now();
  PrecisionPolicy pol = precision_policy(K_text, opt.policy);
  PrecisionScope scope(pol.ctx);
  Real K(K_text);
  Real tol = pow10(-pol.ctx.digits);
  const int side = opt.branch == Branch::external ? 1 : -1;

  ManifoldExpansion W = toy_unstable_manifold(K, a, m, opt.branch, pol.order, tol);
  const Model& model = W.model;
  SectionSpec sec = SectionSpec::toy_xpi(side, side);
  GlobalizeResult g = globalize(W, sec, tol, horizon(W.lambda));

  ToySplit out;
  out.crossing = g.state;
  out.max_drift = g.max_drift;
  SplitSample s = base_sample(SampleKind::dp_toy, K_text, model, pol);
  s.a = a;
  s.m = m;
  s.branch = opt.branch;
  s.value = 2 * g.state.z[3];
  s.section = sec.name();
  s.T = g.T;
  s.s_hat = W.s_hat;

  if (opt.verify_stable && side == 1) {
    Equilibrium Lp = find_equilibrium(model, EquilibriumLabel::Lplus);
    Linearization lp = linearize(model, Lp);
    int ss = -sign_of(lp.v_stable[0]);  // x decreasing away from 2 pi
    ManifoldExpansion Ws = expand(model, Lp, -lp.lambda, lp.v_stable, pol.order, ss);
    choose_domain(Ws, tol);
    GlobalizeResult gs = globalize(Ws, SectionSpec::toy_xpi(1, 0), tol, horizon(lp.lambda));
    out.stable_p = gs.state.z[3];
    out.max_drift = max(out.max_drift, gs.max_drift);
  }
  s.wall_seconds = seconds_since(t0);
  out.sample = s;
  return out;
}

SplitSample toy_split(const std::string& K_text, int a, int m, const SplitOptions& opt) {
  return toy_split_full(K_text, a, m, opt).sample;
}

SplitSample melnikov_sample(const std::string& K_text, const SplitOptions& opt) {
  auto t0 = Clock::now();
  PrecisionPolicy pol = precision_policy(K_text, opt.policy);
  PrecisionScope scope(pol.ctx);
  Real K(K_text);
  Real tol = pow10(-pol.ctx.digits);
  Model model = Model::toy(K, Real(1), Real(1));
  MelnikovOptions mo;
  mo.order = pol.order;
  MelnikovResult r = amended_z0(model.eps, tol, mo);
  SplitSample s = base_sample(SampleKind::z0_melnikov, K_text, model, pol);
  s.a = 1;
  s.value = r.z0;
  s.section = "x=pi";
  s.T = r.T;
  s.wall_seconds = seconds_since(t0);
  return s;
}

std::vector<std::string> k_grid(double K_max, double K_min, int per_decade) {
  if (!(K_max > 0 && K_min > 0 && K_min <= K_max) || per_decade < 1)
    throw Error(ErrorKind::ConfigInvalid, "K grid needs 0 < K_min <= K_max and per_decade >= 1");
  int n = static_cast<int>(std::lround(std::log10(K_max / K_min) * per_decade));
  std::vector<std::string> out;
  for (int i = 0; i <= n; ++i) {
    double K = K_max * std::pow(10.0, -static_cast<double>(i) / per_decade);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", K);
    out.emplace_back(buf);
  }
  return out;
}

}  // namespace l1split
