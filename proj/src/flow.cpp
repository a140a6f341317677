#include "l1split/flow.hpp"

#include <cmath>
#include <sstream>

#include "l1split/errors.hpp"
#include "l1split/linalg.hpp"
#include "l1split/series.hpp"

namespace l1split {

SectionSpec SectionSpec::synodic_y0(int direction) { return {SectionKind::synodic_y0, direction, Real(0)}; }
SectionSpec SectionSpec::lc_v0(int direction) { return {SectionKind::lc_v0, direction, Real(0)}; }
SectionSpec SectionSpec::toy_xpi(int side, int direction) { return {SectionKind::toy_xpi, direction, side * pi()}; }

int SectionSpec::coordinate() const { return kind == SectionKind::toy_xpi ? 0 : 1; }

const char* SectionSpec::name() const {
  switch (kind) {
    case SectionKind::synodic_y0: return "synodic_y0";
    case SectionKind::lc_v0: return "lc_v0";
    case SectionKind::toy_xpi: return "toy_xpi";
  }
  return "?";
}

int TaylorStepper::default_order(const Real& tol) {
  double lt = -tol.log10_abs() * std::log(10.0);
  int n = static_cast<int>(std::ceil(lt / 2));
  return std::clamp(n, 20, std::max(20, working_digits10()));
}

TaylorStepper::TaylorStepper(const JetProgram& program, const Real& tol, int order)
    : program_(&program),
      tol_(tol),
      order_(order > 0 ? order : default_order(tol)),
      ev_(program, order_) {}

void TaylorStepper::set_state(const Real& t, const std::vector<Real>& z) {
  t_ = t;
  z_ = z;
}

Real TaylorStepper::prepare() {
  const int n = program_->n_vars();
  for (int i = 0; i < n; ++i) ev_.var(i)[0] = z_[static_cast<size_t>(i)];
  for (int k = 0; k < order_; ++k) {
    ev_.compute(k);
    for (int i = 0; i < n; ++i) mpfr_div_si(ev_.var(i)[k + 1].get(), ev_.output(i)[k].get(), k + 1, MPFR_RNDN);
  }
  // h = 0.9 min over the last two orders of (tol/|c_k|)^(1/k), in log10 arithmetic
  double ltol = tol_.log10_abs();
  double best = INFINITY;
  for (int k : {order_ - 1, order_}) {
    double lc = -INFINITY;
    for (int i = 0; i < n; ++i) lc = std::max(lc, ev_.var(i)[k].log10_abs());
    if (std::isfinite(lc)) best = std::min(best, (ltol - lc) / k);
  }
  if (!std::isfinite(best)) return Real(0);  // polynomial solution: any step is exact
  return Real(0.9) * exp(Real(best) * log(Real(10)));
}

std::vector<Real> TaylorStepper::eval(const Real& tau) const {
  std::vector<Real> out(z_.size());
  for (size_t i = 0; i < z_.size(); ++i) horner(out[i], ev_.var(static_cast<int>(i)), order_, tau);
  return out;
}

Real TaylorStepper::eval_component(int i, const Real& tau) const {
  Real r;
  horner(r, ev_.var(i), order_, tau);
  return r;
}

Real TaylorStepper::eval_component_derivative(int i, const Real& tau) const {
  Real r;
  horner_derivative(r, ev_.var(i), order_, tau);
  return r;
}

void TaylorStepper::commit(const Real& h) {
  z_ = eval(h);
  t_ += h;
}

StepRecord TaylorStepper::record(const Real& h) const {
  StepRecord rec;
  rec.t0 = t_;
  rec.h = h;
  for (int i = 0; i < program_->n_vars(); ++i) {
    const Real* c = ev_.var(i);
    rec.poly.emplace_back(c, c + order_ + 1);
  }
  return rec;
}

namespace {

Real min_step() { return pow10(-working_digits10() / 2); }

// Step length towards `remaining` (signed), bounded by the controller and max_step.
Real choose_step(const Real& natural, const Real& remaining, const FlowOptions& opt) {
  Real h = abs(remaining);
  if (natural.sign() > 0 && natural < h) h = natural;
  if (opt.max_step.sign() > 0 && opt.max_step < h) h = opt.max_step;
  if (h < min_step() && h < abs(remaining)) throw Error(ErrorKind::StepUnderflow, "step " + h.str(6));
  return remaining.sign() < 0 ? -h : h;
}

struct Monitor {
  const Model& model;
  Real I0;
  Real max_drift{0};
  Real collision;
  explicit Monitor(const Model& m, const State& z0, const Real& coll) : model(m), collision(coll) {
    I0 = first_integral(m, z0);
  }
  void check(const std::vector<Real>& z) {
    if (model.family == Family::CPSynodic && hypot(z[0], z[1]) < collision) {
      throw Error(ErrorKind::CollisionApproach, "synodic r below threshold; switch to Levi-Civita");
    }
    Real d = abs(first_integral(model, {model.chart(), z}) - I0);
    if (d > max_drift) max_drift = d;
  }
};

}  // namespace

Trajectory integrate(const Model& model, const State& z0, const Real& t_end, const Real& tol, const FlowOptions& opt) {
  if (z0.chart != model.chart()) throw Error(ErrorKind::ChartMismatch, "initial state chart");
  JetProgram prog = field_program(model);
  TaylorStepper st(prog, tol, opt.order);
  st.set_state(Real(0), z0.z);
  Monitor mon(model, z0, opt.collision_radius);
  Trajectory traj;
  traj.initial = z0;
  traj.order = st.order();
  while (st.t() != t_end) {
    Real natural = st.prepare();
    Real h = choose_step(natural, t_end - st.t(), opt);
    if (opt.keep_steps) traj.steps.push_back(st.record(h));
    if (abs(t_end - st.t() - h) <= abs(h) * pow10(-working_digits10() + 5)) {
      st.commit(h);
      st.set_state(t_end, st.z());
    } else {
      st.commit(h);
    }
    mon.check(st.z());
    ++traj.n_steps;
  }
  traj.final_state = {model.chart(), st.z()};
  traj.t_final = st.t();
  traj.max_integral_drift = mon.max_drift;
  return traj;
}

SectionHit integrate_to_section(const Model& model, const State& z0, const SectionSpec& sec, const Real& tol,
                                const Real& t_max, const FlowOptions& opt) {
  if (z0.chart != model.chart()) throw Error(ErrorKind::ChartMismatch, "initial state chart");
  const bool lc = sec.kind == SectionKind::lc_v0;
  if ((sec.kind == SectionKind::synodic_y0 && model.family != Family::CPSynodic) ||
      (lc && model.family != Family::CPLeviCivita) ||
      (sec.kind == SectionKind::toy_xpi && model.family != Family::ToyCP && model.family != Family::Pendulum)) {
    throw Error(ErrorKind::ChartMismatch, std::string("section ") + sec.name() + " does not fit model");
  }
  const int ci = sec.coordinate();
  JetProgram prog = field_program(model);
  TaylorStepper st(prog, tol, opt.order);
  st.set_state(Real(0), z0.z);
  Monitor mon(model, z0, opt.collision_radius);
  SectionHit hit;
  hit.trajectory.initial = z0;
  hit.trajectory.order = st.order();
  const Real tiny = ldexp(Real(1), -static_cast<long>(working_bits()) + 8);

  while (abs(st.t()) < abs(t_max)) {
    Real natural = st.prepare();
    Real h = choose_step(natural, t_max - st.t(), opt);
    Real g0 = st.z()[static_cast<size_t>(ci)] - sec.level;
    Real g1 = st.eval_component(ci, h) - sec.level;
    if (opt.keep_steps) hit.trajectory.steps.push_back(st.record(h));
    if (g0.sign() * g1.sign() < 0) {
      // Newton on the step polynomial, safeguarded by the bracket [lo, hi] in tau
      Real lo = h.sign() > 0 ? Real(0) : h, hi = h.sign() > 0 ? h : Real(0);
      int slo = (h.sign() > 0 ? g0 : g1).sign();
      Real tau = h * g0 / (g0 - g1);
      for (int it = 0; it < 200; ++it) {
        Real g = st.eval_component(ci, tau) - sec.level;
        if (g.is_zero()) break;
        if (g.sign() == slo) lo = tau;
        else hi = tau;
        Real dg = st.eval_component_derivative(ci, tau);
        Real next = dg.is_zero() ? ldexp(lo + hi, -1) : tau - g / dg;
        if (next <= lo || next >= hi) next = ldexp(lo + hi, -1);
        Real step = abs(next - tau);
        tau = next;
        if (step <= tiny * (1 + abs(tau))) break;
      }
      std::vector<Real> z = st.eval(tau);
      Real dg = st.eval_component_derivative(ci, tau);
      int dir_sign = dg.sign();
      bool domain_ok = true;
      if (sec.kind == SectionKind::synodic_y0) domain_ok = z[0].sign() > 0;
      if (lc) {
        domain_ok = !z[0].is_zero();
        if (z[0].sign() < 0) {
          for (auto& c : z) c = -c;
          dir_sign = -dir_sign;
        }
      }
      if (domain_ok && (sec.direction == 0 || dir_sign == sec.direction)) {
        Real g = z[static_cast<size_t>(ci)] - sec.level;
        if (abs(g) > 10 * tol) throw Error(ErrorKind::NoCrossing, "crossing refinement did not converge");
        hit.state = {model.chart(), z};
        hit.T = st.t() + tau;
        hit.g_left = g0;
        hit.g_right = g1;
        mon.check(z);
        hit.trajectory.n_steps += 1;
        hit.trajectory.final_state = hit.state;
        hit.trajectory.t_final = hit.T;
        hit.trajectory.max_integral_drift = mon.max_drift;
        return hit;
      }
    }
    st.commit(h);
    mon.check(st.z());
    ++hit.trajectory.n_steps;
  }
  throw Error(ErrorKind::NoCrossing, std::string("no crossing of ") + sec.name() + " before t_max");
}

std::vector<Real> integrate_program(const JetProgram& program, const std::vector<Real>& z0, const Real& t0,
                                    const Real& t_end, const Real& tol, const FlowOptions& opt) {
  TaylorStepper st(program, tol, opt.order);
  st.set_state(t0, z0);
  while (st.t() != t_end) {
    Real natural = st.prepare();
    Real h = choose_step(natural, t_end - st.t(), opt);
    st.commit(h);
    if (abs(t_end - st.t()) <= abs(h) * pow10(-working_digits10() + 5)) st.set_state(t_end, st.z());
  }
  return st.z();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  for (size_t i = 0; i < traj.initial.z.size(); ++i) os << ",z" << i;
  os << "\n0";
  for (const auto& c : traj.initial.z) os << "," << c.str();
  os << "\n";
  for (const auto& s : traj.steps) {
    os << (s.t0 + s.h).str();
    for (const auto& p : s.poly) {
      Real v;
      horner(v, p.data(), static_cast<int>(p.size()) - 1, s.h);
      os << "," << v.str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace l1split
