#include "l1split/errors.hpp"
#include "l1split/flow.hpp"
#include "test_util.hpp"

using namespace l1split;

namespace {
PrecisionContext ctx{40, 50};
Real tol_for(const PrecisionContext& c) { return pow10(-(c.digits)); }
}  // namespace

TEST_CASE("rotating Kepler circle is at rest") {
  PrecisionScope scope(ctx);
  Model m = Model::cp_synodic(Real(0));
  State z0{Chart::synodic, {Real(1), Real(0), Real(0), Real(1)}};
  Trajectory tr = integrate(m, z0, Real(10), tol_for(ctx));
  for (size_t i = 0; i < 4; ++i) CHECK(abs(tr.final_state.z[i] - z0.z[i]) < tol_for(ctx));
  CHECK(tr.t_final == 10);
}

TEST_CASE("pendulum separatrix is followed exactly") {
  PrecisionScope scope(ctx);
  Real tol = tol_for(ctx);
  Model m = Model::pendulum(Real(0), Real(0));
  State z0{Chart::pendulum2d, {pi(), Real(2)}};
  FlowOptions opt;
  opt.keep_steps = true;
  Trajectory tr = integrate(m, z0, Real(10), tol, opt);
  CHECK(tr.max_integral_drift <= 100 * tol);
  CHECK(tr.steps.size() == static_cast<size_t>(tr.n_steps));
  for (int t : {1, 2, 3}) {
    Trajectory part = integrate(m, z0, Real(t), tol);
    // x(0) = pi lies on x(t) = 4 arctan(e^t)
    CHECK(abs(part.final_state.z[0] - 4 * atan(exp(Real(t)))) < 10 * tol);
    CHECK(abs(part.final_state.z[1] - 2 / cosh(Real(t))) < 10 * tol);
  }
  // step polynomials reproduce their endpoints
  Trajectory again = integrate(m, z0, Real(2), tol, opt);
  CHECK(again.steps.size() >= 1);
  CHECK(trajectory_csv(again).find("t,z0,z1") == 0);
  Trajectory back = integrate(m, z0, Real(-2), tol);
  CHECK(abs(back.final_state.z[0] - 4 * atan(exp(Real(-2)))) < 10 * tol);
}

TEST_CASE("first-integral drift and reversibility shadowing") {
  PrecisionScope scope(ctx);
  Real tol = tol_for(ctx);
  struct Case {
    Model m;
    State z;
    Real T;
  };
  std::vector<Case> cases{
      {Model::cp_synodic(Real("0.05")), {Chart::synodic, {Real("1.1"), Real("0.2"), Real("-0.1"), Real("0.95")}}, Real(3)},
      {Model::toy_from_eps(Real("0.2"), Real(1), Real(2)), {Chart::resonant_qp, {Real("0.5"), Real("0.3"), Real("0.01"), Real("0.02")}}, Real(2)},
      {Model::pendulum(Real(1), Real("0.1")), {Chart::pendulum2d, {Real("0.4"), Real("1.1")}}, Real(5)},
      {Model::cp_levi_civita(Real("0.01"), Real("2.9")), {Chart::levi_civita, {Real("0.9"), Real("0.3"), Real("0.1"), Real("-0.2")}}, Real("0.5")},
  };
  for (const auto& c : cases) {
    Trajectory fwd = integrate(c.m, c.z, c.T, tol);
    CHECK(fwd.max_integral_drift <= 100 * tol);
    State r = reversibility_map(c.m, fwd.final_state);
    Trajectory again = integrate(c.m, r, c.T, tol);
    State back = reversibility_map(c.m, again.final_state);
    for (size_t i = 0; i < c.z.z.size(); ++i) CHECK(abs(back.z[i] - c.z.z[i]) <= 1000 * tol);
  }
}

TEST_CASE("section crossing refinement and direction filter") {
  PrecisionScope scope(ctx);
  Real tol = tol_for(ctx);
  Model pend = Model::pendulum(Real(0), Real(0));
  // start on the separatrix below pi, reach x = pi with y = 2
  State z0{Chart::pendulum2d, {4 * atan(exp(Real(-3))), 2 / cosh(Real(-3))}};
  SectionHit hit = integrate_to_section(pend, z0, SectionSpec::toy_xpi(1, 1), tol, Real(100));
  CHECK(abs(hit.state.z[0] - pi()) <= 10 * tol);
  CHECK(abs(hit.state.z[1] - 2) <= 10 * tol);
  CHECK(abs(hit.T - 3) <= 10 * tol);
  CHECK(hit.g_left.sign() * hit.g_right.sign() < 0);

  // Kepler-like orbit: start on y = 0 moving down, the first valid upward crossing is later
  Model syn = Model::cp_synodic(Real("0.01"));
  State s0{Chart::synodic, {Real("1.2"), Real(0), Real(0), Real("0.3")}};
  Real ydot0 = eval_field(syn, s0).z[1];
  REQUIRE(ydot0 < 0);
  SectionHit up = integrate_to_section(syn, s0, SectionSpec::synodic_y0(1), tol, Real(100));
  CHECK(up.T > 0);
  CHECK(abs(up.state.z[1]) <= 10 * tol);
  CHECK(eval_field(syn, up.state).z[1] > 0);
  CHECK(up.state.z[0] > 0);

  CHECK_THROWS_AS(integrate_to_section(pend, z0, SectionSpec::toy_xpi(1, 1), tol, Real("0.5")), Error);
  CHECK_THROWS_AS(integrate_to_section(pend, z0, SectionSpec::synodic_y0(1), tol, Real(1)), Error);
}

TEST_CASE("collision approach in synodic chart") {
  PrecisionScope scope(ctx);
  Model syn = Model::cp_synodic(Real("0.01"));
  // nearly radial infall
  State s0{Chart::synodic, {Real("0.5"), Real(0), Real(0), Real(0)}};
  CHECK_THROWS_AS(integrate(syn, s0, Real(5), tol_for(ctx)), Error);
}
