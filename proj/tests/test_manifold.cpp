#include "l1split/errors.hpp"
#include "l1split/manifold.hpp"
#include "test_util.hpp"

using namespace l1split;

namespace {

PrecisionContext ctx{50, 50};

ManifoldExpansion pendulum_manifold(int order, int branch = 1) {
  Model m = Model::pendulum(Real(0), Real(0));
  Equilibrium eq = equilibria(m).at(0);
  return expand(m, eq, eq.lambda, eq.v, order, branch);
}

ManifoldExpansion toy_manifold(int order) {
  Model m = Model::toy_from_eps(Real("0.1"), Real(0), Real(1));
  Equilibrium eq = equilibria(m).at(0);
  REQUIRE(eq.label == EquilibriumLabel::Lminus);
  return expand(m, eq, eq.lambda, eq.v, order);
}

}  // namespace

TEST_CASE("pendulum expansion matches the explicit separatrix") {
  PrecisionScope scope(ctx);
  ManifoldExpansion W = pendulum_manifold(30);
  Real r2 = 1 / sqrt(Real(2));
  CHECK(testing::close_abs(W.w[1][0], r2, testing::bar(ctx)));
  CHECK(testing::close_abs(W.w[1][1], r2, testing::bar(ctx)));
  // with |w_1| = 1, x(s) = 4 arctan(s/c) and y(s) = 4 (s/c) / (1 + (s/c)^2), c = 4 sqrt 2
  Real c = 4 * sqrt(Real(2));
  for (int k = 1; k <= 30; ++k) {
    Real ex(0), ey(0);
    if (k % 2 == 1) {
      int sg = ((k - 1) / 2) % 2 == 0 ? 1 : -1;
      ey = sg * 4 / pow(c, k);
      ex = ey / k;
    }
    CHECK(testing::close_abs(W.w[static_cast<size_t>(k)][0], ex, testing::bar(ctx)));
    CHECK(testing::close_abs(W.w[static_cast<size_t>(k)][1], ey, testing::bar(ctx)));
  }
  CHECK(testing::close_abs(W.eval(Real(1))[0], 4 * atan(1 / c), Real("1e-20")));
}

TEST_CASE("residual scales like s^(N+1)") {
  PrecisionScope scope(ctx);
  for (auto W : {pendulum_manifold(21), toy_manifold(20)}) {
    Real s = choose_domain(W, Real("1e-12"));
    Real r1 = invariance_residual(W, s);
    Real r2 = invariance_residual(W, s / 2);
    Real ratio = r1 / r2 / pow(Real(2), W.order + 1);
    CHECK(ratio > Real("0.25"));
    CHECK(ratio < Real(4));
  }
}

TEST_CASE("toy expansion residual at small s") {
  PrecisionScope scope(ctx);
  ManifoldExpansion W = toy_manifold(40);
  CHECK(invariance_residual(W, Real("1e-3")) < Real("1e-40"));
  CHECK(W.w[1][0].sign() * W.branch >= 0);
}

TEST_CASE("domain radius") {
  PrecisionScope scope(ctx);
  ManifoldExpansion W = toy_manifold(40);
  Real tol("1e-30");
  Real s = choose_domain(W, tol);
  CHECK(W.s_hat == s);
  for (int d : {1, 2, 4}) CHECK(invariance_residual(W, s / d) <= 10 * tol);
  CHECK(tail_estimate(W, s) <= tol);

  Real s2 = choose_domain(W, tol / pow(Real(2), W.order));
  Real ratio = s / s2;
  CHECK(ratio > Real("1.6"));
  CHECK(ratio < Real("2.4"));

  ManifoldExpansion low = pendulum_manifold(10);
  CHECK_THROWS_AS(choose_domain(low, Real("1e-300")), Error);
  try {
    choose_domain(low, Real("1e-300"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainCollapse);
  }
  ManifoldExpansion tiny = pendulum_manifold(5);
  CHECK_THROWS_AS(choose_domain(tiny, Real("1e-10")), Error);
}

TEST_CASE("pendulum domain radius reflects the arctan singularity") {
  PrecisionScope scope(PrecisionContext{70, 50});
  ManifoldExpansion W = pendulum_manifold(100);
  Real s = choose_domain(W, Real("1e-60"));
  // convergence radius is c = 4 sqrt 2 for the unit eigenvector
  Real rel = s / (4 * sqrt(Real(2))) / pow(Real(10), Real("-0.6"));
  CHECK(rel > Real("0.5"));
  CHECK(rel < Real(2));
}

TEST_CASE("globalization to x = pi") {
  PrecisionScope scope(ctx);
  Real tol = pow10(-ctx.digits);
  ManifoldExpansion W = pendulum_manifold(60);
  choose_domain(W, tol);
  GlobalizeResult g = globalize(W, SectionSpec::toy_xpi(1, 1), tol, Real(100));
  CHECK(testing::close_abs(g.state.z[0], pi(), 10 * tol));
  CHECK(testing::close_abs(g.state.z[1], Real(2), 100 * tol));
  CHECK(g.T > 0);
  // the section point sits at parameter c: x = 4 arctan(1) = pi
  CHECK(testing::close_rel(g.s0, 4 * sqrt(Real(2)), Real("1e-30")));

  // half the radius, same section point
  ManifoldExpansion Wh = W;
  Wh.s_hat = W.s_hat / 2;
  GlobalizeResult gh = globalize(Wh, SectionSpec::toy_xpi(1, 1), tol, Real(100));
  for (size_t i = 0; i < 2; ++i) CHECK(testing::close_abs(gh.state.z[i], g.state.z[i], 100 * tol));
  CHECK(testing::close_abs(gh.T, g.T + log(Real(2)), 100 * tol));

  // other branch reaches x = -pi
  ManifoldExpansion Wm = pendulum_manifold(60, -1);
  choose_domain(Wm, tol);
  GlobalizeResult gm = globalize(Wm, SectionSpec::toy_xpi(-1, -1), tol, Real(100));
  CHECK(testing::close_abs(gm.state.z[0], -pi(), 10 * tol));
  CHECK(testing::close_abs(gm.state.z[1], Real(-2), 100 * tol));
}

TEST_CASE("parameter shift equals time shift") {
  PrecisionScope scope(ctx);
  Real tol = pow10(-ctx.digits);
  ManifoldExpansion W = toy_manifold(60);
  Real s = choose_domain(W, tol);
  Real tau = -log(Real(2)) / W.lambda;
  Trajectory tr = integrate(W.model, {W.model.chart(), W.eval(s)}, tau, tol);
  std::vector<Real> shifted = W.eval(s / 2);
  for (size_t i = 0; i < 4; ++i) CHECK(testing::close_abs(tr.final_state.z[i], shifted[i], 100 * tol));
}

TEST_CASE("stable branch with negative lambda") {
  PrecisionScope scope(ctx);
  Real tol = pow10(-ctx.digits);
  Model m = Model::pendulum(Real(0), Real(0));
  Equilibrium eq = equilibria(m).at(0);
  Linearization lin = linearize(m, eq);
  ManifoldExpansion W = expand(m, eq, -lin.lambda, lin.v_stable, 60);
  CHECK(invariance_residual(W, Real("0.1")) < Real("1e-40"));
  choose_domain(W, tol);
  GlobalizeResult g = globalize(W, SectionSpec::toy_xpi(1, -1), tol, Real(100));
  CHECK(g.T < 0);
  CHECK(testing::close_abs(abs(g.state.z[1]), Real(2), 100 * tol));
}

TEST_CASE("resonant orders and dump") {
  PrecisionScope scope(ctx);
  Model m = Model::pendulum(Real(0), Real(0));
  Equilibrium eq = equilibria(m).at(0);
  // lambda = 1/2 makes 2 lambda an eigenvalue
  try {
    expand(m, eq, Real(1) / 2, eq.v, 5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResonantOrder);
  }
  ManifoldExpansion W = pendulum_manifold(12);
  choose_domain(W, Real("1e-10"));
  std::string d = manifold_dump(W);
  CHECK(d.find("# lambda") != std::string::npos);
  CHECK(d.find("# s_hat") != std::string::npos);
  CHECK(d.find("\n12,") != std::string::npos);
}
