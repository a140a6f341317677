#include "l1split/errors.hpp"
#include "l1split/models.hpp"
#include "test_util.hpp"

using namespace l1split;
using l1split::testing::bar;

namespace {

std::vector<Real> sample_state(int seed, int dim) {
  std::vector<Real> z;
  for (int i = 0; i < dim; ++i) z.push_back(Real("0.3") + sin(Real(seed * 7 + i * 3 + 1)) / 2);
  return z;
}

// Central-difference gradient of the first integral.
std::vector<Real> gradient(const Model& m, const State& s) {
  Real h = pow10(-working_digits10() / 3);
  std::vector<Real> g;
  for (size_t i = 0; i < s.z.size(); ++i) {
    State a = s, b = s;
    a.z[i] += h;
    b.z[i] -= h;
    g.push_back((first_integral(m, a) - first_integral(m, b)) / (2 * h));
  }
  return g;
}

}  // namespace

TEST_CASE("field values at known points") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  Model k0 = Model::cp_synodic(Real(0));
  State circ{Chart::synodic, {Real(1), Real(0), Real(0), Real(1)}};
  for (const auto& c : eval_field(k0, circ).z) CHECK(abs(c) < bar(ctx));

  for (const char* m : {"1", "2", "1.5"}) {
    Model toy = Model::toy_from_eps(Real("0.1"), Real(1), Real(m));
    Real q = 3 * eps_power(toy.eps, toy.m) * toy.eps * toy.eps;
    State lm{Chart::resonant_qp, {Real(0), Real(0), q, Real(0)}};
    for (const auto& c : eval_field(toy, lm).z) CHECK(abs(c) < bar(ctx));
    Real h = first_integral(toy, lm);
    Real expect = Real(3) / 2 * eps_power(toy.eps, 2 * toy.m + 2);
    CHECK(abs(h - expect) < bar(ctx) * abs(expect));
  }

  Model pend = Model::pendulum(Real(0), Real(0));
  State top{Chart::pendulum2d, {pi(), Real(2)}};
  auto f = eval_field(pend, top).z;
  CHECK(f[0] == 2);
  CHECK(abs(f[1]) < bar(ctx));

  State collision{Chart::synodic, {Real(0), Real(0), Real(1), Real(0)}};
  CHECK_THROWS_AS(eval_field(Model::cp_synodic(Real("0.1")), collision), Error);
  CHECK_THROWS_AS(eval_field(pend, collision), Error);
}

TEST_CASE("Levi-Civita integral is regular at collision") {
  PrecisionScope scope(PrecisionContext{50, 50});
  Model lc = Model::cp_levi_civita(Real("0.1"), Real(3));
  State origin{Chart::levi_civita, {Real(0), Real(0), Real(0), Real(0)}};
  // The 1/r term times 8r leaves the constant -8 on the collision manifold.
  CHECK(first_integral(lc, origin) == -8);
}

TEST_CASE("first integrals: two formula paths and conservation") {
  PrecisionContext ctx{60, 50};
  PrecisionScope scope(ctx);
  Model syn = Model::cp_synodic(Real("0.2"));
  auto eqs = equilibria(syn);
  REQUIRE(eqs.size() == 2);
  const Equilibrium& l1 = eqs[0];
  CHECK(l1.label == EquilibriumLabel::L1);
  Real h1 = first_integral(syn, l1.location);
  CHECK(abs(h1 + jacobi_constant(syn, l1.location) / 2) < bar(ctx));

  std::vector<Model> models{syn, Model::toy_from_eps(Real("0.1"), Real(1), Real(2)),
                            Model::toy_from_eps(Real("0.2"), Real(0), Real("1.3")),
                            Model::pendulum(Real(1), Real("0.1"))};
  for (const auto& m : models) {
    for (int seed = 0; seed < 3; ++seed) {
      State s{m.chart(), sample_state(seed, m.dim)};
      auto f = eval_field(m, s).z;
      auto g = gradient(m, s);
      Real dot = 0;
      for (size_t i = 0; i < f.size(); ++i) dot += g[i] * f[i];
      CHECK(abs(dot) < bar(ctx));
      if (m.family != Family::CPSynodic) {
        // canonical pairs (x,y), (q,p): f = J grad H
        for (size_t i = 0; i < f.size(); i += 2) {
          CHECK(abs(f[i] - g[i + 1]) < bar(ctx));
          CHECK(abs(f[i + 1] + g[i]) < bar(ctx));
        }
      }
    }
  }
}

TEST_CASE("Levi-Civita integral is conserved by the regularized field") {
  PrecisionContext ctx{60, 50};
  PrecisionScope scope(ctx);
  Model lc = Model::cp_levi_civita(Real("0.05"), Real("2.9"));
  for (int seed = 0; seed < 3; ++seed) {
    State s{Chart::levi_civita, sample_state(seed, 4)};
    auto f = eval_field(lc, s).z;
    auto g = gradient(lc, s);
    Real dot = 0;
    for (size_t i = 0; i < 4; ++i) dot += g[i] * f[i];
    CHECK(abs(dot) < bar(ctx));
  }
}

TEST_CASE("equilibria") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  try {
    (void)equilibria(Model::cp_synodic(Real(0)));
    FAIL("expected DegenerateCircle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateCircle);
  }
  auto eqs = equilibria(Model::cp_synodic(Real("0.2")));
  // independent bisection on t^3 - 0.2 t^2 -+ 1 at 60 digits
  Real x1("-0.93758105698171074437852358633755240201661138270174");
  Real x2("1.0713076962963520800999851708820696760281025584673");
  CHECK(abs(eqs[0].location.z[0] - x1) < pow10(-48));
  CHECK(abs(eqs[1].location.z[0] - x2) < pow10(-48));
  CHECK(eqs[0].energy < eqs[1].energy);

  auto toy = equilibria(Model::toy_from_eps(Real("0.1"), Real(0), Real(1)));
  CHECK(toy[0].label == EquilibriumLabel::Lminus);
  CHECK(abs(toy[0].location.z[2] - Real("0.003")) < bar(ctx));
  CHECK(toy[0].location.z[0] == 0);
}

TEST_CASE("linearization") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  for (const char* eps : {"0", "0.1", "0.3"}) {
    Model p = Model::pendulum(Real(1), Real(eps));
    auto eq = equilibria(p)[0];
    auto lin = linearize(p, eq);
    CHECK(abs(lin.lambda - 1) < bar(ctx));
    CHECK(abs(lin.v_unstable[0] - lin.v_unstable[1]) < bar(ctx));
    CHECK(lin.v_unstable[0] > 0);
  }

  Model syn = Model::cp_synodic(Real("0.01"));
  auto l1 = equilibria(syn)[0];
  auto lin = linearize(syn, l1);
  Real lead = sqrt(Real("0.03"));
  CHECK(abs(lin.lambda / lead - 1) < Real("0.05"));
  int complex_count = 0;
  for (const auto& e : lin.eigenvalues)
    if (abs(e.im) > pow10(-20)) {
      ++complex_count;
      CHECK(abs(e.re) < bar(ctx));
    }
  CHECK(complex_count == 2);
  // J v = lambda v
  auto jv = lin.jacobian * lin.v_unstable;
  for (size_t i = 0; i < 4; ++i) CHECK(abs(jv[i] - lin.lambda * lin.v_unstable[i]) < bar(ctx));

  Model toy = Model::toy_from_eps(Real("0.1"), Real(0), Real(2));
  auto lt = linearize(toy, equilibria(toy)[0]);
  CHECK(abs(lt.lambda - 1) < Real("0.05"));
  bool found_center = false;
  for (const auto& e : lt.eigenvalues)
    if (abs(abs(e.im) - abs(toy.omega)) < Real("0.05") * abs(toy.omega)) found_center = true;
  CHECK(found_center);

  Equilibrium fake = l1;
  fake.location.z[0] += Real("0.01");
  CHECK_THROWS_AS(linearize(syn, fake), Error);
}

TEST_CASE("Levi-Civita L1 matches the synodic one") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  Real K("0.001");
  auto l1 = equilibria(Model::cp_synodic(K))[0];
  Real C = -2 * l1.energy;
  Real a = -l1.location.z[0];
  CHECK(abs(C - (3 * a * a + 4 * K * a)) < bar(ctx));
  Model lc = Model::cp_levi_civita(K, C);
  auto e = cp_l1(lc);
  CHECK(e.location.z[0] == 0);
  CHECK(abs(e.location.z[1] - sqrt(a)) < bar(ctx));
  CHECK(e.lambda > 0);
}

TEST_CASE("Hill regions") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  Model syn = Model::cp_synodic(Real("0.2"));
  auto l1 = equilibria(syn)[0];
  Real C = jacobi_constant(syn, l1.location);
  auto h = hill_membership(syn, l1.location.z[0], Real(0), C);
  CHECK(abs(2 * h.Omega - C) < bar(ctx));
  CHECK(hill_membership(syn, Real(50), Real(30), C).allowed);
  CHECK_THROWS_AS(hill_membership(syn, Real(0), Real(0), C), Error);
  // H = -2 gives C = 4: a forbidden annulus around r = 1
  int forbidden = 0, allowed = 0;
  for (int i = -30; i <= 30; ++i)
    for (int j = -30; j <= 30; ++j) {
      if (i == 0 && j == 0) continue;
      auto r = hill_membership(syn, Real(i) / 15, Real(j) / 15, Real(4));
      (r.allowed ? allowed : forbidden)++;
    }
  CHECK(forbidden > 0);
  CHECK(allowed > 0);
  CHECK(!hill_membership(syn, Real(1), Real(0), Real(4)).allowed);
  CHECK(hill_membership(syn, Real("0.05"), Real(0), Real(4)).allowed);
}

TEST_CASE("reversing symmetries anti-commute with the field") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  std::vector<Model> models{Model::cp_synodic(Real("0.1")), Model::cp_levi_civita(Real("0.1"), Real("2.8")),
                            Model::toy_from_eps(Real("0.15"), Real(1), Real(2)),
                            Model::pendulum(Real(1), Real("0.2"))};
  for (const auto& m : models) {
    for (int seed = 0; seed < 3; ++seed) {
      State s{m.chart(), sample_state(seed, m.dim)};
      State rs = reversibility_map(m, s);
      auto f_rs = eval_field(m, rs);
      // R is linear up to a translation, so R f(z) is the linear part applied to f(z)
      State fz = eval_field(m, s);
      State zero{m.chart(), std::vector<Real>(static_cast<size_t>(m.dim))};
      State r0 = reversibility_map(m, zero);
      State rf = reversibility_map(m, fz);
      for (int i = 0; i < m.dim; ++i) CHECK(abs(f_rs.z[i] + (rf.z[i] - r0.z[i])) < bar(ctx));
    }
  }
}
