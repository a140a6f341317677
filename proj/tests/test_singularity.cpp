#include "l1split/errors.hpp"
#include "l1split/quadrature.hpp"
#include "l1split/singularity.hpp"
#include "test_util.hpp"

using namespace l1split;

namespace {
PrecisionContext ctx{50, 50};
}  // namespace

TEST_CASE("Gauss-Legendre rule and adaptive quadrature") {
  PrecisionScope scope(ctx);
  const GaussRule& r = gauss_legendre(24);
  Real sw(0);
  for (const auto& w : r.weights) sw += w;
  CHECK(testing::close_abs(sw, Real(2), testing::bar(ctx)));
  Real tol = pow10(-ctx.digits);
  QuadratureResult q = integrate_adaptive([](const Real& x) { return exp(x) * cos(5 * x); }, Real(0), Real(3), tol);
  Real exact = (exp(Real(3)) * (cos(Real(15)) + 5 * sin(Real(15))) - 1) / 26;
  CHECK(testing::close_abs(q.value, exact, 10 * tol));
  CHECK_THROWS_AS(integrate_adaptive([](const Real& x) { return 1 / sqrt(x); }, Real(0), Real(1), tol, 8, 6), Error);
}

TEST_CASE("linear regression") {
  PrecisionScope scope(ctx);
  std::vector<Real> x{Real(1), Real(2), Real(3), Real(5)}, y;
  for (const auto& v : x) y.push_back(Real("1.5") * v - Real("0.25"));
  LinearFit f = linreg(x, y);
  CHECK(testing::close_abs(f.slope, Real("1.5"), testing::bar(ctx)));
  CHECK(testing::close_abs(f.intercept, Real("-0.25"), testing::bar(ctx)));
  CHECK_THROWS_AS(linreg({Real(1), Real(1)}, {Real(0), Real(1)}), Error);
}

TEST_CASE("section cubic roots") {
  PrecisionScope scope(ctx);
  CubicRoots z = cubic_roots(Real(0));
  CHECK(testing::close_abs(z.y0, Real(2), testing::bar(ctx)));
  CHECK(testing::close_abs(z.y2, Real(-2), testing::bar(ctx)));
  CHECK(z.y1_infinite);

  Real eps("0.1");
  CubicRoots r = cubic_roots(eps);
  for (const Real* y : {&r.y0, &r.y1, &r.y2}) CHECK(abs(section_cubic(*y, eps)) < Real("1e-40"));
  CHECK(r.y0 > 0);
  CHECK(r.y2 < 0);
  CHECK(r.y1 > r.y0);

  // sin^2 x from the energy relation equals both factored forms
  Real e2 = eps * eps;
  for (const char* ys : {"0.3", "1.7", "-1.1", "2.5"}) {
    Real y(ys);
    Real cx = 1 - y * y / 2 + 2 * e2 * y * y * y / 3;
    Real s2 = 1 - cx * cx;
    Real f1 = (2 * e2 * y / 3 - Real(1) / 2) * section_cubic(y, eps) * y * y;
    Real f2 = -2 * e2 / 3 * (2 * e2 * y / 3 - Real(1) / 2) * (y - r.y0) * (y - r.y1) * (y - r.y2) * y * y;
    CHECK(testing::close_abs(s2, f1, testing::bar(ctx)));
    CHECK(testing::close_abs(s2, f2, testing::bar(ctx)));
  }
  CHECK_THROWS_AS(cubic_roots(Real(1)), Error);
}

TEST_CASE("singularity by two routes") {
  PrecisionScope scope(ctx);
  Real tol = pow10(-ctx.digits + 10);
  Real prev_delta(10);
  for (const char* e : {"0.1", "0.05", "0.02"}) {
    SingularityResult s = s_star(Real(e), tol);
    CHECK(s.route_gap <= 100 * tol);
    CHECK(s.delta > 0);
    CHECK(s.delta < prev_delta);
    CHECK(s.neg_s_im < 0);
    prev_delta = s.delta;
  }
  // standard pendulum limit t* = i pi/2
  SingularityResult small = s_star(Real("0.005"), tol);
  CHECK(small.delta < Real("0.01"));

  // Im(-s*) = O(eps^2)
  Real i1 = s_star(Real("0.02"), tol).neg_s_im, i2 = s_star(Real("0.04"), tol).neg_s_im,
       i3 = s_star(Real("0.08"), tol).neg_s_im;
  for (Real q : {i2 / i1, i3 / i2}) {
    CHECK(q > Real("3.5"));
    CHECK(q < Real("4.5"));
  }
  CHECK_THROWS_AS(s_star(Real("0.5"), tol), Error);
  CHECK_THROWS_AS(s_star(Real(0), tol), Error);
}

TEST_CASE("singularity shift matches the 8/9 loss in the splitting exponent") {
  PrecisionScope scope(ctx);
  Real tol = pow10(-ctx.digits + 10);
  // |w| delta - (8/9) ln|w| settles to a constant, i.e. e^{w delta} = C |w|^{-8/9}
  std::vector<Real> c;
  for (const char* k : {"1e-4", "1e-5", "1e-6", "1e-7"}) {
    Real K(k);
    Real w = 1 / sqrt(3 * K);
    SingularityResult s = s_star(sqrt(sqrt(K / 3)), tol);
    c.push_back(w * s.delta - Real(8) / 9 * log(w));
  }
  for (size_t i = 2; i < c.size(); ++i) CHECK(abs(c[i] - c[i - 1]) < abs(c[i - 1] - c[i - 2]));
  CHECK(abs(c.back() - Real("0.2764")) < Real("1e-3"));
}

TEST_CASE("delta fit recovers an exact power law") {
  PrecisionScope scope(ctx);
  std::vector<Real> K, d;
  for (int i = 0; i < 8; ++i) {
    K.push_back(pow10(-3) * pow(Real("0.4"), i));
    d.push_back(Real("0.7") * pow(K.back() * abs(log(K.back())), Real("2.051")));
  }
  DeltaFit f = delta_fit_values(K, d);
  CHECK(testing::close_abs(f.rho, Real("2.051"), Real("1e-10")));
  CHECK(testing::close_rel(f.A, Real("0.7"), Real("1e-10")));
  for (const auto& n : f.normalized) CHECK(testing::close_rel(n, Real("0.7"), Real("1e-10")));
  d[2] = Real(0);
  CHECK_THROWS_AS(delta_fit_values(K, d), Error);
}
