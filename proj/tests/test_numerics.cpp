#include <thread>

#include "l1split/errors.hpp"
#include "l1split/series.hpp"
#include "test_util.hpp"

using namespace l1split;
using l1split::testing::bar;

TEST_CASE("series ring operations are exact at the truncation order") {
  PrecisionContext ctx{40, 50};
  PrecisionScope scope(ctx);
  TruncSeries a = TruncSeries::variable(4, Real(1));
  TruncSeries b(4);
  b[0] = 1;
  b[1] = -1;
  TruncSeries p = a * b;
  CHECK(p[0] == 1);
  CHECK(p[1] == 0);
  CHECK(p[2] == -1);
  CHECK(p[3] == 0);
  CHECK(p[4] == 0);

  TruncSeries g = recip(b);
  for (int k = 0; k <= 4; ++k) CHECK(g[k] == 1);

  TruncSeries c(3);
  c[0] = 2;
  c[1] = 3;
  TruncSeries r = ts_arith(ArithKind::recip, c);
  // long division of 1 by 2 + 3s
  CHECK(r[0] == Real(1) / 2);
  CHECK(r[1] == Real(-3) / 4);
  CHECK(r[2] == Real(9) / 8);
  CHECK(r[3] == Real(-27) / 16);

  TruncSeries cube = int_pow(a, 3);
  CHECK(cube[0] == 1);
  CHECK(cube[1] == 3);
  CHECK(cube[2] == 3);
  CHECK(cube[3] == 1);
  CHECK(cube[4] == 0);
}

TEST_CASE("series errors") {
  PrecisionScope scope(PrecisionContext{40, 50});
  TruncSeries a(3), b(4);
  CHECK_THROWS_AS(a + b, Error);
  try {
    (void)recip(a);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroLeadingCoefficient);
  }
  TruncSeries neg = TruncSeries::constant(3, Real(-1));
  try {
    (void)sqrt(neg);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRadicand);
  }
  CHECK_THROWS(ts_arith(ArithKind::add, a));
}

TEST_CASE("elementary series") {
  PrecisionContext ctx{40, 50};
  PrecisionScope scope(ctx);
  auto [s, c] = sin_cos(TruncSeries::variable(5, Real(0)));
  CHECK(s[1] == 1);
  CHECK(s[2] == 0);
  CHECK(abs(s[3] + Real(1) / 6) < pow10(-85));
  CHECK(abs(s[5] - Real(1) / 120) < pow10(-85));
  CHECK(c[0] == 1);
  CHECK(abs(c[2] + Real(1) / 2) < pow10(-85));
  CHECK(abs(c[4] - Real(1) / 24) < pow10(-85));

  TruncSeries e = exp(TruncSeries(6));
  CHECK(e[0] == 1);
  for (int k = 1; k <= 6; ++k) CHECK(e[k] == 0);

  TruncSeries a(8);
  a[0] = Real("0.3");
  a[1] = Real("0.7");
  auto [sa, ca] = ts_elem(ElemKind::sin_cos, a);
  Real at = Real("0.01");
  // truncation after s^8 leaves about 1e-25 at s = 0.01
  CHECK(abs(ts_eval(sa, at) - sin(Real("0.307"))) < pow10(-24));
  CHECK(abs(ts_eval(ca, at) - cos(Real("0.307"))) < pow10(-24));

  TruncSeries q = sqrt(TruncSeries::variable(10, Real(4)));
  TruncSeries qq = q * q;
  CHECK(abs(qq[0] - 4) < bar(ctx));
  CHECK(abs(qq[1] - 1) < bar(ctx));
  for (int k = 2; k <= 10; ++k) CHECK(abs(qq[k]) < bar(ctx));
}

TEST_CASE("Horner evaluation") {
  PrecisionScope scope(PrecisionContext{40, 50});
  TruncSeries a(2);
  a[0] = 1;
  a[1] = 2;
  a[2] = 3;
  CHECK(ts_eval(a, Real(0)) == 1);
  TruncSeries z(7);
  CHECK(ts_eval(z, Real("0.37")) == 0);
  TruncSeries e(20);
  Real f = 1;
  for (int k = 0; k <= 20; ++k) {
    e[k] = (k % 2 ? -1 : 1) / f;
    f *= k + 1;
  }
  CHECK(abs(ts_eval(e, Real("0.5")) - exp(Real("-0.5"))) < pow10(-20));
}

TEST_CASE("ring axioms and Pythagorean identity on random series") {
  PrecisionContext ctx{60, 50};
  PrecisionScope scope(ctx);
  const int n = 25;
  TruncSeries a(n), b(n), c(n);
  for (int k = 0; k <= n; ++k) {
    a[k] = Real(1) / (k + 2);
    b[k] = Real(k % 3 - 1) / (k + 5);
    c[k] = sin(Real(k));
  }
  TruncSeries l = (a * b) * c, r = a * (b * c);
  for (int k = 0; k <= n; ++k) CHECK(abs(l[k] - r[k]) < bar(ctx));
  auto [s, co] = sin_cos(a);
  TruncSeries one = s * s + co * co;
  CHECK(abs(one[0] - 1) < bar(ctx));
  for (int k = 1; k <= n; ++k) CHECK(abs(one[k]) < bar(ctx));
  // defining ODE S' = C A'
  TruncSeries lhs = derivative(s), rhs = co * derivative(a);
  for (int k = 0; k < n; ++k) CHECK(abs(lhs[k] - rhs[k]) < bar(ctx));
}

TEST_CASE("decimal serialization round-trips and is deterministic") {
  PrecisionContext ctx{50, 50};
  PrecisionScope scope(ctx);
  Real x = exp(Real(1)) / 7;
  std::string s1 = x.str();
  Real y(s1);
  CHECK(y == x);
  CHECK(s1 == y.str());
  CHECK(Real("-1.25e-3").str(10) == "-1.25e-3");
  CHECK_THROWS_AS(Real("1.2.3"), Error);
}

TEST_CASE("precision scope is per thread") {
  PrecisionScope scope(PrecisionContext{200, 50});
  mpfr_prec_t here = working_bits();
  mpfr_prec_t there = 0;
  std::thread t([&] { there = working_bits(); });
  t.join();
  CHECK(here != there);
  CHECK(Real(1).precision() == here);
}
