#include <cmath>

#include "l1split/errors.hpp"
#include "l1split/splitting.hpp"
#include "test_util.hpp"

using namespace l1split;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("precision policy") {
  CHECK(precision_policy(std::string("3e-4")).ctx.digits == 83);
  CHECK(precision_policy(std::string("1e-5")).ctx.digits == 186);
  CHECK(precision_policy(std::string("1e-5")).order == 224);
  CHECK(precision_policy(std::string("1e-3")).order == 100);
  CHECK(throws_kind(ErrorKind::BelowDeskFloor, [] { precision_policy(std::string("1e-8")); }));
  PolicyOptions o;
  o.override_floor = true;
  CHECK(precision_policy(std::string("1e-8"), o).ctx.digits > 4000);
  o.order_cap = 500;
  CHECK(precision_policy(std::string("1e-8"), o).order == 500);
  o.digits_override = 90;
  o.extra_digits = 30;
  CHECK(precision_policy(std::string("1e-4"), o).ctx.digits == 120);
}

TEST_CASE("K grid") {
  auto g = k_grid(1e-3, 1e-5, 12);
  REQUIRE(g.size() == 25);
  CHECK(g.front() == "1.00000000000000e-03");
  CHECK(g.back() == "1.00000000000000e-05");
  for (size_t i = 1; i < g.size(); ++i) CHECK(std::stod(g[i]) < std::stod(g[i - 1]));
  CHECK(g[12] == "1.00000000000000e-04");
}

TEST_CASE("CP splitting at K = 1e-4") {
  SplitOptions opt;
  opt.verify_stable = true;
  CPSplit r = cp_split("1e-4", opt);
  const SplitSample& s = r.synodic;
  PrecisionScope scope(PrecisionContext{s.digits, 20});
  Real tol = pow10(-s.digits);
  CHECK(s.value.sign() > 0);
  CHECK(s.digits == 100);
  CHECK(r.crossing_synodic.z[0].sign() > 0);
  CHECK(abs(r.crossing_synodic.z[1]) < 100 * tol);

  Real w = abs(s.omega);
  Real A = s.value * exp(-s.omega * pi() / 2) / (s.eps * pow(w, Real(29) / 18));
  INFO("A " << A.str(12));
  CHECK(abs(A / Real("16.055307843") - 1) < Real("0.1"));

  // reversibility: the explicit stable branch lands at the mirror image
  CHECK(abs(2 * r.stable_xdot + s.value) <= 1000 * tol);
  CHECK(r.max_drift <= 100 * tol);

  // resonant variables: |xdot| ~ eps |p| up to O(eps^2); the chart gives p of opposite sign
  const SplitSample& p = r.resonant;
  Real ratio = s.value / (s.eps * p.value);
  INFO("ratio " << ratio.str(12));
  CHECK(abs(ratio + 1) < 5 * s.eps * s.eps);
  Real delta_scale = s.eps * s.eps * pow(w, Real(19) / 9) * exp(s.omega * pi() / 2);
  CHECK(abs(p.x_offset) < 100 * delta_scale);
}

TEST_CASE("CP splitting reproduces with 30 more digits") {
  SplitSample a = cp_split_synodic("3e-4");
  SplitOptions o;
  o.policy.extra_digits = 30;
  SplitSample b = cp_split_synodic("3e-4", o);
  CHECK(b.digits == a.digits + 30);
  PrecisionScope scope(PrecisionContext{b.digits, 20});
  CHECK(abs(a.value - b.value) <= 100 * pow10(-a.digits));
}

TEST_CASE("toy splitting agrees with the Melnikov prediction for m = 4") {
  SplitOptions opt;
  opt.verify_stable = true;
  ToySplit t = toy_split_full("1e-5", 0, 4, opt);
  const SplitSample& s = t.sample;
  PrecisionScope scope(PrecisionContext{s.digits, 20});
  Real tol = pow10(-s.digits);
  Real pred = melnikov_prediction(s.eps, Real(4), 0, Branch::external, tol);
  Real ratio = s.value / pred;
  INFO("ratio " << ratio.str(15));
  CHECK(abs(ratio - 1) < Real("0.01"));
  CHECK(abs(2 * t.stable_p + s.value) <= 1000 * tol);
  CHECK(t.max_drift <= 100 * tol);
  CHECK(abs(t.crossing.z[0] - pi()) <= 100 * tol);
}

TEST_CASE("toy internal branch is far smaller than the external one") {
  SplitOptions in;
  in.branch = Branch::internal;
  SplitSample e = toy_split("1e-3", 0, 2);
  SplitSample i = toy_split("1e-3", 0, 2, in);
  PrecisionScope scope(PrecisionContext{e.digits, 20});
  Real ratio = abs(i.value / e.value);
  MESSAGE("internal/external " << ratio.str(6) << " exp(pi omega) " << exp(pi() * e.omega).str(6));
  CHECK(ratio < Real("1e-10"));
  CHECK(i.section == std::string(SectionSpec::toy_xpi(-1, -1).name()));
}

TEST_CASE("amended Melnikov sample") {
  SplitSample s = melnikov_sample("1e-3");
  PrecisionScope scope(PrecisionContext{s.digits, 20});
  CHECK(s.kind == SampleKind::z0_melnikov);
  CHECK(s.value.sign() > 0);
  Real Y = log(s.value) - s.omega * pi() / 2 - Real(19) / 9 * log(abs(s.omega));
  INFO("lnA " << Y.str(8));
  CHECK(abs(Y - Real("2.279")) < Real("0.5"));
}

TEST_CASE("sample kind names round trip") {
  for (SampleKind k : {SampleKind::dx_dot, SampleKind::dp_resonant, SampleKind::dp_toy, SampleKind::z0_melnikov})
    CHECK(parse_sample_kind(sample_kind_name(k)) == k);
  CHECK(throws_kind(ErrorKind::ConfigInvalid, [] { parse_sample_kind("nope"); }));
  CHECK(throws_kind(ErrorKind::ConfigInvalid, [] { toy_split("1e-4", 2, 1); }));
}
