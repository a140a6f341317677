#include "l1split/singularity.hpp"

#include "l1split/errors.hpp"
#include "l1split/quadrature.hpp"

namespace l1split {

Real section_cubic(const Real& y, const Real& eps) { return y * y / 2 - 2 * eps * eps * y * y * y / 3 - 2; }

CubicRoots cubic_roots(const Real& eps) {
  Real t = 4 * sqrt(Real(3)) * eps * eps;
  if (t > 1 || eps.sign() < 0) throw Error(ErrorKind::DomainError, "cubic roots need 0 <= 4 sqrt3 eps^2 <= 1");
  // arccos(t) = pi/2 - asin(t) keeps y1 accurate when its cosine is near zero
  Real a3 = asin(t) / 3;
  Real p6 = pi() / 6;
  Real s3 = sqrt(Real(3));
  CubicRoots r;
  r.y0 = s3 / cos(p6 + a3);
  r.y2 = -s3 / cos(p6 - a3);
  if (t.is_zero()) {
    r.y1_infinite = true;
    r.y1 = Real(0);
  } else {
    r.y1 = s3 / sin(a3);
  }
  return r;
}

SingularityResult s_star(const Real& eps, const Real& tol) {
  Real t = 4 * sqrt(Real(3)) * eps * eps;
  if (eps.sign() <= 0 || t >= 1) throw Error(ErrorKind::DomainError, "singularity needs 0 < 4 sqrt3 eps^2 < 1");
  CubicRoots r = cubic_roots(eps);
  const Real &y0 = r.y0, &y1 = r.y1, &y2 = r.y2;
  const Real c = 2 * eps * eps / 3;
  const Real Yc = 1 / (2 * c);
  const Real p = pi();
  const Real part_tol = tol / 4;

  // Y-route. R = c^2 (Yc - Y)(Y - y0)(y1 - Y)(Y - y2) Y^2; the square-root end
  // singularities are absorbed by Y = m - h cos(theta) and Y = Yc / cos^2(theta).
  auto chord = [](const Real& lo, const Real& hi, const Real& th) { return (lo + hi) / 2 - (hi - lo) / 2 * cos(th); };
  Real Ia = integrate_adaptive(
                [&](const Real& th) {
                  Real Y = chord(y0, y1, th);
                  return 1 / (c * Y * sqrt((Yc - Y) * (Y - y2)));
                },
                Real(0), p, part_tol)
                .value;
  Real Ib = integrate_adaptive(
                [&](const Real& th) {
                  Real Y = chord(y1, Yc, th);
                  return 1 / (c * Y * sqrt((Y - y0) * (Y - y2)));
                },
                Real(0), p, part_tol)
                .value;
  Real Ic = integrate_adaptive(
                [&](const Real& th) {
                  Real cs = cos(th);
                  Real c2 = cs * cs;
                  Real Y = Yc / c2;
                  return 2 * sqrt(Yc) / (c2 * c * Y * sqrt((Y - y0) * (Y - y1) * (Y - y2)));
                },
                Real(0), p / 2, part_tol)
                .value;

  // v-route, v = 2/Y: -s* = int v dv / sqrt(-(v - vc)(v - v0)(v - v1)(v - v2))
  const Real vc = 2 / Yc, v0 = 2 / y0, v1 = 2 / y1, v2 = 2 / y2;
  Real Ja = integrate_adaptive(
                [&](const Real& w) {
                  Real v = vc - w * w;
                  return 2 * v / sqrt((v0 - v) * (v1 - v) * (v - v2));
                },
                Real(0), sqrt(vc), part_tol)
                .value;
  Real Jb = integrate_adaptive(
                [&](const Real& th) {
                  Real v = chord(vc, v1, th);
                  return v / sqrt((v0 - v) * (v - v2));
                },
                Real(0), p, part_tol)
                .value;
  Real Jc = integrate_adaptive(
                [&](const Real& th) {
                  Real v = chord(v1, v0, th);
                  return v / sqrt((v - vc) * (v - v2));
                },
                Real(0), p, part_tol)
                .value;

  SingularityResult res;
  res.eps = eps;
  res.roots = r;
  // each branch point passed on the same side contributes a factor i, so the tail enters as -Ic
  res.neg_s_re = Ia - Ic;
  res.neg_s_im = -Ib;
  res.route_gap = hypot(Ia - Ic - (Jc - Ja), Ib - Jb);
  if (res.route_gap > 100 * tol) throw Error(ErrorKind::RouteMismatch, "routes differ by " + res.route_gap.str(6));
  res.delta = res.neg_s_re - p / 2;
  return res;
}

DeltaFit delta_fit_values(const std::vector<Real>& K_list, const std::vector<Real>& deltas) {
  DeltaFit f;
  f.K = K_list;
  f.delta = deltas;
  std::vector<Real> x, y;
  const Real rho_ref("2.051");
  for (size_t i = 0; i < K_list.size(); ++i) {
    if (deltas[i].sign() <= 0) throw Error(ErrorKind::NonpositiveValue, "delta must be positive for the log fit");
    Real base = K_list[i] * abs(log(K_list[i]));
    x.push_back(log(base));
    y.push_back(log(deltas[i]));
    f.normalized.push_back(deltas[i] / pow(base, rho_ref));
  }
  LinearFit lf = linreg(x, y);
  f.rho = lf.slope;
  f.A = exp(lf.intercept);
  return f;
}

DeltaFit delta_fit(const std::vector<Real>& K_list, const Real& tol) {
  std::vector<Real> d;
  for (const auto& K : K_list) d.push_back(s_star(sqrt(sqrt(K / 3)), tol).delta);
  return delta_fit_values(K_list, d);
}

}  // namespace l1split
