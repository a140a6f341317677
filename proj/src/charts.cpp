#include "l1split/charts.hpp"

#include "l1split/errors.hpp"

namespace l1split {

namespace {

thread_local long t_clamps = 0;

void require(const State& z, Chart c, const char* what) {
  if (z.chart != c) throw Error(ErrorKind::ChartMismatch, std::string(what) + " expects chart " + chart_name(c));
}

// Orbit quantities shared by the Delaunay and resonant maps.
struct Kepler {
  Real r, rp, energy, a, L, G, e1, e2, e, ecosE, esinE;
};

Kepler kepler_of(const State& z) {
  const Real &x = z.z[0], &y = z.z[1], &px = z.z[2], &py = z.z[3];
  Kepler k;
  k.r = hypot(x, y);
  if (k.r.is_zero()) throw Error(ErrorKind::CollisionPoint, "r = 0");
  Real p2 = px * px + py * py;
  k.energy = p2 / 2 - 1 / k.r;
  if (k.energy.sign() >= 0) throw Error(ErrorKind::HyperbolicState, "two-body energy " + k.energy.str(6));
  k.a = -1 / (2 * k.energy);
  k.L = sqrt(k.a);
  k.G = x * py - y * px;
  k.rp = x * px + y * py;
  Real c = p2 - 1 / k.r;
  k.e1 = c * x - k.rp * px;
  k.e2 = c * y - k.rp * py;
  k.e = hypot(k.e1, k.e2);
  if (k.e > 1 - Real("1e-10")) throw Error(ErrorKind::NearParabolic, "eccentricity " + k.e.str(12));
  k.ecosE = 1 - k.r / k.a;
  k.esinE = k.rp / k.L;
  return k;
}

}  // namespace

long circular_clamp_count() { return t_clamps; }
void reset_circular_clamp_count() { t_clamps = 0; }

Real reduce_angle(const Real& a) {
  Real tp = 2 * pi();
  Real r = a - tp * floor(a / tp);
  if (r >= tp) r -= tp;
  if (r.sign() < 0) r = Real(0);
  return r;
}

State lc_to_synodic(const State& s) {
  require(s, Chart::levi_civita, "lc_to_synodic");
  const Real &u = s.z[0], &v = s.z[1], &U = s.z[2], &V = s.z[3];
  Real r = u * u + v * v;
  if (r.is_zero()) throw Error(ErrorKind::CollisionPoint, "u = v = 0");
  Real x = u * u - v * v, y = 2 * u * v;
  // xdot + i ydot = z z' / (2 |z|^2)
  Real xd = (u * U - v * V) / (2 * r);
  Real yd = (u * V + v * U) / (2 * r);
  return {Chart::synodic, {x, y, xd - y, yd + x}};
}

State synodic_to_lc(const State& s, int branch) {
  require(s, Chart::synodic, "synodic_to_lc");
  if (branch != 1 && branch != -1) throw Error(ErrorKind::ConfigInvalid, "branch must be +1 or -1");
  const Real &x = s.z[0], &y = s.z[1];
  Real r = hypot(x, y);
  if (r.is_zero()) throw Error(ErrorKind::CollisionPoint, "r = 0");
  Real u, v;
  if (x.sign() >= 0) {
    u = branch * sqrt((r + x) / 2);
    v = y / (2 * u);
  } else {
    // r + x cancels for x < 0; take v from r - x instead
    int sy = y.sign() < 0 ? -1 : 1;
    v = sy * branch * sqrt((r - x) / 2);
    u = y / (2 * v);
  }
  Real xd = s.z[2] + y, yd = s.z[3] - x;
  // z' = 2 conj(z) (xdot + i ydot)
  Real U = 2 * (u * xd + v * yd);
  Real V = 2 * (u * yd - v * xd);
  return {Chart::levi_civita, {u, v, U, V}};
}

State synodic_to_delaunay(const State& s) {
  require(s, Chart::synodic, "synodic_to_delaunay");
  Kepler k = kepler_of(s);
  Real g, l;
  if (k.e < pow10(-(current_context().digits / 2))) {
    ++t_clamps;
    g = Real(0);
    l = atan2(s.z[1], s.z[0]);
    if (k.G.sign() < 0) l = -l;
  } else {
    g = atan2(k.e2, k.e1);
    Real E = atan2(k.esinE, k.ecosE);
    l = E - k.esinE;
  }
  return {Chart::delaunay, {l, g, k.L, k.G}};
}

State delaunay_to_synodic(const State& s) {
  require(s, Chart::delaunay, "delaunay_to_synodic");
  const Real &l = s.z[0], &g = s.z[1], &L = s.z[2], &G = s.z[3];
  if (L.sign() <= 0) throw Error(ErrorKind::DomainError, "L must be positive");
  Real rad = 1 - (G * G) / (L * L);
  if (rad.sign() < 0) {
    if (rad < -pow10(-(current_context().working_digits() - current_context().guard)))
      throw Error(ErrorKind::NegativeAction, "|G| > L");
    rad = Real(0);
  }
  Real e = sqrt(rad);
  if (e > 1 - Real("1e-10")) throw Error(ErrorKind::NearParabolic, "eccentricity " + e.str(12));
  // Kepler's equation by Newton from E = l + e sin l
  Real E = l + e * sin(l);
  const Real tiny = pow10(-working_digits10());
  for (int it = 0; it < 200; ++it) {
    Real sE, cE;
    sin_cos(E, sE, cE);
    Real d = (E - e * sE - l) / (1 - e * cE);
    E -= d;
    if (abs(d) <= tiny * (1 + abs(E))) break;
  }
  Real sE, cE;
  sin_cos(E, sE, cE);
  Real a = L * L;
  Real b = G / L;  // signed sqrt(1 - e^2)
  Real n = 1 / (a * L);
  Real den = 1 - e * cE;
  Real xp = a * (cE - e), yp = a * b * sE;
  Real vxp = -a * n * sE / den, vyp = a * n * b * cE / den;
  Real sg, cg;
  sin_cos(g, sg, cg);
  Real x = cg * xp - sg * yp, y = sg * xp + cg * yp;
  Real px = cg * vxp - sg * vyp, py = sg * vxp + cg * vyp;
  return {Chart::synodic, {x, y, px, py}};
}

State delaunay_to_resonant(const State& s, const Real& eps) {
  require(s, Chart::delaunay, "delaunay_to_resonant");
  const Real &l = s.z[0], &g = s.z[1], &L = s.z[2], &G = s.z[3];
  Real e2 = eps * eps;
  Real dLG = L - G;
  if (dLG.sign() < 0) {
    if (dLG < -pow10(-(current_context().working_digits() - current_context().guard)))
      throw Error(ErrorKind::NegativeAction, "L < G");
    dLG = Real(0);
  }
  Real I = dLG / e2;
  Real rho = sqrt(2 * I);
  Real sg, cg;
  sin_cos(g, sg, cg);
  // phi = -g: q = rho cos(phi), p = -rho sin(phi)
  return {Chart::resonant_qp, {reduce_angle(l + g - pi()), (L - 1) / e2, rho * cg, rho * sg}};
}

State resonant_to_delaunay(const State& s, const Real& eps) {
  require(s, Chart::resonant_qp, "resonant_to_delaunay");
  const Real &x = s.z[0], &y = s.z[1], &q = s.z[2], &p = s.z[3];
  Real e2 = eps * eps;
  Real L = 1 + e2 * y;
  Real I = (q * q + p * p) / 2;
  Real G = L - e2 * I;
  Real g = (q.is_zero() && p.is_zero()) ? Real(0) : atan2(p, q);
  return {Chart::delaunay, {x + pi() - g, g, L, G}};
}

State synodic_to_resonant(const State& s, const Real& eps) {
  require(s, Chart::synodic, "synodic_to_resonant");
  Kepler k = kepler_of(s);
  if (k.G.sign() <= 0) return delaunay_to_resonant(synodic_to_delaunay(s), eps);
  // sqrt(2 (L - G)) = sqrt2 e L / sqrt(L + G), and (e1, e2) = e (cos g, sin g)
  Real f = sqrt(Real(2)) * k.L / (eps * sqrt(k.L + k.G));
  // l + g = theta - (f - E) - e sin E with f - E = 2 atan2(beta sin E, 1 - beta cos E)
  Real s1 = 1 + sqrt((1 - k.e) * (1 + k.e));
  Real bs = k.esinE / s1, bc = k.ecosE / s1;
  Real theta = atan2(s.z[1], s.z[0]);
  Real lg = theta - 2 * atan2(bs, 1 - bc) - k.esinE;
  return {Chart::resonant_qp, {reduce_angle(lg - pi()), (k.L - 1) / (eps * eps), f * k.e1, f * k.e2}};
}

}  // namespace l1split
