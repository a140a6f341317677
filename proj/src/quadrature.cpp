#include "l1split/quadrature.hpp"

#include <map>
#include <utility>

#include "l1split/errors.hpp"

namespace l1split {

const GaussRule& gauss_legendre(int n) {
  thread_local std::map<std::pair<long, int>, GaussRule> cache;
  auto key = std::make_pair(static_cast<long>(working_bits()), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const Real tiny = ldexp(Real(1), -static_cast<long>(working_bits()) + 4);
  const Real p = pi();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = cos(p * (4 * i + 3) / (4 * n + 2));
    Real dp;
    for (int it = 0; it < 100; ++it) {
      // three-term recurrence for P_n and its derivative
      Real p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= tiny) break;
    }
    Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[static_cast<size_t>(i)] = x;
    rule.weights[static_cast<size_t>(i)] = w;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = -x;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

namespace {

Real apply_rule(const GaussRule& r, const std::function<Real(const Real&)>& f, const Real& a, const Real& b) {
  Real half = (b - a) / 2, mid = (a + b) / 2;
  Real s(0);
  for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

void adapt(const GaussRule& r, const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
           const Real& whole, const Real& tol, int depth, QuadratureResult& out) {
  Real m = (a + b) / 2;
  Real left = apply_rule(r, f, a, m), right = apply_rule(r, f, m, b);
  Real both = left + right;
  Real err = abs(both - whole);
  if (err <= tol) {
    out.value += both;
    out.error_estimate += err;
    out.intervals += 2;
    return;
  }
  if (depth <= 0) throw Error(ErrorKind::IllConditioned, "adaptive quadrature did not converge");
  adapt(r, f, a, m, left, tol / 2, depth - 1, out);
  adapt(r, f, m, b, right, tol / 2, depth - 1, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                                    const Real& tol, int n, int max_depth) {
  const GaussRule& r = gauss_legendre(n);
  QuadratureResult out;
  out.value = Real(0);
  out.error_estimate = Real(0);
  adapt(r, f, a, b, apply_rule(r, f, a, b), tol, max_depth, out);
  return out;
}

LinearFit linreg(const std::vector<Real>& x, const std::vector<Real>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::DegenerateAbscissae, "need at least two points");
  const size_t n = x.size();
  Real mx(0), my(0);
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<long>(n);
  my /= static_cast<long>(n);
  Real sxx(0), sxy(0);
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx.is_zero()) throw Error(ErrorKind::DegenerateAbscissae, "all abscissae equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  Real ss(0);
  for (size_t i = 0; i < n; ++i) {
    Real r = y[i] - fit.slope * x[i] - fit.intercept;
    ss += r * r;
  }
  fit.rms = sqrt(ss / static_cast<long>(n));
  return fit;
}

}  // namespace l1split
