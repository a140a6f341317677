#include "l1split/asymptotics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "l1split/errors.hpp"
#include "l1split/quadrature.hpp"

namespace l1split {

Real r_guess_synodic() { return Real(29) / 18; }
Real r_guess_resonant() { return Real(19) / 9; }
Real r_guess_toy_plain() { return Real(3); }

std::vector<FitPoint> reduce(const std::vector<Real>& values, const std::vector<Real>& eps,
                             const std::vector<Real>& omega, const Real& c) {
  if (values.size() != eps.size() || values.size() != omega.size())
    throw Error(ErrorKind::ConfigInvalid, "reduce: length mismatch");
  std::vector<FitPoint> pts;
  const Real hp = pi() / 2;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() <= 0) throw Error(ErrorKind::NonpositiveValue, "sample value " + values[i].str(6));
    pts.push_back({log(abs(omega[i])), log(values[i]) - c * log(eps[i]) - omega[i] * hp});
  }
  return pts;
}

LineFit fit_line(const std::vector<FitPoint>& points) {
  if (points.size() < 3) throw Error(ErrorKind::DegenerateAbscissae, "line fit needs at least three points");
  std::vector<Real> x, y;
  for (const auto& p : points) {
    x.push_back(p.ln_omega);
    y.push_back(p.Y);
  }
  LinearFit f = linreg(x, y);
  return {f.slope, f.intercept};
}

std::vector<PairSlope> pairwise_slopes(const std::vector<FitPoint>& points) {
  if (points.size() < 2) throw Error(ErrorKind::DegenerateAbscissae, "pairwise slopes need two points");
  std::vector<PairSlope> out;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const auto &a = points[i], &b = points[i + 1];
    Real dx = b.ln_omega - a.ln_omega;
    if (dx.sign() <= 0) throw Error(ErrorKind::DuplicateAbscissae, "abscissae must increase strictly");
    Real r = (b.Y - a.Y) / dx;
    out.push_back({b.ln_omega, r, b.Y - r * b.ln_omega});
  }
  return out;
}

Real normalize_Z(const Real& value, const Real& eps, const Real& omega, const Real& r_guess, const Real& c) {
  return value * exp(-r_guess * log(abs(omega)) - omega * pi() / 2 - c * log(eps));
}

Tableau extrapolate(const std::vector<Real>& eps, const std::vector<Real>& Z, const std::vector<int>& exponents) {
  if (eps.size() != Z.size()) throw Error(ErrorKind::ConfigInvalid, "extrapolate: length mismatch");
  if (Z.size() < exponents.size() + 1) throw Error(ErrorKind::ConfigInvalid, "extrapolate: too few rows");
  for (size_t i = 0; i + 1 < eps.size(); ++i)
    if (!(eps[i + 1] < eps[i])) throw Error(ErrorKind::ConfigInvalid, "extrapolate: eps must decrease strictly");
  const Real floor = pow10(-(current_context().digits / 2));
  Tableau t;
  t.columns.push_back(Z);
  for (int j : exponents) {
    const auto& prev = t.columns.back();
    std::vector<Real> next;
    for (size_t i = 0; i + 1 < prev.size(); ++i) {
      Real a = pow(eps[i], j), b = pow(eps[i + 1], j);
      Real den = b - a;
      if (abs(den) < floor) throw Error(ErrorKind::IllConditioned, "eps^j differences below precision floor");
      next.push_back((b * prev[i] - a * prev[i + 1]) / den);
    }
    t.columns.push_back(std::move(next));
  }
  t.A = t.columns.back().back();
  return t;
}

Real column_spread(const std::vector<Real>& column, size_t rows) {
  if (column.empty()) return Real(0);
  size_t start = column.size() > rows ? column.size() - rows : 0;
  Real lo = column[start], hi = column[start];
  for (size_t i = start; i < column.size(); ++i) {
    lo = min(lo, column[i]);
    hi = max(hi, column[i]);
  }
  return hi - lo;
}

std::vector<Real> regularize_geometric(const std::vector<Real>& K) {
  std::vector<Real> idx, lk;
  for (size_t i = 0; i < K.size(); ++i) {
    if (K[i].sign() <= 0) throw Error(ErrorKind::NonpositiveValue, "K must be positive");
    idx.emplace_back(static_cast<long>(i));
    lk.push_back(log(K[i]));
  }
  LinearFit f = linreg(idx, lk);
  std::vector<Real> out;
  for (size_t i = 0; i < K.size(); ++i) out.push_back(exp(f.intercept + f.slope * static_cast<long>(i)));
  return out;
}

FitResult fit_samples(const std::string& kind, const std::vector<Real>& values, const std::vector<Real>& eps,
                      const std::vector<Real>& omega, const Real& c, const Real& r_guess, int steps, size_t window) {
  size_t n = values.size();
  size_t start = n > window ? n - window : 0;
  std::vector<Real> v(values.begin() + static_cast<long>(start), values.end());
  std::vector<Real> e(eps.begin() + static_cast<long>(start), eps.end());
  std::vector<Real> w(omega.begin() + static_cast<long>(start), omega.end());
  FitResult f;
  f.kind = kind;
  f.c = c;
  f.r_guess = r_guess;
  f.window = v.size();
  f.points = reduce(v, e, w, c);
  f.line = fit_line(f.points);
  f.pairs = pairwise_slopes(f.points);
  std::vector<int> ex;
  for (int i = 1; i <= steps; ++i) ex.push_back(2 * i);
  auto tab_for = [&](const Real& rg) {
    std::vector<Real> Z;
    for (size_t i = 0; i < v.size(); ++i) Z.push_back(normalize_Z(v[i], e[i], w[i], rg, c));
    return extrapolate(e, Z, ex);
  };
  f.tableau = tab_for(r_guess);
  f.A_extrapolated = f.tableau.A;
  f.sensitivity = tab_for(r_guess + Real("1e-3")).A - f.A_extrapolated;
  return f;
}

ExtrapolationTable read_extrapolation_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot open " + path);
  ExtrapolationTable t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw Error(ErrorKind::ConfigInvalid, "bad table row: " + line);
    t.K.emplace_back(f[0]);
    t.Z_dxdot.emplace_back(f[2]);
    t.dxdot_step1.emplace_back(f[3]);
    t.dxdot_step2.emplace_back(f[4]);
    t.Z_dp.emplace_back(f[5]);
    t.dp_step1.emplace_back(f[6]);
    t.dp_step2.emplace_back(f[7]);
  }
  return t;
}

std::string fit_report(const FitResult& f) {
  std::ostringstream os;
  os << "kind " << f.kind << "\n";
  os << "samples " << f.window << "\n";
  os << "prefactor_exponent " << f.c.str(6) << "\n";
  os << "regression_r " << f.line.r.str(12) << "\n";
  os << "regression_lnA " << f.line.lnA.str(12) << "\n";
  if (!f.pairs.empty()) {
    os << "last_pair_r " << f.pairs.back().r.str(12) << "\n";
    os << "last_pair_lnA " << f.pairs.back().lnA.str(12) << "\n";
  }
  os << "r_guess " << f.r_guess.str(12) << "\n";
  os << "extrapolated_A " << f.A_extrapolated.str(15) << "\n";
  os << "extrapolated_lnA " << log(abs(f.A_extrapolated)).str(12) << "\n";
  os << "r_guess_sensitivity " << f.sensitivity.str(6) << "\n";
  for (size_t c = 0; c < f.tableau.columns.size(); ++c)
    os << "column_" << c << "_spread_last10 " << column_spread(f.tableau.columns[c]).str(6) << "\n";
  os << "pairs\n";
  for (const auto& p : f.pairs) os << p.ln_omega.str(12) << " " << p.r.str(12) << " " << p.lnA.str(12) << "\n";
  return os.str();
}

std::string tableau_csv(const Tableau& t) {
  std::ostringstream os;
  size_t rows = t.columns.empty() ? 0 : t.columns[0].size();
  for (size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << "step" << c;
  os << "\n";
  for (size_t i = 0; i < rows; ++i) {
    for (size_t c = 0; c < t.columns.size(); ++c) {
      if (c) os << ",";
      if (i < t.columns[c].size()) os << t.columns[c][i].str(20);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace l1split
