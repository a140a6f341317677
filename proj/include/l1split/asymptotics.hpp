#pragma once

#include <string>
#include <vector>

#include "l1split/real.hpp"

namespace l1split {

// (ln|omega|, Y) with Y = ln(value) - c ln(eps) - omega pi / 2.
struct FitPoint {
  Real ln_omega;
  Real Y;
};

std::vector<FitPoint> reduce(const std::vector<Real>& values, const std::vector<Real>& eps,
                             const std::vector<Real>& omega, const Real& c);

struct LineFit {
  Real r;
  Real lnA;
};
// Least squares over at least three points.
LineFit fit_line(const std::vector<FitPoint>& points);

struct PairSlope {
  Real ln_omega;  // abscissa of the later point of the pair
  Real r;
  Real lnA;
};
// Requires strictly increasing abscissae.
std::vector<PairSlope> pairwise_slopes(const std::vector<FitPoint>& points);

// Z = value |omega|^(-r_guess) e^(-omega pi/2) / eps^c
Real normalize_Z(const Real& value, const Real& eps, const Real& omega, const Real& r_guess, const Real& c);

// columns[0] = Z; column t+1 removes the eps^{exponents[t]} term from consecutive rows.
struct Tableau {
  std::vector<std::vector<Real>> columns;
  Real A;  // last entry of the last column
};
Tableau extrapolate(const std::vector<Real>& eps, const std::vector<Real>& Z, const std::vector<int>& exponents);

// Spread (max - min) over the last `rows` entries of a column.
Real column_spread(const std::vector<Real>& column, size_t rows = 10);

// Replaces rounded K values of a geometric grid by the least-squares geometric sequence.
std::vector<Real> regularize_geometric(const std::vector<Real>& K);

struct FitResult {
  std::string kind;
  Real c;
  Real r_guess;
  LineFit line;
  std::vector<FitPoint> points;
  std::vector<PairSlope> pairs;
  Tableau tableau;
  Real A_extrapolated;
  Real sensitivity;  // change in A_extrapolated when r_guess moves by 1e-3
  size_t window = 0;
};

// Full fit over the last `window` samples, ordered by decreasing K (increasing |omega|).
FitResult fit_samples(const std::string& kind, const std::vector<Real>& values, const std::vector<Real>& eps,
                      const std::vector<Real>& omega, const Real& c, const Real& r_guess, int steps = 2,
                      size_t window = 50);

// Guessed exponents used for extrapolation.
Real r_guess_synodic();    // 29/18
Real r_guess_resonant();   // 19/9
Real r_guess_toy_plain();  // 3

// Published extrapolation table: K, eps, then (Z, step1, step2) for the synodic and resonant fits.
struct ExtrapolationTable {
  std::vector<Real> K;
  std::vector<Real> Z_dxdot, dxdot_step1, dxdot_step2;
  std::vector<Real> Z_dp, dp_step1, dp_step2;
};
ExtrapolationTable read_extrapolation_table(const std::string& path);

std::string fit_report(const FitResult& f);
std::string tableau_csv(const Tableau& t);

}  // namespace l1split
