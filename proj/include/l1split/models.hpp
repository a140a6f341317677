#pragma once

#include <string>
#include <vector>

#include "l1split/jet.hpp"
#include "l1split/linalg.hpp"
#include "l1split/real.hpp"

namespace l1split {

enum class Family { CPSynodic, CPLeviCivita, ToyCP, Pendulum };
enum class Chart { synodic, levi_civita, delaunay, resonant_angle_action, resonant_qp, pendulum2d };

const char* family_name(Family f);
const char* chart_name(Chart c);

struct State {
  Chart chart = Chart::synodic;
  std::vector<Real> z;
};

// Immutable description of one member of a model family. Use the factories;
// they enforce eps = (K/3)^(1/4) and omega = -1/(3 eps^2).
struct Model {
  Family family = Family::Pendulum;
  Real K;
  Real eps;
  Real omega;
  Real a;
  Real m;
  Real C;  // Jacobi constant, Levi-Civita family only
  int dim = 2;

  static Model cp_synodic(const Real& K);
  static Model cp_levi_civita(const Real& K, const Real& C);
  static Model toy(const Real& K, const Real& a, const Real& m);
  static Model toy_from_eps(const Real& eps, const Real& a, const Real& m);
  // x' = y - 2 a eps^2 y^2, y' = sin x
  static Model pendulum(const Real& a, const Real& eps);

  Chart chart() const;
  std::string describe() const;
};

// Field as an elementary-operation DAG. Built under the caller's precision.
JetProgram field_program(const Model& model);

State eval_field(const Model& model, const State& z);
// H for Hamiltonian charts, the Levi-Civita integral residual for that chart.
Real first_integral(const Model& model, const State& z);
// C = 2 Omega - (xdot^2 + ydot^2) on the synodic chart.
Real jacobi_constant(const Model& model, const State& z);

// Reversing symmetry of the model, applied together with t -> -t.
State reversibility_map(const Model& model, const State& z);

enum class EquilibriumLabel { L1, L2, Lminus, Lplus, pendulum_origin };
const char* label_name(EquilibriumLabel l);

struct Equilibrium {
  State location;
  Real energy;
  std::vector<ComplexPair> eigenvalues;
  Real lambda;            // real positive eigenvalue (0 if none)
  std::vector<Real> v;    // unit unstable eigenvector
  EquilibriumLabel label = EquilibriumLabel::pendulum_origin;
};

struct Linearization {
  Matrix jacobian;
  std::vector<ComplexPair> eigenvalues;
  Real lambda;
  std::vector<Real> v_unstable;
  std::vector<Real> v_stable;
};

std::vector<Equilibrium> equilibria(const Model& model);
Linearization linearize(const Model& model, const Equilibrium& eq);
// L1 of the CP problem, returned in the model's own chart.
Equilibrium cp_l1(const Model& model);

struct HillResult {
  bool allowed = false;
  Real Omega;
};
HillResult hill_membership(const Model& model, const Real& x, const Real& y, const Real& C);

// eps^m as exp(m ln eps).
Real eps_power(const Real& eps, const Real& m);

}  // namespace l1split
