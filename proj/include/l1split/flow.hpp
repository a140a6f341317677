#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l1split/jet.hpp"
#include "l1split/models.hpp"

namespace l1split {

enum class SectionKind { synodic_y0, lc_v0, toy_xpi };

// g is a single coordinate minus a level; `direction` is the required sign of
// dg/dt at the crossing (0 accepts both).
struct SectionSpec {
  SectionKind kind = SectionKind::toy_xpi;
  int direction = 1;
  Real level;

  // y = 0 with x > 0
  static SectionSpec synodic_y0(int direction);
  // v = 0; crossings with u < 0 are reported through the (u,v) -> (-u,-v) duplicate
  static SectionSpec lc_v0(int direction);
  // x = side * pi (side = +1 external, -1 internal)
  static SectionSpec toy_xpi(int side, int direction);

  int coordinate() const;
  const char* name() const;
};

struct StepRecord {
  Real t0;
  Real h;
  std::vector<std::vector<Real>> poly;  // poly[i][k]: Taylor coefficient k of component i
};

struct Trajectory {
  State initial;
  State final_state;
  Real t_final;
  std::vector<StepRecord> steps;  // only when requested
  long n_steps = 0;
  int order = 0;
  Real max_integral_drift;
};

struct FlowOptions {
  bool keep_steps = false;
  Real max_step;             // 0 means unbounded
  Real collision_radius{Real("1e-2")};
  int order = 0;             // 0 selects the default policy
};

// One-step Taylor method on a jet program; the building block for all integrations.
class TaylorStepper {
 public:
  TaylorStepper(const JetProgram& program, const Real& tol, int order = 0);

  void set_state(const Real& t, const std::vector<Real>& z);
  // Builds the jet at the current state and returns the admissible |h|.
  Real prepare();
  // Evaluates the current jet at offset tau.
  std::vector<Real> eval(const Real& tau) const;
  Real eval_component(int i, const Real& tau) const;
  Real eval_component_derivative(int i, const Real& tau) const;
  void commit(const Real& h);
  StepRecord record(const Real& h) const;

  const Real& t() const { return t_; }
  const std::vector<Real>& z() const { return z_; }
  int order() const { return order_; }
  // Default order: ceil(-ln(tol)/2) clamped to [20, working digits].
  static int default_order(const Real& tol);

 private:
  const JetProgram* program_;
  Real tol_;
  int order_;
  JetEvaluator ev_;
  Real t_;
  std::vector<Real> z_;
};

// Integrates a model from z0 (at t = 0) to t_end (either sign).
Trajectory integrate(const Model& model, const State& z0, const Real& t_end, const Real& tol,
                     const FlowOptions& options = {});

struct SectionHit {
  State state;
  Real T;
  Real g_left;   // section function at the bracketing step endpoints
  Real g_right;
  Trajectory trajectory;
};

// First crossing of the section with the requested direction, refined by Newton on the
// step polynomial. Integrates forward (t_max > 0) or backward (t_max < 0).
SectionHit integrate_to_section(const Model& model, const State& z0, const SectionSpec& section,
                                const Real& tol, const Real& t_max, const FlowOptions& options = {});

// Same engine for an arbitrary program without first-integral monitoring.
std::vector<Real> integrate_program(const JetProgram& program, const std::vector<Real>& z0,
                                    const Real& t0, const Real& t_end, const Real& tol,
                                    const FlowOptions& options = {});

// CSV rows (t, coords...) at step endpoints.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace l1split
