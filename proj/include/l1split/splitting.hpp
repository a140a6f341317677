#pragma once

#include <string>
#include <vector>

#include "l1split/charts.hpp"
#include "l1split/manifold.hpp"
#include "l1split/melnikov.hpp"
#include "l1split/models.hpp"

namespace l1split {

enum class SampleKind { dx_dot, dp_resonant, dp_toy, z0_melnikov };

const char* sample_kind_name(SampleKind k);
SampleKind parse_sample_kind(const std::string& name);

struct SplitSample {
  SampleKind kind = SampleKind::dx_dot;
  std::string K_text;  // decimal K as requested; the resume key uses this text
  Real K;
  Real eps;
  Real omega;
  int a = 0;
  int m = 0;
  Real value;
  Real x_offset;       // x^u - pi for resonant samples, 0 otherwise
  int digits = 0;
  int order = 0;
  std::string section;
  Branch branch = Branch::external;
  Real T;
  Real s_hat;
  double wall_seconds = 0;
};

struct PolicyOptions {
  int order_cap = 2000;
  double desk_floor = 1e-6;
  bool override_floor = false;
  int digits_override = 0;  // replaces the computed digit count when > 0
  int extra_digits = 0;     // added on top, used by reproducibility checks
  int guard = 20;
};

struct PrecisionPolicy {
  PrecisionContext ctx;
  int order = 0;
};

// digits = ceil(0.69 |omega|) + 60, N = max(100, ceil(1.2 digits)) capped.
PrecisionPolicy precision_policy(const Real& K, const PolicyOptions& options = {});
PrecisionPolicy precision_policy(const std::string& K_text, const PolicyOptions& options = {});

struct SplitOptions {
  PolicyOptions policy;
  Branch branch = Branch::external;
  // Also integrate the mirrored stable branch and store xdot^s (CP) or p^s (toy).
  bool verify_stable = false;
};

// External unstable branch of L1 in the Levi-Civita chart at C = C(L1), domain validated
// at tol. Call under the job precision.
ManifoldExpansion cp_external_manifold(const Real& K, int order, const Real& tol);
// Unstable branch of L- of the toy model heading to x = +pi (external) or -pi (internal).
ManifoldExpansion toy_unstable_manifold(const Real& K, int a, int m, Branch branch, int order, const Real& tol);

struct CPSplit {
  SplitSample synodic;    // dx_dot
  SplitSample resonant;   // dp_resonant
  State crossing_lc;
  State crossing_synodic;
  State crossing_resonant;
  Real stable_xdot;       // only with verify_stable
  Real max_drift;
};

// One globalization of the external unstable branch of L1 yields both CP samples.
CPSplit cp_split(const std::string& K_text, const SplitOptions& options = {});
SplitSample cp_split_synodic(const std::string& K_text, const SplitOptions& options = {});
SplitSample cp_split_resonant(const std::string& K_text, const SplitOptions& options = {});

struct ToySplit {
  SplitSample sample;
  State crossing;
  Real stable_p;  // only with verify_stable
  Real max_drift;
};

ToySplit toy_split_full(const std::string& K_text, int a, int m, const SplitOptions& options = {});
SplitSample toy_split(const std::string& K_text, int a, int m, const SplitOptions& options = {});

// z(0) of the amended pendulum at omega = -1/sqrt(3K), sized by the same policy.
SplitSample melnikov_sample(const std::string& K_text, const SplitOptions& options = {});

// Geometric grid from K_max down to K_min (inclusive), per_decade points per decade,
// as decimal strings with 15 significant digits, strictly decreasing.
std::vector<std::string> k_grid(double K_max, double K_min, int per_decade);

}  // namespace l1split
