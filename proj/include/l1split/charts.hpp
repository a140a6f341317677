#pragma once

#include "l1split/models.hpp"

namespace l1split {

// Levi-Civita (u, v, u', v') with x + iy = (u + iv)^2 and dt = 4 (u^2 + v^2) dtau.
State lc_to_synodic(const State& z);
// branch selects the sign of u.
State synodic_to_lc(const State& z, int branch = 1);

// Delaunay (l, g, L, G) of the instantaneous Kepler orbit, angles in the rotating frame.
// Nearly circular orbits get g = 0 and l = polar angle; see circular_clamp_count().
State synodic_to_delaunay(const State& z);
State delaunay_to_synodic(const State& z);

// Resonant Poincare variables (x, y, q, p) with x = l + g - pi in [0, 2 pi).
State delaunay_to_resonant(const State& z, const Real& eps);
State resonant_to_delaunay(const State& z, const Real& eps);
// Direct synodic -> resonant map through the eccentricity vector; stays well
// conditioned as e -> 0 where separate angles do not.
State synodic_to_resonant(const State& z, const Real& eps);

// Number of states (this thread) that fell into the circular convention in synodic_to_delaunay.
long circular_clamp_count();
void reset_circular_clamp_count();

// Reduces an angle into [0, 2 pi).
Real reduce_angle(const Real& a);

}  // namespace l1split
