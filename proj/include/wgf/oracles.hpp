#pragma once

#include <vector>

#include "wgf/internal_energy.hpp"
#include "wgf/particle_state.hpp"
#include "wgf/subgradient.hpp"

namespace wgf {

// Independent brute-force checks used by tests and the oracle command.
// These deliberately avoid the production code paths they validate.

// Central-difference gradient of the discrete energy in subgradient units,
// z_i = N dE/dx_i; step = rel_step * min interior gap.
std::vector<double> fd_gradient_z(const ParticleState& state,
                                  const InternalEnergy& energy,
                                  double rel_step = 1e-6);

// Per-coordinate minimiser of |z_i| over the admissible multiplier set of
// the subdifferential parametrisation: 5-point grids on free multipliers,
// refined coordinate-wise by golden-section search.
Subgradient lambda_vertex_minimal(const ParticleState& state,
                                  const InternalEnergy& energy,
                                  double tie_tol = kDefaultTieTol);

// All per-coordinate vertex candidates: for each particle, the values of
// z_i at every {0,1} assignment of its free multipliers (the table's value
// must have magnitude no larger than any of them).
std::vector<std::vector<double>> lambda_vertex_candidates(const ParticleState& state,
                                                          const InternalEnergy& energy,
                                                          double tie_tol = kDefaultTieTol);

// Exhaustive assignment d2 for equal-N atomic measures (N <= 8): minimum of
// the mean squared displacement over all couplings by permutation.
double d2_permutation_oracle(const ParticleState& a, const ParticleState& b);

}  // namespace wgf
