#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wgf/discrete_energy.hpp"
#include "wgf/internal_energy.hpp"
#include "wgf/particle_state.hpp"

namespace wgf {

// Neighbour comparison labels. For j in 1..N, label j answers "which of the
// gaps around particle j is smaller": R means the right gap is strictly
// smaller (dx_j > dx_{j+1}), L the left one, E a tie within the relative
// band tie_tol. Labels 0 and N+1 are fixed to L and R by convention.
enum class Side : int { L = 0, E = 1, R = 2 };

struct NeighborLabels {
    std::vector<Side> a;  // size N+2; a[0] = L, a[N+1] = R
};

constexpr double kDefaultTieTol = 1e-9;

NeighborLabels classify(const ParticleState& state, double tie_tol = kDefaultTieTol);

// Per-gap pressures psi_i = N psi(N dx_i) for i = 1..N+1 (returned 0-based,
// entry j corresponds to dx_{j+1}). Infinite gaps give 0; custom energies
// whose psi does not vanish at infinity are rejected in that case.
std::vector<double> psi_values(const ParticleState& state, const InternalEnergy& energy);

struct Subgradient {
    std::vector<double> z;
    double norm_w = 0.0;  // sqrt((1/N) sum z_i^2)
};

// Coefficient pair (c_next, c_self) per label triple, giving
// z_i = c_next * psi_{i+1} - c_self * psi_i. Triples with middle label E map
// to (0,0). Stored as data so it can be inspected (and corrupted by the
// oracle's negative control).
struct CaseTable {
    std::array<std::pair<double, double>, 27> coef;

    static int index(Side left, Side mid, Side right) {
        return (static_cast<int>(left) * 3 + static_cast<int>(mid)) * 3 +
               static_cast<int>(right);
    }
};

const CaseTable& case_table();

// Minimal-norm element of the weighted subdifferential, via the case table.
Subgradient minimal_norm(const ParticleState& state, const InternalEnergy& energy,
                         double tie_tol = kDefaultTieTol);

// As minimal_norm but with a caller-supplied table (oracle negative control).
Subgradient minimal_norm_with_table(const ParticleState& state,
                                    const InternalEnergy& energy, double tie_tol,
                                    const CaseTable& table);

double local_slope(const ParticleState& state, const InternalEnergy& energy,
                   double tie_tol = kDefaultTieTol);

// Per-coordinate range [z_min, z_max] of the subdifferential over admissible
// multiplier choices; collapses to a point at tie-free coordinates.
std::vector<std::pair<double, double>> subgradient_box(const ParticleState& state,
                                                       const InternalEnergy& energy,
                                                       double tie_tol = kDefaultTieTol);

// Minimal-norm element of shift + dE over admissible branch multipliers,
// with the multipliers shared between neighbouring coordinates (the
// box-constrained quadratic program that realises sliding on tie manifolds).
// Pinned boundary particles contribute zero components and fix their mirror
// multiplier. An empty shift means zero shift.
std::vector<double> shifted_minimal_selection(const ParticleState& state,
                                              const InternalEnergy& energy,
                                              double tie_tol, bool pinned_left,
                                              bool pinned_right,
                                              const std::vector<double>& shift);

// Velocity selection used by the time integrator. At tie-free states this is
// exactly the case-table element; at ties the shared-multiplier program
// yields the sliding-mode velocity, which keeps tied gaps moving together
// and makes the recorded slope consistent with the energy dissipation.
Subgradient sliding_selection(const ParticleState& state, const InternalEnergy& energy,
                              double tie_tol, bool pinned_left, bool pinned_right);

}  // namespace wgf
