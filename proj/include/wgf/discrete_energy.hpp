#pragma once

#include "wgf/internal_energy.hpp"
#include "wgf/particle_state.hpp"
#include "wgf/piecewise_density.hpp"

namespace wgf {

// Discrete energy E_N = (1/N) sum_i h(N r_i) with r_i the ball diameters.
double discrete_energy(const ParticleState& state, const InternalEnergy& energy);

// Piecewise-constant blob reconstruction: mass 1/N spread uniformly over the
// ball of diameter r_i centred at x_i; balls are pairwise disjoint and the
// total mass is exactly 1.
PiecewiseDensity blob_density(const ParticleState& state);

// Continuum energy integral H(rho(x)) dx over the support. Exact per-piece
// closed form for constant pieces, adaptive quadrature otherwise. Satisfies
// continuum_energy(blob_density(s)) == discrete_energy(s) up to rounding.
double continuum_energy(const PiecewiseDensity& density, const InternalEnergy& energy,
                        double abs_tol = 1e-10);

// Second moment (1/N) sum x_i^2 of the atomic measure.
double second_moment(const ParticleState& state);

}  // namespace wgf
