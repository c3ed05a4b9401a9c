#pragma once

#include "wgf/internal_energy.hpp"
#include "wgf/particle_state.hpp"
#include "wgf/piecewise_density.hpp"

namespace wgf {

// Normalising constant of the heat interpolant:
// m_N = (1/3N) sum_{i=1}^{N-1} (1 + sqrt(dx_{i+1}/dx_i) + dx_{i+1}/dx_i).
double heat_interpolant_normalizer(const ParticleState& state);

// Quadratic-in-x interpolant between particles: on [x_i, x_{i+1}]
//   rho(x) = (1/m_N) (1/(N dx_{i+1}^2))
//            ((x - x_i)/sqrt(dx_{i+1}) + (x_{i+1} - x)/sqrt(dx_i))^2 .
// Node values satisfy m_N rho(x_i) = 1/(N dx_i).
PiecewiseDensity interpolant_heat(const ParticleState& state);

// General interpolant rho(x) = (1/m_N) / psi^{-1}(p_i(x)) with p_i linear
// between psi_i/N and psi_{i+1}/N on [x_i, x_{i+1}]; m_N by quadrature.
PiecewiseDensity interpolant_general(const ParticleState& state,
                                     const InternalEnergy& energy);

// Generalised Fisher information of a piecewise-C1 density:
// integral of rho'^2 H''(rho)^2 rho over the support.
double fisher(const PiecewiseDensity& density, const InternalEnergy& energy,
              double abs_tol = 1e-9);

}  // namespace wgf
