#pragma once

#include <vector>

#include "wgf/internal_energy.hpp"
#include "wgf/smooth_profile.hpp"

namespace wgf {

// Exact solution of the heat equation on [-l, l] with no-flux boundaries:
//   rho(t,x) = 1/(2l) + sum_n a_n cos(n pi (x+l)/(2l)) exp(-(n pi / 2l)^2 t).
// Requires the initial density to stay strictly positive.
class HeatNeumannReference {
  public:
    struct Mode {
        int n = 0;
        double amplitude = 0.0;
    };

    HeatNeumannReference(double halfwidth, std::vector<Mode> modes);

    double halfwidth() const { return halfwidth_; }

    double density(double t, double x) const;
    double density_dx(double t, double x) const;
    double cdf(double t, double x) const;

    // Continuum energy integral H(rho(t, .)).
    double energy(double t, const InternalEnergy& energy) const;
    // Fisher information of rho(t, .).
    double fisher(double t, const InternalEnergy& energy) const;

    SmoothProfile profile_at(double t) const;

    // |d/dt rho - d2/dx2 rho| with a central time difference, analytic in x.
    double pde_residual(double t, double x, double dt_fd = 1e-6) const;

  private:
    double halfwidth_;
    std::vector<Mode> modes_;
};

// Self-similar source solution of the porous-medium equation rho_t =
// (rho^m)_xx on the whole line:
//   rho(t,x) = t^-alpha (C - k (x t^-alpha)^2)_+^{1/(m-1)},
// alpha = 1/(m+1), k = alpha (m-1)/(2m), C fixed by unit mass numerically.
class BarenblattReference {
  public:
    explicit BarenblattReference(double m);

    double exponent() const { return m_; }
    double mass_constant() const { return c_; }
    double alpha() const { return alpha_; }

    double density(double t, double x) const;
    double density_dx(double t, double x) const;
    double support_radius(double t) const;
    double mass(double t) const;
    double second_moment(double t) const;
    double energy(double t, const InternalEnergy& energy) const;
    double fisher(double t, const InternalEnergy& energy) const;

    // |d/dt rho - d2/dx2 (rho^m)| at an interior point, analytic in x,
    // central finite difference in t.
    double pde_residual(double t, double x, double dt_fd = 1e-6) const;

  private:
    double m_;
    double alpha_;
    double k_;
    double c_;
};

}  // namespace wgf
