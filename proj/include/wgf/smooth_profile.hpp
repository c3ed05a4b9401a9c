#pragma once

#include <functional>
#include <string>

#include "wgf/domain.hpp"
#include "wgf/internal_energy.hpp"
#include "wgf/particle_state.hpp"
#include "wgf/piecewise_density.hpp"

namespace wgf {

// C^1 probability density bounded away from zero on a compact support
// [lo, hi], with derivative and CDF evaluators. The structural requirements
// (unit mass, positive minimum) are validated at construction.
class SmoothProfile {
  public:
    SmoothProfile(std::function<double(double)> rho, std::function<double(double)> drho,
                  std::function<double(double)> cdf, double lo, double hi,
                  std::string name = "profile");

    // Builds the CDF by cached cumulative quadrature of rho.
    static SmoothProfile with_numeric_cdf(std::function<double(double)> rho,
                                          std::function<double(double)> drho,
                                          double lo, double hi,
                                          std::string name = "profile");

    static SmoothProfile uniform(double halfwidth);
    // rho(x) = (2 + x)/4 on [-1, 1].
    static SmoothProfile linear_ramp();
    // rho(x) = 1/(2 l) + a cos(pi (x + l)/l) on [-l, l] (the n = 2 Neumann
    // mode); requires |a| < 1/(2 l).
    static SmoothProfile cosine(double halfwidth, double amplitude);

    double operator()(double x) const { return rho_(x); }
    double derivative(double x) const { return drho_(x); }
    double cdf(double x) const { return cdf_(x); }

    double support_left() const { return lo_; }
    double support_right() const { return hi_; }
    double min_density() const { return min_density_; }
    double max_density() const { return max_density_; }
    const std::string& name() const { return name_; }

    // Inverse CDF by bisection (the profile CDF is strictly increasing).
    double quantile(double eta) const;

    double mass(double abs_tol = 1e-10) const;
    double second_moment(double abs_tol = 1e-10) const;
    double energy(const InternalEnergy& energy, double abs_tol = 1e-10) const;
    // Fisher information integral rho'^2 H''(rho)^2 rho over the support.
    double fisher(const InternalEnergy& energy, double abs_tol = 1e-9) const;

  private:
    std::function<double(double)> rho_, drho_, cdf_;
    double lo_, hi_;
    double min_density_ = 0.0, max_density_ = 0.0;
    std::string name_;
};

// Quantile-sampled particles: x_1 = Phi(0), x_i = Phi(i/N) for i = 2..N.
// On an interval domain the profile support must coincide with the domain
// and the end particles land exactly on the boundary.
ParticleState well_prepared(const SmoothProfile& profile, int n, const Domain& domain);

// Gaussian mollification restricted to S(Omega) and the ball of radius
// 1/delta, then renormalised: S is the input support on the whole line and
// [-l, l] on an interval. The result satisfies the smooth-profile
// requirements for every delta > 0.
SmoothProfile mollify(const PiecewiseDensity& source, double delta, const Domain& domain);

}  // namespace wgf
