#pragma once

#include <functional>
#include <vector>

#include "wgf/flow.hpp"
#include "wgf/particle_state.hpp"

namespace wgf {

// Pseudo-inverse of a CDF: Phi(eta) = inf{ x : F(x) > eta } for eta in
// [0,1), Phi(1) = left limit. Non-decreasing and right-continuous.
class QuantileFunction {
  public:
    // Wraps a closed-form quantile evaluator.
    static QuantileFunction from_evaluator(std::function<double(double)> phi);

    // Step quantile of an atomic measure: value x_1 on [0, 1/N), x_i on
    // [(i-1)/N, i/N).
    static QuantileFunction from_atomic(const ParticleState& state);

    // Numeric inversion of a non-decreasing CDF on [lo, hi]: grid_size
    // bisection-refined nodes (>= 1024), monotone linear interpolation
    // between them.
    static QuantileFunction from_cdf(std::function<double(double)> cdf, double lo,
                                     double hi, int grid_size = 4096);

    double operator()(double eta) const;

  private:
    QuantileFunction() = default;
    std::function<double(double)> phi_;
};

// Quadratic Wasserstein distance between equal-N atomic measures: the sorted
// (monotone) coupling is optimal in 1D, giving |x - y|_w.
double d2_atomic_atomic(const ParticleState& a, const ParticleState& b);

// d2 between an atomic measure and a measure given by its quantile function:
// sqrt of the integral over [0,1] of (Gamma_N - Phi)^2, evaluated cell by
// cell with adaptive quadrature.
double d2_atomic_quantile(const ParticleState& a, const QuantileFunction& phi,
                          double abs_tol = 1e-10);

// d2 between two measures given by quantile functions.
double d2_quantile_quantile(const QuantileFunction& a, const QuantileFunction& b,
                            double abs_tol = 1e-10);

// Central-difference metric derivative d2(mu(t_{k-1}), mu(t_{k+1})) / (t_{k+1}
// - t_{k-1}) at interior samples; endpoints use one-sided differences only
// when requested by keeping them out (size = samples - 2).
std::vector<double> metric_derivative(const Trajectory& traj);

}  // namespace wgf
