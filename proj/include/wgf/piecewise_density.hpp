#pragma once

#include <functional>
#include <vector>

#include "wgf/errors.hpp"

namespace wgf {

// Probability density defined piecewise on disjoint intervals [a,b] with
// zero density in between and outside. Pieces are either exactly constant
// (blobs) or carry an evaluator plus, where available, an analytic
// derivative (interpolants). The density is zero outside all pieces.
class PiecewiseDensity {
  public:
    struct Piece {
        double a = 0.0;
        double b = 0.0;
        bool constant = false;
        double value = 0.0;                          // constant pieces
        std::function<double(double)> f;             // non-constant pieces
        std::function<double(double)> df;            // optional derivative
    };

    PiecewiseDensity(std::vector<Piece> pieces, double declared_mass);

    const std::vector<Piece>& pieces() const { return pieces_; }
    double declared_mass() const { return declared_mass_; }

    double operator()(double x) const;

    // Derivative where a piece supplies one; constant pieces yield 0.
    double derivative(double x) const;
    bool has_derivative() const;

    double support_left() const { return pieces_.front().a; }
    double support_right() const { return pieces_.back().b; }

    // Integral of the density (closed form on constant pieces, adaptive
    // quadrature otherwise). Should match declared_mass to ~1e-10.
    double mass(double abs_tol = 1e-10) const;

    double second_moment(double abs_tol = 1e-10) const;

    // CDF value at x (piecewise integration from the left support edge).
    double cdf(double x, double abs_tol = 1e-12) const;

  private:
    std::vector<Piece> pieces_;
    double declared_mass_;
};

}  // namespace wgf
