#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "wgf/errors.hpp"

namespace wgf {

// Density of internal energy H together with the derived functions used by
// the discrete solver:
//
//   h(x)   = x * H(1/x)        (convex, non-increasing on (0,inf))
//   psi(x) = -h'(x)            (non-negative, strictly decreasing)
//
// For the heat equation H(x) = x log x, so h(x) = -log x and psi(x) = 1/x.
// For H(x) = x^m/(m-1) with m > 1 (porous medium), psi(x) = x^-m.
//
// Custom energies supply H, H', H'' evaluators; h, h', psi and psi' are
// derived by the chain rule rather than finite differences. Construction
// runs sampled spot checks of the structural hypotheses and throws
// hypothesis_error on failure.
class InternalEnergy {
  public:
    enum class Kind { Heat, PowerLaw, Custom };

    static InternalEnergy heat();
    static InternalEnergy power_law(double m);
    // psi_at_infinity is the declared limit of psi(x) as x -> inf (default 0,
    // validated by sampling). Whole-line runs require it to be 0.
    static InternalEnergy custom(std::function<double(double)> H,
                                 std::function<double(double)> dH,
                                 std::function<double(double)> d2H,
                                 double psi_at_infinity = 0.0,
                                 std::string label = "custom");

    Kind kind() const { return kind_; }
    double exponent() const { return m_; }  // PowerLaw only
    const std::string& label() const { return label_; }

    double H(double x) const;
    double dH(double x) const;
    double d2H(double x) const;

    // h(x) = x H(1/x); requires x > 0.
    double h(double x) const;
    // h'(x) = H(1/x) - (1/x) H'(1/x); requires x > 0.
    double dh(double x) const;
    // psi(x) = -h'(x) >= 0; requires x > 0.
    double psi(double x) const;
    // psi'(x) = -h''(x) = -H''(1/x)/x^3; requires x > 0.
    double dpsi(double x) const;

    // Inverse of the strictly decreasing psi. Closed form for Heat/PowerLaw
    // (bracket ignored); bisection to relative tolerance 1e-12 for Custom,
    // which requires a bracket [a,b] with psi(a) >= y >= psi(b).
    double psi_inverse(double y,
                       std::optional<std::pair<double, double>> bracket = std::nullopt) const;

    double psi_at_infinity() const { return psi_at_infinity_; }

  private:
    InternalEnergy() = default;
    void check_hypotheses() const;

    Kind kind_ = Kind::Heat;
    double m_ = 0.0;
    double psi_at_infinity_ = 0.0;
    std::string label_;
    std::function<double(double)> H_, dH_, d2H_;
};

}  // namespace wgf
