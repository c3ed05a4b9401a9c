#include "wgf/references.hpp"

#include <cmath>

#include "wgf/quadrature.hpp"

namespace wgf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

HeatNeumannReference::HeatNeumannReference(double halfwidth, std::vector<Mode> modes)
    : halfwidth_(halfwidth), modes_(std::move(modes)) {
    if (!(halfwidth_ > 0.0)) throw input_error("heat reference needs halfwidth > 0");
    for (const auto& m : modes_)
        if (m.n <= 0) throw input_error("heat reference mode index must be positive");
    // The solution stays positive for t > 0 if it is positive at t = 0.
    constexpr int kSamples = 4096;
    for (int k = 0; k <= kSamples; ++k) {
        const double x = -halfwidth_ + 2.0 * halfwidth_ * k / kSamples;
        if (!(density(0.0, x) > 0.0))
            throw input_error("heat reference initial density is not positive");
    }
}

double HeatNeumannReference::density(double t, double x) const {
    double v = 0.5 / halfwidth_;
    for (const auto& m : modes_) {
        const double w = m.n * kPi / (2.0 * halfwidth_);
        v += m.amplitude * std::cos(w * (x + halfwidth_)) * std::exp(-w * w * t);
    }
    return v;
}

double HeatNeumannReference::density_dx(double t, double x) const {
    double v = 0.0;
    for (const auto& m : modes_) {
        const double w = m.n * kPi / (2.0 * halfwidth_);
        v -= m.amplitude * w * std::sin(w * (x + halfwidth_)) * std::exp(-w * w * t);
    }
    return v;
}

double HeatNeumannReference::cdf(double t, double x) const {
    double v = 0.5 / halfwidth_ * (x + halfwidth_);
    for (const auto& m : modes_) {
        const double w = m.n * kPi / (2.0 * halfwidth_);
        v += m.amplitude / w * std::sin(w * (x + halfwidth_)) * std::exp(-w * w * t);
    }
    return std::min(1.0, std::max(0.0, v));
}

double HeatNeumannReference::energy(double t, const InternalEnergy& energy) const {
    return integrate([&](double x) { return energy.H(density(t, x)); }, -halfwidth_,
                     halfwidth_, 1e-10);
}

double HeatNeumannReference::fisher(double t, const InternalEnergy& energy) const {
    return integrate(
        [&](double x) {
            const double r = density(t, x);
            const double dr = density_dx(t, x);
            const double h2 = energy.d2H(r);
            return dr * dr * h2 * h2 * r;
        },
        -halfwidth_, halfwidth_, 1e-9);
}

SmoothProfile HeatNeumannReference::profile_at(double t) const {
    return SmoothProfile([*this, t](double x) { return density(t, x); },
                         [*this, t](double x) { return density_dx(t, x); },
                         [*this, t](double x) { return cdf(t, x); }, -halfwidth_,
                         halfwidth_, "heat_reference");
}

double HeatNeumannReference::pde_residual(double t, double x, double dt_fd) const {
    const double t0 = std::max(t - dt_fd, 0.0);
    const double rho_t = (density(t + dt_fd, x) - density(t0, x)) / (t + dt_fd - t0);
    double rho_xx = 0.0;
    for (const auto& m : modes_) {
        const double w = m.n * kPi / (2.0 * halfwidth_);
        rho_xx -= m.amplitude * w * w * std::cos(w * (x + halfwidth_)) *
                  std::exp(-w * w * t);
    }
    return std::abs(rho_t - rho_xx);
}

BarenblattReference::BarenblattReference(double m) : m_(m) {
    if (!(m_ > 1.0)) throw input_error("Barenblatt profile needs m > 1");
    alpha_ = 1.0 / (m_ + 1.0);
    k_ = alpha_ * (m_ - 1.0) / (2.0 * m_);
    // Unit mass fixes C: mass(C) is increasing in C, so bisect.
    const auto mass_of = [&](double c) {
        const double radius = std::sqrt(c / k_);
        return integrate(
            [&](double xi) {
                const double u = c - k_ * xi * xi;
                return u > 0.0 ? std::pow(u, 1.0 / (m_ - 1.0)) : 0.0;
            },
            -radius, radius, 1e-12);
    };
    double lo = 1e-8, hi = 1.0;
    while (mass_of(hi) < 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_of(mid) < 1.0 ? lo : hi) = mid;
    }
    c_ = 0.5 * (lo + hi);
}

double BarenblattReference::density(double t, double x) const {
    if (!(t > 0.0)) throw input_error("Barenblatt density needs t > 0");
    const double ta = std::pow(t, -alpha_);
    const double u = c_ - k_ * (x * ta) * (x * ta);
    return u > 0.0 ? ta * std::pow(u, 1.0 / (m_ - 1.0)) : 0.0;
}

double BarenblattReference::density_dx(double t, double x) const {
    if (!(t > 0.0)) throw input_error("Barenblatt density needs t > 0");
    const double ta = std::pow(t, -alpha_);
    const double u = c_ - k_ * (x * ta) * (x * ta);
    if (!(u > 0.0)) return 0.0;
    return ta / (m_ - 1.0) * std::pow(u, (2.0 - m_) / (m_ - 1.0)) *
           (-2.0 * k_ * x * ta * ta);
}

double BarenblattReference::support_radius(double t) const {
    return std::sqrt(c_ / k_) * std::pow(t, alpha_);
}

double BarenblattReference::energy(double t, const InternalEnergy& energy) const {
    const double r = support_radius(t);
    return integrate([&](double x) { return energy.H(density(t, x)); }, -r, r, 1e-10);
}

double BarenblattReference::fisher(double t, const InternalEnergy& energy) const {
    const double r = support_radius(t);
    return integrate(
        [&](double x) {
            const double rho = density(t, x);
            if (rho <= 0.0) return 0.0;
            const double dr = density_dx(t, x);
            const double h2 = energy.d2H(rho);
            return dr * dr * h2 * h2 * rho;
        },
        -r, r, 1e-9);
}

double BarenblattReference::mass(double t) const {
    const double r = support_radius(t);
    return integrate([&](double x) { return density(t, x); }, -r, r, 1e-12);
}

double BarenblattReference::second_moment(double t) const {
    const double r = support_radius(t);
    return integrate([&](double x) { return x * x * density(t, x); }, -r, r, 1e-12);
}

double BarenblattReference::pde_residual(double t, double x, double dt_fd) const {
    const double rho_t =
        (density(t + dt_fd, x) - density(t - dt_fd, x)) / (2.0 * dt_fd);
    // d2/dx2 rho^m with rho^m = t^{-alpha m} u^q, u = C - k x^2 t^{-2 alpha}.
    const double q = m_ / (m_ - 1.0);
    const double ta = std::pow(t, -alpha_);
    const double u = c_ - k_ * (x * ta) * (x * ta);
    if (!(u > 0.0)) throw input_error("pde_residual needs an interior point");
    const double u_x = -2.0 * k_ * x * ta * ta;
    const double u_xx = -2.0 * k_ * ta * ta;
    const double pm_xx = std::pow(t, -alpha_ * m_) * q *
                         ((q - 1.0) * std::pow(u, q - 2.0) * u_x * u_x +
                          std::pow(u, q - 1.0) * u_xx);
    return std::abs(rho_t - pm_xx);
}

}  // namespace wgf
