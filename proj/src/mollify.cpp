#include <cmath>
#include <memory>

#include "wgf/quadrature.hpp"
#include "wgf/smooth_profile.hpp"

namespace wgf {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double gauss_pdf(double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); }
double gauss_cdf(double u) { return 0.5 * std::erfc(-u / kSqrt2); }
// Antiderivative of gauss_cdf.
double gauss_cdf_int(double u) { return u * gauss_cdf(u) + gauss_pdf(u); }

}  // namespace

SmoothProfile mollify(const PiecewiseDensity& source, double delta, const Domain& domain) {
    if (!(delta > 0.0)) throw input_error("mollify needs delta > 0");
    if (!(source.mass(1e-8) > 0.0)) throw input_error("mollify needs positive mass");

    const double s_lo = domain.is_interval() ? -domain.halfwidth() : source.support_left();
    const double s_hi = domain.is_interval() ? domain.halfwidth() : source.support_right();
    const double lo = std::max(s_lo, -1.0 / delta);
    const double hi = std::min(s_hi, 1.0 / delta);
    if (!(hi > lo))
        throw input_error("mollify: support does not intersect the 1/delta ball");

    // Convolution with the Gaussian kernel: closed form (erf) on constant
    // pieces, quadrature otherwise.
    auto pieces = std::make_shared<std::vector<PiecewiseDensity::Piece>>(source.pieces());
    const double d = delta;

    auto conv = [pieces, d](double x) {
        double v = 0.0;
        for (const auto& p : *pieces) {
            if (p.constant) {
                v += p.value * (gauss_cdf((x - p.a) / d) - gauss_cdf((x - p.b) / d));
            } else {
                v += integrate(
                    [&](double y) { return p.f(y) * gauss_pdf((x - y) / d) / d; }, p.a,
                    p.b, 1e-12);
            }
        }
        return v;
    };
    auto dconv = [pieces, d](double x) {
        double v = 0.0;
        for (const auto& p : *pieces) {
            if (p.constant) {
                v += p.value / d * (gauss_pdf((x - p.a) / d) - gauss_pdf((x - p.b) / d));
            } else {
                v += integrate(
                    [&](double y) {
                        const double u = (x - y) / d;
                        return -p.f(y) * u * gauss_pdf(u) / (d * d);
                    },
                    p.a, p.b, 1e-12);
            }
        }
        return v;
    };
    // Exact integral of conv over [lo, x] for the constant part.
    auto conv_int = [pieces, d, lo](double x) -> std::pair<double, bool> {
        double v = 0.0;
        bool all_constant = true;
        for (const auto& p : *pieces) {
            if (!p.constant) {
                all_constant = false;
                continue;
            }
            v += p.value * d *
                 (gauss_cdf_int((x - p.a) / d) - gauss_cdf_int((lo - p.a) / d) -
                  gauss_cdf_int((x - p.b) / d) + gauss_cdf_int((lo - p.b) / d));
        }
        return {v, all_constant};
    };

    double norm;
    const auto [const_total, all_constant] = conv_int(hi);
    if (all_constant)
        norm = const_total;
    else
        norm = integrate(conv, lo, hi, 1e-11);
    if (!(norm > 0.0)) throw input_error("mollify: vanishing normaliser");

    auto rho = [conv, norm](double x) { return conv(x) / norm; };
    auto drho = [dconv, norm](double x) { return dconv(x) / norm; };

    if (all_constant) {
        auto cdf = [conv_int, norm, lo, hi](double x) {
            if (x <= lo) return 0.0;
            if (x >= hi) return 1.0;
            return conv_int(x).first / norm;
        };
        return SmoothProfile(rho, drho, cdf, lo, hi, "mollified");
    }
    return SmoothProfile::with_numeric_cdf(rho, drho, lo, hi, "mollified");
}

}  // namespace wgf
