#include "wgf/smooth_profile.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "wgf/quadrature.hpp"

namespace wgf {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Sampled extrema of the density over the support.
std::pair<double, double> sampled_range(const std::function<double(double)>& rho,
                                        double lo, double hi) {
    constexpr int kSamples = 2048;
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (int k = 0; k <= kSamples; ++k) {
        const double x = lo + (hi - lo) * k / kSamples;
        const double v = rho(x);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {mn, mx};
}

}  // namespace

SmoothProfile::SmoothProfile(std::function<double(double)> rho,
                             std::function<double(double)> drho,
                             std::function<double(double)> cdf, double lo, double hi,
                             std::string name)
    : rho_(std::move(rho)),
      drho_(std::move(drho)),
      cdf_(std::move(cdf)),
      lo_(lo),
      hi_(hi),
      name_(std::move(name)) {
    if (!(hi_ > lo_) || !std::isfinite(lo_) || !std::isfinite(hi_))
        throw input_error("profile support must be a bounded interval");
    const auto [mn, mx] = sampled_range(rho_, lo_, hi_);
    min_density_ = mn;
    max_density_ = mx;
    if (!(min_density_ > 0.0))
        throw input_error("profile '" + name_ + "' is not bounded away from zero");
    const double m = mass(1e-8);
    if (std::abs(m - 1.0) > 1e-6)
        throw input_error("profile '" + name_ + "' mass " + std::to_string(m) +
                          " is not 1");
}

SmoothProfile SmoothProfile::with_numeric_cdf(std::function<double(double)> rho,
                                              std::function<double(double)> drho,
                                              double lo, double hi, std::string name) {
    // Cumulative table with per-cell Simpson refinement; cells are fine
    // enough that the interpolation error is far below quantile tolerances.
    constexpr int kCells = 8192;
    auto table = std::make_shared<std::vector<double>>(kCells + 1, 0.0);
    const double dx = (hi - lo) / kCells;
    for (int k = 0; k < kCells; ++k) {
        const double a = lo + k * dx, b = a + dx;
        const double cell =
            (dx / 6.0) * (rho(a) + 4.0 * rho(0.5 * (a + b)) + rho(b));
        (*table)[k + 1] = (*table)[k] + cell;
    }
    const double total = table->back();
    auto rho_copy = rho;
    auto cdf = [table, rho_copy, lo, dx, total, kCells_ = kCells](double x) {
        if (x <= lo) return 0.0;
        const double s = (x - lo) / dx;
        const int k = std::min(kCells_ - 1, static_cast<int>(std::floor(s)));
        const double a = lo + k * dx;
        const double part =
            ((x - a) / 6.0) *
            (rho_copy(a) + 4.0 * rho_copy(0.5 * (a + x)) + rho_copy(x));
        return std::min(1.0, ((*table)[k] + part) / total);
    };
    return SmoothProfile(std::move(rho), std::move(drho), std::move(cdf), lo, hi,
                         std::move(name));
}

SmoothProfile SmoothProfile::uniform(double halfwidth) {
    if (!(halfwidth > 0.0)) throw input_error("uniform profile needs halfwidth > 0");
    const double l = halfwidth, v = 0.5 / halfwidth;
    return SmoothProfile([v](double) { return v; }, [](double) { return 0.0; },
                         [v, l](double x) { return v * (x + l); }, -l, l, "uniform");
}

SmoothProfile SmoothProfile::linear_ramp() {
    return SmoothProfile([](double x) { return (2.0 + x) / 4.0; },
                         [](double) { return 0.25; },
                         [](double x) { return (x + 1.0) * (x + 3.0) / 8.0; }, -1.0, 1.0,
                         "linear");
}

SmoothProfile SmoothProfile::cosine(double halfwidth, double amplitude) {
    const double l = halfwidth;
    if (!(l > 0.0)) throw input_error("cosine profile needs halfwidth > 0");
    if (!(std::abs(amplitude) < 0.5 / l))
        throw input_error("cosine amplitude must keep the density positive");
    const double a = amplitude;
    return SmoothProfile(
        [l, a](double x) { return 0.5 / l + a * std::cos(kPi * (x + l) / l); },
        [l, a](double x) { return -a * kPi / l * std::sin(kPi * (x + l) / l); },
        [l, a](double x) {
            return 0.5 / l * (x + l) + a * l / kPi * std::sin(kPi * (x + l) / l);
        },
        -l, l, "cosine");
}

double SmoothProfile::quantile(double eta) const {
    if (eta < 0.0 || eta > 1.0) throw input_error("quantile argument must be in [0,1]");
    if (eta <= 0.0) return lo_;
    if (eta >= 1.0) return hi_;
    return bisect_increasing(cdf_, lo_, hi_, eta, 1e-14 * (hi_ - lo_));
}

double SmoothProfile::mass(double abs_tol) const {
    return integrate(rho_, lo_, hi_, abs_tol);
}

double SmoothProfile::second_moment(double abs_tol) const {
    return integrate([&](double x) { return x * x * rho_(x); }, lo_, hi_, abs_tol);
}

double SmoothProfile::energy(const InternalEnergy& energy, double abs_tol) const {
    return integrate([&](double x) { return energy.H(rho_(x)); }, lo_, hi_, abs_tol);
}

double SmoothProfile::fisher(const InternalEnergy& energy, double abs_tol) const {
    return integrate(
        [&](double x) {
            const double r = rho_(x);
            const double dr = drho_(x);
            const double h2 = energy.d2H(r);
            return dr * dr * h2 * h2 * r;
        },
        lo_, hi_, abs_tol);
}

ParticleState well_prepared(const SmoothProfile& profile, int n, const Domain& domain) {
    if (n < 2) throw input_error("well_prepared needs N >= 2");
    if (domain.is_interval()) {
        const double l = domain.halfwidth();
        if (std::abs(profile.support_left() + l) > 1e-9 * l ||
            std::abs(profile.support_right() - l) > 1e-9 * l)
            throw input_error("profile support must equal the interval domain");
    }
    std::vector<double> x(n);
    x[0] = profile.support_left();
    for (int i = 2; i <= n; ++i)
        x[i - 1] = profile.quantile(static_cast<double>(i) / n);
    x[n - 1] = profile.support_right();
    if (domain.is_interval()) {
        x[0] = -domain.halfwidth();
        x[n - 1] = domain.halfwidth();
    }
    return ParticleState(std::move(x), domain);
}

}  // namespace wgf
