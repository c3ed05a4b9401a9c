#include "wgf/particle_state.hpp"

#include <cmath>
#include <limits>

namespace wgf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double Geometry::min_interior_gap() const {
    double m = kInf;
    for (std::size_t j = 1; j + 1 < gap.size(); ++j) m = std::min(m, gap[j]);
    return m;
}

double Geometry::max_interior_gap() const {
    double m = 0.0;
    for (std::size_t j = 1; j + 1 < gap.size(); ++j) m = std::max(m, gap[j]);
    return m;
}

ParticleState::ParticleState(std::vector<double> positions, Domain domain)
    : x_(std::move(positions)), domain_(domain) {
    if (x_.size() < 2) throw input_error("particle state needs N >= 2 particles");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1]))
            throw input_error("particle positions must be strictly increasing");
    if (domain_.is_interval()) {
        for (double xi : x_)
            if (!domain_.contains(xi))
                throw input_error("particle position outside the interval domain");
    } else {
        for (double xi : x_)
            if (!std::isfinite(xi)) throw input_error("particle position must be finite");
    }
}

bool ParticleState::left_on_boundary() const {
    if (!domain_.is_interval()) return false;
    const double l = domain_.halfwidth();
    return std::abs(x_.front() + l) <= 1e-14 * l;
}

bool ParticleState::right_on_boundary() const {
    if (!domain_.is_interval()) return false;
    const double l = domain_.halfwidth();
    return std::abs(x_.back() - l) <= 1e-14 * l;
}

Geometry geometry(const ParticleState& state) {
    const auto& x = state.positions();
    const int n = state.size();
    Geometry g;
    g.gap.resize(n + 1);
    for (int j = 1; j < n; ++j) g.gap[j] = x[j] - x[j - 1];

    if (state.domain().is_whole_line()) {
        g.gap[0] = kInf;
        g.gap[n] = kInf;
    } else {
        const double l = state.domain().halfwidth();
        // Mirror particle x_0 = -2l - x_2; equals gap[1] exactly when x_1 = -l.
        g.gap[0] = state.left_on_boundary() ? (x[0] + 2.0 * l + x[1]) : kInf;
        g.gap[n] = state.right_on_boundary() ? (2.0 * l - x[n - 2] - x[n - 1]) : kInf;
    }

    g.r.resize(n);
    for (int i = 0; i < n; ++i) g.r[i] = std::min(g.gap[i], g.gap[i + 1]);
    for (int i = 0; i < n; ++i)
        if (!(g.r[i] > 0.0) || !std::isfinite(g.r[i]))
            throw input_error("degenerate geometry: ball diameter not finite positive");
    return g;
}

double weighted_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double vi : v) s += vi * vi;
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace wgf
