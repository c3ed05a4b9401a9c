#include "wgf/discrete_energy.hpp"

#include <cmath>

#include "wgf/quadrature.hpp"

namespace wgf {

double discrete_energy(const ParticleState& state, const InternalEnergy& energy) {
    const Geometry g = geometry(state);
    const double n = static_cast<double>(state.size());
    double e = 0.0;
    for (double ri : g.r) e += energy.h(n * ri);
    return e / n;
}

PiecewiseDensity blob_density(const ParticleState& state) {
    const Geometry g = geometry(state);
    const auto& x = state.positions();
    const double n = static_cast<double>(state.size());
    std::vector<PiecewiseDensity::Piece> pieces(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        pieces[i].a = x[i] - 0.5 * g.r[i];
        pieces[i].b = x[i] + 0.5 * g.r[i];
        pieces[i].constant = true;
        pieces[i].value = 1.0 / (n * g.r[i]);
    }
    return PiecewiseDensity(std::move(pieces), 1.0);
}

double continuum_energy(const PiecewiseDensity& density, const InternalEnergy& energy,
                        double abs_tol) {
    double e = 0.0;
    const double per_tol = abs_tol / static_cast<double>(density.pieces().size());
    for (const auto& p : density.pieces()) {
        if (p.constant)
            e += (p.b - p.a) * energy.H(p.value);
        else
            e += integrate([&](double x) { return energy.H(std::max(p.f(x), 0.0)); },
                           p.a, p.b, per_tol);
    }
    return e;
}

double second_moment(const ParticleState& state) {
    double m = 0.0;
    for (double xi : state.positions()) m += xi * xi;
    return m / static_cast<double>(state.size());
}

}  // namespace wgf
