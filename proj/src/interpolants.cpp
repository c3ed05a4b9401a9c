#include "wgf/interpolants.hpp"

#include <cmath>
#include <limits>

#include "wgf/quadrature.hpp"
#include "wgf/subgradient.hpp"

namespace wgf {

namespace {

double inv_sqrt_or_zero(double gap) {
    return std::isinf(gap) ? 0.0 : 1.0 / std::sqrt(gap);
}

double ratio_or_zero(double num, double den) {
    if (std::isinf(den)) return 0.0;
    return num / den;
}

}  // namespace

double heat_interpolant_normalizer(const ParticleState& state) {
    const Geometry g = geometry(state);
    const int n = state.size();
    double s = 0.0;
    for (int p = 0; p + 1 < n; ++p) {
        const double ratio = ratio_or_zero(g.gap[p + 1], g.gap[p]);
        s += 1.0 + std::sqrt(ratio) + ratio;
    }
    return s / (3.0 * n);
}

PiecewiseDensity interpolant_heat(const ParticleState& state) {
    const Geometry g = geometry(state);
    const auto& x = state.positions();
    const int n = state.size();
    const double m = heat_interpolant_normalizer(state);

    std::vector<PiecewiseDensity::Piece> pieces(n - 1);
    for (int p = 0; p + 1 < n; ++p) {
        const double xa = x[p], xb = x[p + 1];
        const double d2 = g.gap[p + 1];             // dx_{i+1}, the spanned gap
        const double ia = inv_sqrt_or_zero(d2);     // 1/sqrt(dx_{i+1})
        const double ib = inv_sqrt_or_zero(g.gap[p]);  // 1/sqrt(dx_i)
        const double scale = 1.0 / (m * n * d2 * d2);
        pieces[p].a = xa;
        pieces[p].b = xb;
        pieces[p].constant = false;
        pieces[p].f = [xa, xb, ia, ib, scale](double t) {
            const double q = (t - xa) * ia + (xb - t) * ib;
            return scale * q * q;
        };
        pieces[p].df = [xa, xb, ia, ib, scale](double t) {
            const double q = (t - xa) * ia + (xb - t) * ib;
            return 2.0 * scale * q * (ia - ib);
        };
    }
    return PiecewiseDensity(std::move(pieces), 1.0);
}

PiecewiseDensity interpolant_general(const ParticleState& state,
                                     const InternalEnergy& energy) {
    const Geometry g = geometry(state);
    const auto& x = state.positions();
    const int n = state.size();
    const std::vector<double> psi = psi_values(state, energy);

    // Unnormalised pieces 1/psi^{-1}(p_i(x)); the normaliser is their total
    // integral, evaluated by quadrature.
    std::vector<std::function<double(double)>> raw(n - 1), raw_d(n - 1);
    for (int p = 0; p + 1 < n; ++p) {
        const double xa = x[p], xb = x[p + 1];
        const double d2 = g.gap[p + 1];
        if (energy.kind() == InternalEnergy::Kind::Custom &&
            (std::isinf(g.gap[p]) || std::isinf(d2)))
            throw unsupported_error(
                "general interpolant: custom energy next to an infinite gap");
        const double qa = psi[p] / n;       // psi(N dx_i)
        const double qb = psi[p + 1] / n;   // psi(N dx_{i+1})
        const double lo_b = n * std::min(std::isinf(g.gap[p]) ? d2 : g.gap[p], d2);
        const double hi_b = n * (std::isinf(g.gap[p]) ? d2 : std::max(g.gap[p], d2));
        const auto p_lin = [xa, xb, qa, qb, d2](double t) {
            return ((t - xa) * qb + (xb - t) * qa) / d2;
        };
        const double dp = (qb - qa) / d2;
        raw[p] = [p_lin, energy, lo_b, hi_b](double t) {
            const double pv = p_lin(t);
            if (pv <= 0.0) return 0.0;
            return 1.0 / energy.psi_inverse(pv, std::make_pair(0.5 * lo_b, 2.0 * hi_b));
        };
        raw_d[p] = [p_lin, dp, energy, lo_b, hi_b](double t) {
            const double pv = p_lin(t);
            if (pv <= 0.0) return 0.0;
            const double u = energy.psi_inverse(pv, std::make_pair(0.5 * lo_b, 2.0 * hi_b));
            const double du = dp / energy.dpsi(u);
            return -du / (u * u);
        };
    }

    double m = 0.0;
    for (int p = 0; p + 1 < n; ++p) m += integrate(raw[p], x[p], x[p + 1], 1e-12);
    if (!(m > 0.0)) throw numerical_error("interpolant normaliser is not positive");

    std::vector<PiecewiseDensity::Piece> pieces(n - 1);
    for (int p = 0; p + 1 < n; ++p) {
        pieces[p].a = x[p];
        pieces[p].b = x[p + 1];
        pieces[p].constant = false;
        auto f = raw[p];
        auto df = raw_d[p];
        pieces[p].f = [f, m](double t) { return f(t) / m; };
        pieces[p].df = [df, m](double t) { return df(t) / m; };
    }
    return PiecewiseDensity(std::move(pieces), 1.0);
}

double fisher(const PiecewiseDensity& density, const InternalEnergy& energy,
              double abs_tol) {
    if (!density.has_derivative())
        throw input_error("fisher needs a density with derivative evaluators");
    double acc = 0.0;
    const double per_tol = abs_tol / static_cast<double>(density.pieces().size());
    for (const auto& p : density.pieces()) {
        if (p.constant) continue;  // rho' = 0
        acc += integrate(
            [&](double t) {
                const double r = p.f(t);
                if (r <= 0.0)
                    throw numerical_error("fisher: density touches zero inside support");
                const double dr = p.df(t);
                const double h2 = energy.d2H(r);
                return dr * dr * h2 * h2 * r;
            },
            p.a, p.b, per_tol);
    }
    if (!std::isfinite(acc)) throw numerical_error("fisher integral diverged");
    return acc;
}

}  // namespace wgf
