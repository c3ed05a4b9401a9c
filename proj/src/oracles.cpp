#include "wgf/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "wgf/discrete_energy.hpp"

namespace wgf {

namespace {

// |z_i| for one multiplier assignment.
double z_of(double lm, double l, double lp, double psi_i, double psi_ip1) {
    return (l - lp + 1.0) * psi_ip1 - (lm - l + 1.0) * psi_i;
}

struct MultRange {
    double lo, hi;
    bool free() const { return hi > lo; }
};

MultRange range_of(Side s) {
    switch (s) {
        case Side::L: return {0.0, 0.0};
        case Side::R: return {1.0, 1.0};
        case Side::E: return {0.0, 1.0};
    }
    return {0.0, 0.0};
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double kPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kPhi * (b - a), x2 = a + kPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kPhi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

}  // namespace

std::vector<double> fd_gradient_z(const ParticleState& state,
                                  const InternalEnergy& energy, double rel_step) {
    const Geometry g = geometry(state);
    const double h = rel_step * g.min_interior_gap();
    const int n = state.size();
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> xp = state.positions(), xm = state.positions();
        xp[i] += h;
        xm[i] -= h;
        const double ep = discrete_energy(ParticleState(xp, state.domain()), energy);
        const double em = discrete_energy(ParticleState(xm, state.domain()), energy);
        z[i] = n * (ep - em) / (2.0 * h);
    }
    return z;
}

Subgradient lambda_vertex_minimal(const ParticleState& state,
                                  const InternalEnergy& energy, double tie_tol) {
    const NeighborLabels lab = classify(state, tie_tol);
    const std::vector<double> psi = psi_values(state, energy);
    const int n = state.size();

    Subgradient out;
    out.z.resize(n);
    const double grid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

    for (int p = 0; p < n; ++p) {
        const int i = p + 1;
        const double psi_i = psi[p], psi_ip1 = psi[p + 1];
        const MultRange rm = range_of(lab.a[i - 1]);
        const MultRange r = range_of(lab.a[i]);
        const MultRange rp = range_of(lab.a[i + 1]);

        const auto values = [&](const MultRange& rr) {
            return rr.free() ? std::vector<double>(grid, grid + 5)
                             : std::vector<double>{rr.lo};
        };
        // Best grid assignment, then golden-section refinement per free
        // multiplier holding the others fixed.
        double cur_lm = rm.lo, cur_l = r.lo, cur_lp = rp.lo;
        double best_abs = std::numeric_limits<double>::infinity();
        for (double lm : values(rm))
            for (double l : values(r))
                for (double lp : values(rp)) {
                    const double z = std::abs(z_of(lm, l, lp, psi_i, psi_ip1));
                    if (z < best_abs) {
                        best_abs = z;
                        cur_lm = lm;
                        cur_l = l;
                        cur_lp = lp;
                    }
                }
        for (int round = 0; round < 4; ++round) {
            if (rm.free())
                cur_lm = golden_min(
                    [&](double v) { return std::abs(z_of(v, cur_l, cur_lp, psi_i, psi_ip1)); },
                    0.0, 1.0);
            if (r.free())
                cur_l = golden_min(
                    [&](double v) { return std::abs(z_of(cur_lm, v, cur_lp, psi_i, psi_ip1)); },
                    0.0, 1.0);
            if (rp.free())
                cur_lp = golden_min(
                    [&](double v) { return std::abs(z_of(cur_lm, cur_l, v, psi_i, psi_ip1)); },
                    0.0, 1.0);
        }
        out.z[p] = z_of(cur_lm, cur_l, cur_lp, psi_i, psi_ip1);
    }
    out.norm_w = weighted_norm(out.z);
    return out;
}

std::vector<std::vector<double>> lambda_vertex_candidates(const ParticleState& state,
                                                          const InternalEnergy& energy,
                                                          double tie_tol) {
    const NeighborLabels lab = classify(state, tie_tol);
    const std::vector<double> psi = psi_values(state, energy);
    const int n = state.size();
    std::vector<std::vector<double>> out(n);
    for (int p = 0; p < n; ++p) {
        const int i = p + 1;
        const MultRange rm = range_of(lab.a[i - 1]);
        const MultRange r = range_of(lab.a[i]);
        const MultRange rp = range_of(lab.a[i + 1]);
        for (double lm : (rm.free() ? std::vector<double>{0.0, 1.0}
                                    : std::vector<double>{rm.lo}))
            for (double l : (r.free() ? std::vector<double>{0.0, 1.0}
                                      : std::vector<double>{r.lo}))
                for (double lp : (rp.free() ? std::vector<double>{0.0, 1.0}
                                            : std::vector<double>{rp.lo}))
                    out[p].push_back(z_of(lm, l, lp, psi[p], psi[p + 1]));
    }
    return out;
}

double d2_permutation_oracle(const ParticleState& a, const ParticleState& b) {
    if (a.size() != b.size()) throw input_error("permutation oracle needs equal N");
    const int n = a.size();
    if (n > 8) throw input_error("permutation oracle limited to N <= 8");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = a.position(i) - b.position(idx[i]);
            cost += d * d;
        }
        best = std::min(best, cost);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return std::sqrt(best / n);
}

}  // namespace wgf
