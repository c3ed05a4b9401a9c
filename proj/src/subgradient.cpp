#include "wgf/subgradient.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace wgf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NeighborLabels classify(const ParticleState& state, double tie_tol) {
    if (tie_tol < 0.0) throw input_error("tie_tol must be >= 0");
    const Geometry g = geometry(state);
    const int n = state.size();
    NeighborLabels lab;
    lab.a.assign(n + 2, Side::E);
    lab.a[0] = Side::L;
    lab.a[n + 1] = Side::R;
    for (int j = 1; j <= n; ++j) {
        const double left = g.gap[j - 1];   // dx_j
        const double right = g.gap[j];      // dx_{j+1}
        const bool li = std::isinf(left), ri = std::isinf(right);
        if (li && ri)
            lab.a[j] = Side::E;
        else if (li)
            lab.a[j] = Side::R;
        else if (ri)
            lab.a[j] = Side::L;
        else if (std::abs(right / left - 1.0) <= tie_tol)
            lab.a[j] = Side::E;
        else
            lab.a[j] = (right < left) ? Side::R : Side::L;
    }
    return lab;
}

std::vector<double> psi_values(const ParticleState& state, const InternalEnergy& energy) {
    const Geometry g = geometry(state);
    const double n = static_cast<double>(state.size());
    std::vector<double> psi(g.gap.size());
    for (std::size_t j = 0; j < g.gap.size(); ++j) {
        if (std::isinf(g.gap[j])) {
            if (energy.kind() == InternalEnergy::Kind::Custom &&
                energy.psi_at_infinity() != 0.0)
                throw unsupported_error(
                    "custom energy with psi(inf) != 0 cannot handle an infinite gap");
            psi[j] = 0.0;
        } else {
            psi[j] = n * energy.psi(n * g.gap[j]);
        }
    }
    return psi;
}

const CaseTable& case_table() {
    static const CaseTable table = [] {
        CaseTable t;
        for (auto& c : t.coef) c = {0.0, 0.0};
        const auto set = [&t](Side l, Side m, Side r, double c_next, double c_self) {
            t.coef[CaseTable::index(l, m, r)] = {c_next, c_self};
        };
        using enum Side;
        set(R, R, L, 2, 1);
        set(E, R, L, 2, 1);
        set(L, R, R, 1, 0);
        set(L, R, E, 1, 0);
        set(L, R, L, 2, 0);
        set(R, L, R, 0, 2);
        set(R, L, E, 1, 2);
        set(R, L, L, 1, 2);
        set(E, L, R, 0, 1);
        set(L, L, R, 0, 1);
        set(R, R, R, 1, 1);
        set(R, R, E, 1, 1);
        set(E, R, R, 1, 1);
        set(E, R, E, 1, 1);
        set(E, L, E, 1, 1);
        set(E, L, L, 1, 1);
        set(L, L, E, 1, 1);
        set(L, L, L, 1, 1);
        // All (., E, .) triples stay at (0, 0): z_i = 0 when the middle
        // label is a tie.
        return t;
    }();
    return table;
}

Subgradient minimal_norm_with_table(const ParticleState& state,
                                    const InternalEnergy& energy, double tie_tol,
                                    const CaseTable& table) {
    const NeighborLabels lab = classify(state, tie_tol);
    const std::vector<double> psi = psi_values(state, energy);
    const int n = state.size();
    Subgradient s;
    s.z.resize(n);
    for (int p = 0; p < n; ++p) {
        const int i = p + 1;
        const auto [c_next, c_self] =
            table.coef[CaseTable::index(lab.a[i - 1], lab.a[i], lab.a[i + 1])];
        s.z[p] = c_next * psi[p + 1] - c_self * psi[p];
    }
    s.norm_w = weighted_norm(s.z);
    return s;
}

Subgradient minimal_norm(const ParticleState& state, const InternalEnergy& energy,
                         double tie_tol) {
    return minimal_norm_with_table(state, energy, tie_tol, case_table());
}

double local_slope(const ParticleState& state, const InternalEnergy& energy,
                   double tie_tol) {
    return minimal_norm(state, energy, tie_tol).norm_w;
}

namespace {

// Admissible multiplier range encoded by a label: lambda_j = 1 when the
// right gap of comparison j is strictly smaller, 0 when strictly larger,
// free in [0,1] at a tie.
std::pair<double, double> lambda_range(Side s) {
    switch (s) {
        case Side::L: return {0.0, 0.0};
        case Side::R: return {1.0, 1.0};
        case Side::E: return {0.0, 1.0};
    }
    return {0.0, 0.0};
}

}  // namespace

std::vector<std::pair<double, double>> subgradient_box(const ParticleState& state,
                                                       const InternalEnergy& energy,
                                                       double tie_tol) {
    const NeighborLabels lab = classify(state, tie_tol);
    const std::vector<double> psi = psi_values(state, energy);
    const int n = state.size();
    std::vector<std::pair<double, double>> box(n);
    for (int p = 0; p < n; ++p) {
        const int i = p + 1;
        const auto [lm_lo, lm_hi] = lambda_range(lab.a[i - 1]);
        const auto [l_lo, l_hi] = lambda_range(lab.a[i]);
        const auto [lp_lo, lp_hi] = lambda_range(lab.a[i + 1]);
        // z_i = l*(psi_i + psi_{i+1}) - lp*psi_{i+1} - lm*psi_i + (psi_{i+1} - psi_i)
        const double base = psi[p + 1] - psi[p];
        const double zmin = l_lo * (psi[p] + psi[p + 1]) - lp_hi * psi[p + 1] -
                            lm_hi * psi[p] + base;
        const double zmax = l_hi * (psi[p] + psi[p + 1]) - lp_lo * psi[p + 1] -
                            lm_lo * psi[p] + base;
        box[p] = {zmin, zmax};
    }
    return box;
}

namespace {

// Box-constrained least squares over the free branch multipliers of one
// cluster, by a primal active-set method. The normal-equation matrix is
// pentadiagonal in the compacted variable order (two multipliers interact
// only when their comparison indices are within distance two), so each
// equality solve is a banded LDL^T factorisation.
class TieClusterQp {
  public:
    TieClusterQp(std::vector<int> vars, const std::vector<double>& psi,
                 const std::vector<bool>& in_obj, int n)
        : vars_(std::move(vars)), psi_(psi), in_obj_(in_obj), n_(n) {}

    // Coefficient of lambda[j] in z_p: the own, left and right couplings.
    double coef(int p, int j) const {
        if (p < 0 || p >= n_ || !in_obj_[p]) return 0.0;
        if (p == j - 1) return psi_[j - 1] + psi_[j];
        if (p == j - 2) return -psi_[j - 1];
        if (p == j) return -psi_[j];
        return 0.0;
    }

    // Minimises sum_p z_p^2 with z_p = z0_p + sum_k coef(p, vars_[k]) x_k
    // over x in [0,1]^m; z0 is the residual with cluster multipliers at 0.
    std::vector<double> solve(const std::vector<double>& z0) const {
        const int m = static_cast<int>(vars_.size());
        std::vector<double> x(m, 0.0);
        std::vector<int> state(m, 0);  // 0 free, -1 at lower, +1 at upper

        for (int pass = 0; pass < 40 + 2 * m; ++pass) {
            // Equality solve on the free set.
            std::vector<int> free_idx;
            for (int k = 0; k < m; ++k)
                if (state[k] == 0) free_idx.push_back(k);
            if (!free_idx.empty()) {
                const int f = static_cast<int>(free_idx.size());
                // Banded normal equations, half-bandwidth 2 in compacted order.
                std::vector<std::array<double, 3>> band(f, {0.0, 0.0, 0.0});
                std::vector<double> rhs(f, 0.0);
                for (int a = 0; a < f; ++a) {
                    const int ja = vars_[free_idx[a]];
                    for (int b = a; b < std::min(f, a + 3); ++b) {
                        const int jb = vars_[free_idx[b]];
                        if (jb - ja > 2) break;
                        double acc = 0.0;
                        for (int p = jb - 2; p <= ja; ++p)
                            acc += coef(p, ja) * coef(p, jb);
                        band[a][b - a] = acc;
                    }
                    double bacc = 0.0;
                    for (int p = ja - 2; p <= ja; ++p) {
                        if (p < 0 || p >= n_ || !in_obj_[p]) continue;
                        double zp = z0[p];
                        for (int k = 0; k < m; ++k)
                            if (state[k] > 0) zp += coef(p, vars_[k]);
                        bacc += coef(p, ja) * zp;
                    }
                    rhs[a] = -bacc;
                }
                // LDL^T with half-bandwidth 2; a small ridge guards rank
                // deficiency, and one refinement pass removes its bias.
                double ridge = 0.0;
                for (int a = 0; a < f; ++a) ridge = std::max(ridge, band[a][0]);
                ridge = std::max(ridge * 1e-12, 1e-300);
                std::vector<std::array<double, 2>> lower(f, {0.0, 0.0});
                std::vector<double> diag(f, 0.0);
                for (int a = 0; a < f; ++a) {
                    double d = band[a][0] + ridge;
                    if (a >= 1) d -= lower[a - 1][0] * lower[a - 1][0] * diag[a - 1];
                    if (a >= 2) d -= lower[a - 2][1] * lower[a - 2][1] * diag[a - 2];
                    diag[a] = std::max(d, ridge);
                    if (a + 1 < f) {
                        double v = band[a][1];
                        if (a >= 1) v -= lower[a - 1][0] * lower[a - 1][1] * diag[a - 1];
                        lower[a][0] = v / diag[a];
                    }
                    if (a + 2 < f) lower[a][1] = band[a][2] / diag[a];
                }
                const auto banded_solve = [&](const std::vector<double>& b) {
                    std::vector<double> y(f);
                    for (int a = 0; a < f; ++a) {
                        double v = b[a];
                        if (a >= 1) v -= lower[a - 1][0] * y[a - 1];
                        if (a >= 2) v -= lower[a - 2][1] * y[a - 2];
                        y[a] = v;
                    }
                    std::vector<double> sol(f);
                    for (int a = f - 1; a >= 0; --a) {
                        double v = y[a] / diag[a];
                        if (a + 1 < f) v -= lower[a][0] * sol[a + 1];
                        if (a + 2 < f) v -= lower[a][1] * sol[a + 2];
                        sol[a] = v;
                    }
                    return sol;
                };
                const auto band_mul = [&](const std::vector<double>& v) {
                    std::vector<double> out(f, 0.0);
                    for (int a = 0; a < f; ++a) {
                        out[a] += band[a][0] * v[a];
                        if (a + 1 < f) {
                            out[a] += band[a][1] * v[a + 1];
                            out[a + 1] += band[a][1] * v[a];
                        }
                        if (a + 2 < f) {
                            out[a] += band[a][2] * v[a + 2];
                            out[a + 2] += band[a][2] * v[a];
                        }
                    }
                    return out;
                };
                std::vector<double> sol = banded_solve(rhs);
                for (int refine = 0; refine < 2; ++refine) {
                    const std::vector<double> mx = band_mul(sol);
                    std::vector<double> resid(f);
                    for (int a = 0; a < f; ++a) resid[a] = rhs[a] - mx[a];
                    const std::vector<double> corr = banded_solve(resid);
                    for (int a = 0; a < f; ++a) sol[a] += corr[a];
                }
                for (int a = 0; a < f; ++a) x[free_idx[a]] = sol[a];
            }

            // Clamp violators; if none, check bound multipliers for release.
            bool clamped = false;
            for (int k = 0; k < m; ++k) {
                if (state[k] != 0) continue;
                if (x[k] < 0.0) {
                    x[k] = 0.0;
                    state[k] = -1;
                    clamped = true;
                } else if (x[k] > 1.0) {
                    x[k] = 1.0;
                    state[k] = +1;
                    clamped = true;
                }
            }
            if (clamped) continue;

            // Gradient at the current point: g_k = 2 sum_p coef(p,j) z_p.
            std::vector<double> z = z0;
            for (int k = 0; k < m; ++k) {
                const int j = vars_[k];
                for (int p = j - 2; p <= j; ++p)
                    if (p >= 0 && p < n_) z[p] += coef(p, j) * x[k];
            }
            double z_scale = 1e-300;
            for (int p = 0; p < n_; ++p) z_scale = std::max(z_scale, std::abs(z[p]));
            const double tol = 1e-12 * z_scale;
            int release = -1;
            double worst = tol;
            for (int k = 0; k < m; ++k) {
                if (state[k] == 0) continue;
                double g = 0.0;
                const int j = vars_[k];
                for (int p = j - 2; p <= j; ++p) g += coef(p, j) * z[p];
                const double push = state[k] < 0 ? -g : g;
                if (push > worst) {
                    worst = push;
                    release = k;
                }
            }
            if (release < 0) break;
            state[release] = 0;
        }
        return x;
    }

  private:
    std::vector<int> vars_;
    const std::vector<double>& psi_;
    const std::vector<bool>& in_obj_;
    int n_;
};

}  // namespace

std::vector<double> shifted_minimal_selection(const ParticleState& state,
                                              const InternalEnergy& energy,
                                              double tie_tol, bool pinned_left,
                                              bool pinned_right,
                                              const std::vector<double>& shift) {
    const NeighborLabels lab = classify(state, tie_tol);
    const std::vector<double> psi = psi_values(state, energy);
    const int n = state.size();
    if (!shift.empty() && static_cast<int>(shift.size()) != n)
        throw input_error("shift size mismatch");

    // lambda[j] for comparisons j = 0..N+1, aligned with labels.
    std::vector<double> lambda(n + 2);
    std::vector<bool> free_var(n + 2, false);
    for (int j = 0; j <= n + 1; ++j) {
        const auto [lo, hi] = lambda_range(lab.a[j]);
        lambda[j] = lo;
        free_var[j] = hi > lo;
    }
    // A boundary-pinned particle's mirror gap moves with its inner
    // neighbour, which fixes the branch multiplier of the end ball.
    if (pinned_left) {
        lambda[1] = 1.0;
        free_var[1] = false;
    }
    if (pinned_right) {
        lambda[n] = 0.0;
        free_var[n] = false;
    }

    // Pinned end particles do not move; their component is excluded from
    // the norm being minimised.
    std::vector<bool> in_obj(n, true);
    if (pinned_left) in_obj[0] = false;
    if (pinned_right) in_obj[n - 1] = false;

    const auto z_at = [&](int p) {
        const int i = p + 1;
        return (shift.empty() ? 0.0 : shift[p]) +
               (lambda[i] - lambda[i + 1] + 1.0) * psi[p + 1] -
               (lambda[i - 1] - lambda[i] + 1.0) * psi[p];
    };

    // Cluster the free multipliers; indices further than two apart do not
    // share any z component and solve independently.
    std::vector<int> free_list;
    for (int j = 1; j <= n; ++j)
        if (free_var[j]) free_list.push_back(j);

    std::size_t start = 0;
    while (start < free_list.size()) {
        std::size_t end = start + 1;
        while (end < free_list.size() && free_list[end] - free_list[end - 1] <= 2) ++end;
        std::vector<int> cluster(free_list.begin() + start, free_list.begin() + end);

        // Residual with this cluster's multipliers at zero.
        for (int j : cluster) lambda[j] = 0.0;
        std::vector<double> z0(n);
        for (int p = 0; p < n; ++p) z0[p] = z_at(p);

        const TieClusterQp qp(cluster, psi, in_obj, n);
        const std::vector<double> sol = qp.solve(z0);
        for (std::size_t k = 0; k < cluster.size(); ++k) lambda[cluster[k]] = sol[k];
        start = end;
    }

    std::vector<double> z(n);
    for (int p = 0; p < n; ++p) z[p] = z_at(p);
    if (pinned_left) z[0] = 0.0;
    if (pinned_right) z[n - 1] = 0.0;
    return z;
}

Subgradient sliding_selection(const ParticleState& state, const InternalEnergy& energy,
                              double tie_tol, bool pinned_left, bool pinned_right) {
    Subgradient s;
    s.z = shifted_minimal_selection(state, energy, tie_tol, pinned_left, pinned_right, {});
    // A residual at rounding level means zero is attainable in the
    // subdifferential: the state is stationary and must stay exactly fixed.
    const std::vector<double> psi = psi_values(state, energy);
    double scale = 0.0;
    for (double p : psi) scale = std::max(scale, p);
    double worst = 0.0;
    for (double zi : s.z) worst = std::max(worst, std::abs(zi));
    if (worst <= 1e-11 * scale)
        for (double& zi : s.z) zi = 0.0;
    s.norm_w = weighted_norm(s.z);
    return s;
}

}  // namespace wgf
