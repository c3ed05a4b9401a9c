#include "wgf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wgf/discrete_energy.hpp"
#include "wgf/gap_stats.hpp"

namespace wgf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivEps = 1e-300;

// Curvature-based step cap for the explicit scheme. The smooth branches of
// the velocity field have Jacobian entries of size N^2 |psi'(N dx)|, so the
// step must resolve that scale or gap perturbations oscillate.
double stability_dt(const ParticleState& state, const InternalEnergy& energy,
                    double eta) {
    const Geometry g = geometry(state);
    const double n = static_cast<double>(state.size());
    double max_dpsi = 0.0;
    for (double gap : g.gap) {
        if (std::isinf(gap)) continue;
        max_dpsi = std::max(max_dpsi, std::abs(energy.dpsi(n * gap)));
    }
    if (max_dpsi <= 0.0) return kInf;
    return eta / (4.0 * n * n * max_dpsi);
}

double objective(const ParticleState& y, const std::vector<double>& x0, double tau,
                 const InternalEnergy& energy) {
    const auto& y_pos = y.positions();
    double q = 0.0;
    for (std::size_t i = 0; i < y_pos.size(); ++i) {
        const double d = y_pos[i] - x0[i];
        q += d * d;
    }
    q /= static_cast<double>(y_pos.size());
    return 0.5 * q / tau + discrete_energy(y, energy);
}

bool ordered_in_domain(const std::vector<double>& x, const Domain& dom) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1])) return false;
    if (dom.is_interval()) {
        if (x.front() < -dom.halfwidth() || x.back() > dom.halfwidth()) return false;
    }
    return true;
}

TrajectorySample make_sample(double t, const ParticleState& state,
                             const InternalEnergy& energy, double slope,
                             double diss_integral) {
    const Geometry g = geometry(state);
    TrajectorySample s;
    s.t = t;
    s.positions = state.positions();
    s.energy = discrete_energy(state, energy);
    s.slope = slope;
    s.min_dx = g.min_interior_gap();
    s.max_dx = g.max_interior_gap();
    s.total_gap = gap_total(state);
    s.uniform_ratio = uniform_ratio(state);
    s.m2 = second_moment(state);
    s.diss_integral = diss_integral;
    return s;
}

}  // namespace

void StepperConfig::validate() const {
    if (!(safety > 0.0 && safety < 1.0)) throw input_error("safety must be in (0,1)");
    if (!(dt_init > 0.0)) throw input_error("dt_init must be > 0");
    if (!(t_end > 0.0)) throw input_error("t_end must be > 0");
    if (!(record_every > 0.0)) throw input_error("record_every must be > 0");
    if (!(prox_tol > 0.0)) throw input_error("prox_tol must be > 0");
    if (tie_tol < 0.0) throw input_error("tie_tol must be >= 0");
}

const TrajectorySample& Trajectory::at_time(double t, double tol) const {
    for (const auto& s : samples)
        if (std::abs(s.t - t) <= tol) return s;
    throw input_error("no trajectory sample at requested time");
}

ParticleState Trajectory::state_at(std::size_t k) const {
    return ParticleState(samples.at(k).positions, domain);
}

double explicit_dt_bound(const ParticleState& state, const Subgradient& z, double eta) {
    const Geometry g = geometry(state);
    double max_z = 0.0;
    for (double zi : z.z) max_z = std::max(max_z, std::abs(zi));
    return eta * g.min_interior_gap() / (max_z + kDivEps);
}

ParticleState step_explicit(const ParticleState& state, const InternalEnergy& energy,
                            double dt, double tie_tol, PinnedEnds pinned) {
    if (!(dt > 0.0)) throw input_error("dt must be > 0");
    const Subgradient s = minimal_norm(state, energy, tie_tol);
    std::vector<double> y = state.positions();
    const int n = state.size();
    for (int i = 0; i < n; ++i) {
        if ((i == 0 && pinned.left) || (i == n - 1 && pinned.right)) continue;
        y[i] -= dt * s.z[i];
    }
    if (!ordered_in_domain(y, state.domain()))
        throw numerical_error("explicit step rejected: ordering violated");
    return ParticleState(std::move(y), state.domain());
}

ParticleState step_proximal(const ParticleState& state, const InternalEnergy& energy,
                            double tau, double prox_tol, PinnedEnds pinned,
                            double tie_tol) {
    if (!(tau > 0.0)) throw input_error("tau must be > 0");
    const std::vector<double>& x0 = state.positions();
    const int n = state.size();

    // Work in the displacement d = y - x so the optimality residual
    // d/tau + z(y) never suffers cancellation for small tau.
    std::vector<double> d(n, 0.0);
    const auto positions_of = [&](const std::vector<double>& dd) {
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = x0[i] + dd[i];
        return y;
    };
    const auto residual_of = [&](const std::vector<double>& dd,
                                 std::vector<double>* grad_out) {
        ParticleState ys(positions_of(dd), state.domain());
        std::vector<double> shift(n);
        for (int i = 0; i < n; ++i) shift[i] = dd[i] / tau;
        std::vector<double> grad = shifted_minimal_selection(
            ys, energy, tie_tol, pinned.left, pinned.right, shift);
        const double res = weighted_norm(grad);
        if (grad_out) *grad_out = std::move(grad);
        return res;
    };
    const auto objective_of = [&](const std::vector<double>& dd) {
        double q = 0.0;
        for (double di : dd) q += di * di;
        q /= n;
        return 0.5 * q / tau +
               discrete_energy(ParticleState(positions_of(dd), state.domain()), energy);
    };

    std::vector<double> grad;
    double res = residual_of(d, &grad);
    double beta = tau;  // natural scale set by the quadratic term
    constexpr int kMaxIter = 100000;

    for (int iter = 0; iter < kMaxIter; ++iter) {
        if (res <= prox_tol) return ParticleState(positions_of(d), state.domain());

        const double g_cur = objective_of(d);
        // Nonsmooth objectives flatten near the minimiser faster than FP can
        // resolve; accept any non-increase above the rounding floor and let
        // the residual criterion terminate.
        const double noise = 1e-14 * (std::abs(g_cur) + 1.0);
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            std::vector<double> d_try = d;
            for (int i = 0; i < n; ++i) {
                if ((i == 0 && pinned.left) || (i == n - 1 && pinned.right)) continue;
                d_try[i] -= beta * grad[i];
            }
            if (ordered_in_domain(positions_of(d_try), state.domain())) {
                std::vector<double> grad_try;
                const double res_try = residual_of(d_try, &grad_try);
                const double g_try = objective_of(d_try);
                if (res_try < res ||
                    g_try <= g_cur - 0.25 * beta * res * res + noise) {
                    d = std::move(d_try);
                    grad = std::move(grad_try);
                    res = res_try;
                    accepted = true;
                    break;
                }
            }
            beta *= 0.5;
        }
        if (!accepted) throw numerical_error("proximal step: line search failed");
        beta = std::min(beta * 2.0, tau);
    }
    throw numerical_error("proximal step: inner solver did not reach prox_tol");
}

Trajectory simulate(const ParticleState& state0, const InternalEnergy& energy,
                    const StepperConfig& cfg) {
    cfg.validate();
    PinnedEnds pinned;
    pinned.left = state0.left_on_boundary();
    pinned.right = state0.right_on_boundary();

    Trajectory traj;
    traj.domain = state0.domain();
    traj.n = state0.size();
    traj.pinned_left = pinned.left;
    traj.pinned_right = pinned.right;

    const double t_end = cfg.t_end;
    ParticleState state = state0;
    double t = 0.0;
    double diss = 0.0;
    long record_k = 0;

    if (cfg.scheme == Scheme::Proximal) {
        Subgradient z0 = sliding_selection(state, energy, cfg.tie_tol, pinned.left,
                                           pinned.right);
        traj.samples.push_back(make_sample(0.0, state, energy, z0.norm_w, 0.0));
        double prev_slope_sq = z0.norm_w * z0.norm_w;
        while (t < t_end * (1.0 - 1e-14)) {
            const double next_record = std::min(t_end, (record_k + 1) * cfg.record_every);
            const double tau = std::min(cfg.dt_init, next_record - t);
            ParticleState next =
                step_proximal(state, energy, tau, cfg.prox_tol, pinned, cfg.tie_tol);
            // Slope of the step seen as a metric-speed estimate.
            std::vector<double> v(state.size());
            for (int i = 0; i < state.size(); ++i)
                v[i] = (next.position(i) - state.position(i)) / tau;
            const double slope = weighted_norm(v);
            diss += 0.5 * (prev_slope_sq + slope * slope) * tau;
            prev_slope_sq = slope * slope;
            state = std::move(next);
            t += tau;
            if (t >= next_record * (1.0 - 1e-14)) {
                t = next_record;
                if (next_record < t_end) ++record_k;
                traj.samples.push_back(make_sample(t, state, energy, slope, diss));
            }
        }
        return traj;
    }

    // Explicit scheme.
    Subgradient z = sliding_selection(state, energy, cfg.tie_tol, pinned.left,
                                      pinned.right);
    traj.samples.push_back(make_sample(0.0, state, energy, z.norm_w, 0.0));

    const long max_steps = 400000000L;
    for (long step = 0; step < max_steps; ++step) {
        if (t >= t_end * (1.0 - 1e-14)) break;

        const Geometry g = geometry(state);
        const int n = state.size();
        double max_z = 0.0;
        for (double zi : z.z) max_z = std::max(max_z, std::abs(zi));

        const double next_record = std::min(t_end, (record_k + 1) * cfg.record_every);
        double dt = std::min(cfg.dt_init, next_record - t);
        dt = std::min(dt, cfg.safety * g.min_interior_gap() / (max_z + kDivEps));
        dt = std::min(dt, stability_dt(state, energy, cfg.safety));

        // Land the step exactly on the earliest gap-tie crossing so the
        // next step continues on the tie manifold (no chattering across it).
        std::vector<double> rate(n + 1, 0.0);  // d(gap_j)/dt for interior gaps
        for (int j = 1; j < n; ++j) rate[j] = -z.z[j] + z.z[j - 1];
        for (int j = 1; j + 1 < n; ++j) {
            const double d0 = g.gap[j] - g.gap[j + 1];
            const double scale = std::min(g.gap[j], g.gap[j + 1]);
            if (std::abs(d0) <= cfg.tie_tol * scale) continue;  // already tied
            const double dd = rate[j] - rate[j + 1];
            if (d0 * dd >= 0.0) continue;  // moving apart or parallel
            const double t_cross = -d0 / dd;
            if (t_cross < dt) dt = std::max(t_cross, 0.0);
        }
        if (dt <= 0.0) dt = 1e-14 * std::max(1.0, t_end);

        std::vector<double> y = state.positions();
        for (int i = 0; i < n; ++i) {
            if ((i == 0 && pinned.left) || (i == n - 1 && pinned.right)) continue;
            y[i] -= dt * z.z[i];
        }
        if (!ordered_in_domain(y, state.domain())) {
            // Only reachable if the dt bound was defeated by rounding.
            dt *= 0.5;
            y = state.positions();
            for (int i = 0; i < n; ++i) {
                if ((i == 0 && pinned.left) || (i == n - 1 && pinned.right)) continue;
                y[i] -= dt * z.z[i];
            }
            if (!ordered_in_domain(y, state.domain()))
                throw numerical_error("simulate: step rejected twice");
        }
        state = ParticleState(std::move(y), state.domain());
        const double prev_slope_sq = z.norm_w * z.norm_w;
        t += dt;
        z = sliding_selection(state, energy, cfg.tie_tol, pinned.left, pinned.right);
        diss += 0.5 * (prev_slope_sq + z.norm_w * z.norm_w) * dt;

        if (t >= next_record * (1.0 - 1e-14)) {
            t = next_record;
            if (next_record < t_end) ++record_k;
            traj.samples.push_back(make_sample(t, state, energy, z.norm_w, diss));
        }
    }
    if (t < t_end * (1.0 - 1e-14))
        throw numerical_error("simulate: step budget exhausted before t_end");
    return traj;
}

}  // namespace wgf
