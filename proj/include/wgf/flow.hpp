#pragma once

#include <optional>
#include <vector>

#include "wgf/internal_energy.hpp"
#include "wgf/particle_state.hpp"
#include "wgf/subgradient.hpp"

namespace wgf {

enum class Scheme { Explicit, Proximal };

struct StepperConfig {
    Scheme scheme = Scheme::Explicit;
    double dt_init = 1e-3;       // explicit: dt cap; proximal: the fixed tau
    double safety = 0.2;         // eta in (0,1)
    double t_end = 1.0;
    double record_every = 1e-2;
    double prox_tol = 1e-10;
    double tie_tol = kDefaultTieTol;

    void validate() const;
};

struct TrajectorySample {
    double t = 0.0;
    std::vector<double> positions;
    double energy = 0.0;
    double slope = 0.0;          // |z|_w of the integrated selection
    double min_dx = 0.0;         // over interior gaps dx_2..dx_N
    double max_dx = 0.0;
    double total_gap = 0.0;
    double uniform_ratio = 0.0;
    double m2 = 0.0;
    double diss_integral = 0.0;  // cumulative integral of slope^2 up to t
};

struct Trajectory {
    Domain domain = Domain::whole_line();
    int n = 0;
    bool pinned_left = false;
    bool pinned_right = false;
    std::vector<TrajectorySample> samples;

    const TrajectorySample& at_time(double t, double tol = 1e-9) const;
    ParticleState state_at(std::size_t k) const;
};

struct PinnedEnds {
    bool left = false;
    bool right = false;
};

// Largest explicit step honouring the ordering contract:
// eta * min interior gap / (max |z| + eps).
double explicit_dt_bound(const ParticleState& state, const Subgradient& z, double eta);

// One explicit Euler step x <- x - dt * z on the case-table minimal-norm
// selection. Pinned particles stay put. Throws numerical_error when the
// ordering breaks, which the dt bound prevents.
ParticleState step_explicit(const ParticleState& state, const InternalEnergy& energy,
                            double dt, double tie_tol = kDefaultTieTol,
                            PinnedEnds pinned = {});

// One minimizing-movement step: the unique minimiser of
// (1/2 tau) |y - x|_w^2 + E_N(y) over ordered in-domain configurations.
// Terminates when the weighted first-order residual drops below prox_tol.
ParticleState step_proximal(const ParticleState& state, const InternalEnergy& energy,
                            double tau, double prox_tol = 1e-10,
                            PinnedEnds pinned = {}, double tie_tol = kDefaultTieTol);

// Integrates the gradient-flow inclusion from state0 up to cfg.t_end and
// records diagnostics every cfg.record_every time units (plus t = 0 and
// t = T). Boundary particles that start on the interval boundary are pinned
// for the whole run. The explicit scheme recomputes dt each step from the
// ordering bound, a curvature (stability) bound and the next record time,
// and lands steps exactly on gap-tie crossings so the subsequent motion
// follows the tie manifold instead of chattering across it.
Trajectory simulate(const ParticleState& state0, const InternalEnergy& energy,
                    const StepperConfig& cfg);

}  // namespace wgf
