#pragma once

#include <functional>
#include <vector>

#include "wgf/flow.hpp"

namespace wgf {

// One (t, N) cell of the convergence study: discrete quantities from the
// trajectory against their continuum counterparts along the reference flow.
struct SerfatyRow {
    double t = 0.0;
    int n = 0;
    double disc_speed2_int = 0.0;  // trapezoid of g_N^2 on [0, t]
    double disc_energy = 0.0;      // E_N(mu_N(t))
    double disc_slope = 0.0;       // g_N(mu_N(t))
    double cont_speed2_int = 0.0;  // integral of I(rho(s)) on [0, t]
    double cont_energy = 0.0;      // E(rho(t))
    double cont_slope = 0.0;       // sqrt(I(rho(t)))
};

struct SerfatyReport {
    std::vector<double> times;
    std::vector<int> ns;
    std::vector<SerfatyRow> rows;  // grouped by N, then by time

    // Whether |discrete - continuum| is non-increasing in N at every
    // positive sample time (energies also checked at t = 0).
    bool energy_trend = false;
    bool slope_trend = false;
    bool speed_trend = false;
};

// Tabulates the three quantities of the convergence conditions for an
// N-indexed family of trajectories on a common time grid, against a
// reference solution supplied through its energy and Fisher information.
SerfatyReport serfaty_report(const std::vector<Trajectory>& trajectories,
                             const std::function<double(double)>& ref_energy_at,
                             const std::function<double(double)>& ref_fisher_at);

}  // namespace wgf
