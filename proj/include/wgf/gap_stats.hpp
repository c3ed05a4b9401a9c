#pragma once

#include <cmath>

#include "wgf/particle_state.hpp"

namespace wgf {

// Summed uncovered length between consecutive blobs:
// sum_{i=1}^{N-1} (dx_{i+1} - r_i/2 - r_{i+1}/2).
inline double gap_total(const ParticleState& state) {
    const Geometry g = geometry(state);
    const int n = state.size();
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i)
        s += g.gap[i + 1] - 0.5 * g.r[i] - 0.5 * g.r[i + 1];
    return s;
}

// max_{i in 2..N-1} |dx_{i+1}/dx_i - 1| over interior gap ratios.
inline double uniform_ratio(const ParticleState& state) {
    const Geometry g = geometry(state);
    const int n = state.size();
    double m = 0.0;
    for (int j = 2; j <= n - 1; ++j) m = std::max(m, std::abs(g.gap[j] / g.gap[j - 1] - 1.0));
    return m;
}

}  // namespace wgf
