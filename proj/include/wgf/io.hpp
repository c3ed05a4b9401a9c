#pragma once

#include <iosfwd>
#include <string>

#include "wgf/flow.hpp"
#include "wgf/serfaty.hpp"

namespace wgf {

// All numeric output uses 17 significant digits so reruns are byte-stable.
std::string format_double(double v);

// Trajectory CSV: header row, then per sample
// t,E_N,g_N,min_dx,max_dx,total_gap,uniform_ratio,M2,x_1..x_N.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_json(std::ostream& os, const Trajectory& traj);

// Single-row particle-state CSV: N, then the positions.
void write_state_csv(std::ostream& os, const ParticleState& state);
ParticleState read_state_csv(std::istream& is, const Domain& domain);

// Serfaty report in long format: t,N,quantity,discrete,continuum.
void write_serfaty_csv(std::ostream& os, const SerfatyReport& report);
void write_serfaty_json(std::ostream& os, const SerfatyReport& report);

}  // namespace wgf
