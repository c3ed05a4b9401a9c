#pragma once

#include "wgf/run_config.hpp"

namespace wgf {

// Exit codes shared by the CLI and the command implementations.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitOracle = 4;

// Runs the configured simulations and writes trajectory_N<k>.csv/.json
// under the output directory.
int cmd_simulate(const RunConfig& cfg);

// N-sweep against the configured reference solution: trajectories, the
// convergence report (report.csv/report.json) with fitted log-log error
// slopes, and the whole-line gap bound column where applicable.
int cmd_converge(const RunConfig& cfg);

// Discrete-vs-continuum energy study for well-prepared states, including
// the mollified pipeline when a delta schedule is given.
int cmd_gamma(const RunConfig& cfg);

// Brute-force oracle suite (finite differences, multiplier vertices,
// permutation transport); nonzero exit on any mismatch.
int cmd_oracle(const RunConfig& cfg);

}  // namespace wgf
