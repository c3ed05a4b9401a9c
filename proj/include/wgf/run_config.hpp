#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgf/domain.hpp"
#include "wgf/flow.hpp"
#include "wgf/internal_energy.hpp"
#include "wgf/smooth_profile.hpp"

namespace wgf {

// Experiment manifest: a JSON config file plus --set key.path=value
// overrides (overrides win). Unknown keys are rejected.
struct RunConfig {
    Domain domain = Domain::interval(1.0);
    InternalEnergy energy = InternalEnergy::heat();

    std::vector<int> n_list = {50};
    StepperConfig stepper;

    // Initial data.
    std::string init_profile = "cosine";  // uniform|linear|cosine|gaussian|
                                          // uniform_mollified|gaussian_mollified|
                                          // barenblatt|file
    double init_amplitude = 0.25;   // cosine
    double init_sigma = 0.5;        // gaussian
    double init_radius = 1.0;       // gaussian / uniform on the line
    double init_delta = 0.2;        // mollified variants
    double init_t0 = 1.0;           // barenblatt start time
    std::string positions_file;

    // Reference solution for converge: none|heat_neumann|barenblatt.
    std::string reference = "none";

    // Gamma study schedule.
    std::vector<int> gamma_n_list;
    std::vector<double> gamma_delta_list;

    // Oracle suite sizes.
    int oracle_gradient_cases = 200;
    int oracle_tie_cases = 50;
    int oracle_transport_cases = 100;
    bool oracle_corrupt_table = false;  // negative control

    std::string output_dir = "out";
    unsigned long long seed = 1;

    static RunConfig from_json_file(const std::string& path,
                                    const std::vector<std::string>& overrides = {});
    static RunConfig from_json_text(const std::string& text,
                                    const std::vector<std::string>& overrides = {});

    // Builds the smooth profile named by init_profile (throws for "file").
    SmoothProfile make_profile() const;
    ParticleState make_initial_state(int n) const;

    // Pre-mollification density for the *_mollified and barenblatt profiles
    // (the raw target of gamma studies).
    PiecewiseDensity make_source_density() const;
};

}  // namespace wgf
