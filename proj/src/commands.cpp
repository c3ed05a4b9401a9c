#include "wgf/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <random>

#include <nlohmann/json.hpp>

#include "wgf/discrete_energy.hpp"
#include "wgf/gap_stats.hpp"
#include "wgf/io.hpp"
#include "wgf/oracles.hpp"
#include "wgf/quadrature.hpp"
#include "wgf/references.hpp"
#include "wgf/serfaty.hpp"
#include "wgf/transport.hpp"

namespace wgf {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw input_error("cannot create output directory " + dir);
}

int thread_budget() {
    if (const char* env = std::getenv("WGF_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot write " + path);
    fn(os);
}

// Least-squares slope of log|err| against log N; err entries <= 0 are
// clipped to avoid log of zero (they only make the fit steeper).
double loglog_slope(const std::vector<int>& ns, const std::vector<double>& errs) {
    const std::size_t k = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = std::log(static_cast<double>(ns[i]));
        const double y = std::log(std::max(std::abs(errs[i]), 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<Trajectory> run_sweep(const RunConfig& cfg) {
    const int threads = thread_budget();
    std::vector<Trajectory> trajs(cfg.n_list.size());
    if (threads <= 1 || cfg.n_list.size() <= 1) {
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
            trajs[i] = simulate(cfg.make_initial_state(cfg.n_list[i]), cfg.energy,
                                cfg.stepper);
        return trajs;
    }
    std::vector<std::future<Trajectory>> futures;
    futures.reserve(cfg.n_list.size());
    for (int n : cfg.n_list)
        futures.push_back(std::async(std::launch::async, [&cfg, n] {
            return simulate(cfg.make_initial_state(n), cfg.energy, cfg.stepper);
        }));
    for (std::size_t i = 0; i < futures.size(); ++i) trajs[i] = futures[i].get();
    return trajs;
}

void write_trajectories(const RunConfig& cfg, const std::vector<Trajectory>& trajs) {
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        const std::string base =
            cfg.output_dir + "/trajectory_N" + std::to_string(cfg.n_list[i]);
        write_file(base + ".csv", [&](std::ostream& os) {
            write_trajectory_csv(os, trajs[i]);
        });
        write_file(base + ".json", [&](std::ostream& os) {
            write_trajectory_json(os, trajs[i]);
        });
    }
}

// c_N(T) = (1/N) Psi^{-1}(N^2 T + Psi(a2)) with Psi an antiderivative of
// 1/psi: x^2/2 for the heat energy, x^{m+1}/(m+1) for power laws.
double gap_bound_c(const InternalEnergy& energy, int n, double t, double a2) {
    const double nn = static_cast<double>(n);
    if (energy.kind() == InternalEnergy::Kind::Heat)
        return std::sqrt(2.0 * t + (a2 / nn) * (a2 / nn));
    if (energy.kind() == InternalEnergy::Kind::PowerLaw) {
        const double m = energy.exponent();
        return std::pow((m + 1.0) * nn * nn * t + std::pow(a2, m + 1.0), 1.0 / (m + 1.0)) /
               nn;
    }
    throw unsupported_error("gap bound needs a closed-form antiderivative of 1/psi");
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
    ensure_output_dir(cfg.output_dir);
    const std::vector<Trajectory> trajs = run_sweep(cfg);
    write_trajectories(cfg, trajs);
    return kExitOk;
}

int cmd_converge(const RunConfig& cfg) {
    if (cfg.reference == "none")
        throw input_error("converge needs a reference solution");
    ensure_output_dir(cfg.output_dir);
    const std::vector<Trajectory> trajs = run_sweep(cfg);
    write_trajectories(cfg, trajs);

    std::function<double(double)> ref_energy_at, ref_fisher_at;
    std::function<SmoothProfile(double)> ref_profile_at;
    if (cfg.reference == "heat_neumann") {
        if (cfg.energy.kind() != InternalEnergy::Kind::Heat)
            throw input_error("heat_neumann reference requires the heat energy");
        std::vector<HeatNeumannReference::Mode> modes;
        if (cfg.init_profile == "cosine")
            modes.push_back({2, cfg.init_amplitude});
        else if (cfg.init_profile != "uniform")
            throw input_error("heat_neumann reference needs a cosine or uniform init");
        auto ref = std::make_shared<HeatNeumannReference>(cfg.domain.halfwidth(), modes);
        const InternalEnergy energy = cfg.energy;
        ref_energy_at = [ref, energy](double t) { return ref->energy(t, energy); };
        ref_fisher_at = [ref, energy](double t) { return ref->fisher(t, energy); };
        ref_profile_at = [ref](double t) { return ref->profile_at(t); };
    } else {  // barenblatt
        if (cfg.energy.kind() != InternalEnergy::Kind::PowerLaw)
            throw input_error("barenblatt reference requires a pme energy");
        auto ref = std::make_shared<BarenblattReference>(cfg.energy.exponent());
        const InternalEnergy energy = cfg.energy;
        const double t0 = cfg.init_t0;
        ref_energy_at = [ref, energy, t0](double t) { return ref->energy(t0 + t, energy); };
        ref_fisher_at = [ref, energy, t0](double t) { return ref->fisher(t0 + t, energy); };
    }

    const SerfatyReport rep = serfaty_report(trajs, ref_energy_at, ref_fisher_at);
    write_file(cfg.output_dir + "/report.csv",
               [&](std::ostream& os) { write_serfaty_csv(os, rep); });

    // Order table: errors at final time vs N, their fitted slopes, and the
    // whole-line inter-particle gap bound.
    const double t_final = cfg.stepper.t_end;
    std::vector<double> d2_errors, energy_errors, slope_errors, max_dx_final, c_bound;
    std::vector<bool> bound_ok;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        const auto& tr = trajs[i];
        const std::size_t kt = tr.samples.size();
        const SerfatyRow& row = rep.rows[i * kt + (kt - 1)];
        energy_errors.push_back(std::abs(row.disc_energy - row.cont_energy));
        slope_errors.push_back(std::abs(row.disc_slope - row.cont_slope));
        if (ref_profile_at) {
            const SmoothProfile prof = ref_profile_at(t_final);
            const QuantileFunction q = QuantileFunction::from_evaluator(
                [&prof](double eta) { return prof.quantile(eta); });
            d2_errors.push_back(d2_atomic_quantile(tr.state_at(kt - 1), q));
        }
        if (tr.domain.is_whole_line()) {
            const double a2 = tr.n * tr.samples.front().max_dx;
            double worst = 0.0;
            for (const auto& s : tr.samples) worst = std::max(worst, s.max_dx);
            max_dx_final.push_back(worst);
            const double c = gap_bound_c(cfg.energy, tr.n, t_final, a2);
            c_bound.push_back(c);
            bound_ok.push_back(worst <= c * (1.0 + 1e-9));
        }
    }

    json j;
    j["N"] = cfg.n_list;
    j["T"] = t_final;
    j["energy_error_T"] = energy_errors;
    j["slope_error_T"] = slope_errors;
    j["energy_trend"] = rep.energy_trend;
    j["slope_trend"] = rep.slope_trend;
    j["speed_trend"] = rep.speed_trend;
    if (cfg.n_list.size() >= 2) {
        j["energy_error_slope"] = loglog_slope(cfg.n_list, energy_errors);
        if (!d2_errors.empty()) j["d2_error_slope"] = loglog_slope(cfg.n_list, d2_errors);
    }
    if (!d2_errors.empty()) j["d2_T"] = d2_errors;
    if (!c_bound.empty()) {
        j["max_dx"] = max_dx_final;
        j["c_N_T"] = c_bound;
        j["gap_bound_ok"] = bound_ok;
    }
    write_file(cfg.output_dir + "/report.json",
               [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    return kExitOk;
}

int cmd_gamma(const RunConfig& cfg) {
    ensure_output_dir(cfg.output_dir);
    const std::vector<int>& ns = cfg.gamma_n_list.empty() ? cfg.n_list : cfg.gamma_n_list;
    if (ns.empty()) throw input_error("gamma needs an N list");

    const bool mollified_pipeline = !cfg.gamma_delta_list.empty();
    if (mollified_pipeline && cfg.gamma_delta_list.size() != ns.size())
        throw input_error("gamma delta_list must pair with the N list");

    // Target measure: raw source for the mollified pipeline, otherwise the
    // smooth profile itself.
    double e_target = 0.0;
    std::function<double(double)> target_quantile;
    if (mollified_pipeline) {
        const PiecewiseDensity raw = cfg.make_source_density();
        e_target = continuum_energy(raw, cfg.energy, 1e-11);
        const QuantileFunction q = QuantileFunction::from_cdf(
            [&raw](double x) { return raw.cdf(x); }, raw.support_left(),
            raw.support_right());
        target_quantile = [q](double eta) { return q(eta); };
    } else {
        const SmoothProfile prof = cfg.make_profile();
        e_target = prof.energy(cfg.energy, 1e-11);
        target_quantile = [prof](double eta) { return prof.quantile(eta); };
    }

    json rows = json::array();
    std::vector<double> energy_gaps, d2s;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        RunConfig local = cfg;
        if (mollified_pipeline) local.init_delta = cfg.gamma_delta_list[i];
        const SmoothProfile prof = local.make_profile();
        const ParticleState wp = well_prepared(prof, ns[i], cfg.domain);
        const double en = discrete_energy(wp, cfg.energy);
        const double gap = en - e_target;
        const double d2 = d2_atomic_quantile(
            wp, QuantileFunction::from_evaluator(target_quantile));
        energy_gaps.push_back(gap);
        d2s.push_back(d2);
        json row;
        row["N"] = ns[i];
        if (mollified_pipeline) row["delta"] = cfg.gamma_delta_list[i];
        row["E_N"] = en;
        row["E_target"] = e_target;
        row["energy_gap"] = gap;
        row["d2"] = d2;
        rows.push_back(std::move(row));
    }

    json j;
    j["rows"] = rows;
    j["E_target"] = e_target;
    if (ns.size() >= 2) {
        j["energy_gap_slope"] = loglog_slope(ns, energy_gaps);
        j["d2_slope"] = loglog_slope(ns, d2s);
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < ns.size(); ++i)
            monotone = monotone && std::abs(energy_gaps[i + 1]) <=
                                       std::abs(energy_gaps[i]) * (1.0 + 1e-9);
        j["energy_gap_monotone"] = monotone;
    }
    write_file(cfg.output_dir + "/report.json",
               [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    write_file(cfg.output_dir + "/report.csv", [&](std::ostream& os) {
        os << "N,delta,E_N,E_target,energy_gap,d2\n";
        for (std::size_t i = 0; i < ns.size(); ++i)
            os << ns[i] << ','
               << (mollified_pipeline ? format_double(cfg.gamma_delta_list[i]) : "")
               << ',' << format_double(energy_gaps[i] + e_target) << ','
               << format_double(e_target) << ',' << format_double(energy_gaps[i]) << ','
               << format_double(d2s[i]) << "\n";
    });
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg) {
    ensure_output_dir(cfg.output_dir);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    CaseTable table = case_table();
    if (cfg.oracle_corrupt_table) {
        // Negative control: flip one non-tie row.
        auto& c = table.coef[CaseTable::index(Side::L, Side::R, Side::R)];
        c.first += 1.0;
    }

    const auto random_state = [&](int n, bool with_ties) {
        std::vector<double> gaps(n - 1);
        for (double& g : gaps) g = 0.2 + unit(rng);
        if (with_ties && n >= 3) {
            // Duplicate a random gap to engineer an exact tie.
            std::uniform_int_distribution<int> pick(1, n - 2);
            const int j = pick(rng);
            gaps[j] = gaps[j - 1];
        }
        std::vector<double> x(n);
        x[0] = -1.0 + unit(rng);
        for (int i = 1; i < n; ++i) x[i] = x[i - 1] + gaps[i - 1];
        return ParticleState(std::move(x), Domain::whole_line());
    };

    json checks = json::array();
    bool all_pass = true;
    const auto record = [&](const std::string& name, int cases, double max_err,
                            bool pass) {
        json c;
        c["name"] = name;
        c["cases"] = cases;
        c["max_error"] = max_err;
        c["pass"] = pass;
        checks.push_back(std::move(c));
        all_pass = all_pass && pass;
    };

    // Case table against central finite differences at tie-free states.
    {
        double max_rel = 0.0;
        for (int k = 0; k < cfg.oracle_gradient_cases; ++k) {
            const InternalEnergy& energy =
                (k % 2 == 0) ? InternalEnergy::heat() : InternalEnergy::power_law(2.0);
            std::uniform_int_distribution<int> pick_n(2, 8);
            const ParticleState s = random_state(pick_n(rng), false);
            const Subgradient z = minimal_norm_with_table(s, energy, kDefaultTieTol, table);
            const std::vector<double> fd = fd_gradient_z(s, energy);
            for (int i = 0; i < s.size(); ++i) {
                const double scale = std::max(std::abs(fd[i]), 1e-8);
                max_rel = std::max(max_rel, std::abs(z.z[i] - fd[i]) / scale);
            }
        }
        record("table_vs_fd_gradient", cfg.oracle_gradient_cases, max_rel,
               max_rel <= 1e-5);
    }

    // Minimality against multiplier-vertex candidates at engineered ties.
    {
        double max_excess = 0.0;
        for (int k = 0; k < cfg.oracle_tie_cases; ++k) {
            const InternalEnergy& energy =
                (k % 2 == 0) ? InternalEnergy::heat() : InternalEnergy::power_law(2.0);
            std::uniform_int_distribution<int> pick_n(3, 8);
            const ParticleState s = random_state(pick_n(rng), true);
            const Subgradient z = minimal_norm_with_table(s, energy, kDefaultTieTol, table);
            const Subgradient oracle = lambda_vertex_minimal(s, energy);
            max_excess = std::max(max_excess, z.norm_w - oracle.norm_w);
            const auto candidates = lambda_vertex_candidates(s, energy);
            for (int i = 0; i < s.size(); ++i)
                for (double cand : candidates[i])
                    max_excess = std::max(max_excess, std::abs(z.z[i]) - std::abs(cand));
        }
        record("table_minimality_at_ties", cfg.oracle_tie_cases, max_excess,
               max_excess <= 1e-10);
    }

    // Sorted-coupling transport distance against permutation enumeration.
    {
        double max_err = 0.0;
        for (int k = 0; k < cfg.oracle_transport_cases; ++k) {
            std::uniform_int_distribution<int> pick_n(2, 6);
            const int n = pick_n(rng);
            const ParticleState a = random_state(n, false);
            const ParticleState b = random_state(n, false);
            max_err = std::max(max_err,
                               std::abs(d2_atomic_atomic(a, b) - d2_permutation_oracle(a, b)));
        }
        record("d2_vs_permutation_oracle", cfg.oracle_transport_cases, max_err,
               max_err <= 1e-12);
    }

    // psi inversion round trip on a log grid.
    {
        double max_rel = 0.0;
        for (const InternalEnergy& energy :
             {InternalEnergy::heat(), InternalEnergy::power_law(2.0),
              InternalEnergy::power_law(3.5)}) {
            for (int k = 0; k <= 100; ++k) {
                const double x = std::pow(10.0, -3.0 + 6.0 * k / 100.0);
                const double back = energy.psi_inverse(energy.psi(x));
                max_rel = std::max(max_rel, std::abs(back - x) / x);
            }
        }
        record("psi_inverse_roundtrip", 303, max_rel, max_rel <= 1e-10);
    }

    json j;
    j["seed"] = cfg.seed;
    j["corrupt_table"] = cfg.oracle_corrupt_table;
    j["checks"] = checks;
    j["all_pass"] = all_pass;
    write_file(cfg.output_dir + "/report.json",
               [&](std::ostream& os) { os << j.dump(2) << "\n"; });
    for (const auto& c : checks)
        std::printf("[%s] %s (max error %.3e)\n",
                    c["pass"].get<bool>() ? "PASS" : "FAIL",
                    c["name"].get<std::string>().c_str(), c["max_error"].get<double>());
    return all_pass ? kExitOk : kExitOracle;
}

}  // namespace wgf
