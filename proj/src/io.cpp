#include "wgf/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wgf/errors.hpp"

namespace wgf {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,E_N,g_N,min_dx,max_dx,total_gap,uniform_ratio,M2";
    for (int i = 1; i <= traj.n; ++i) os << ",x_" << i;
    os << "\n";
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.energy) << ','
           << format_double(s.slope) << ',' << format_double(s.min_dx) << ','
           << format_double(s.max_dx) << ',' << format_double(s.total_gap) << ','
           << format_double(s.uniform_ratio) << ',' << format_double(s.m2);
        for (double x : s.positions) os << ',' << format_double(x);
        os << "\n";
    }
}

void write_trajectory_json(std::ostream& os, const Trajectory& traj) {
    json j;
    j["n"] = traj.n;
    j["domain"] = traj.domain.is_whole_line() ? "line" : "interval";
    if (traj.domain.is_interval()) j["halfwidth"] = traj.domain.halfwidth();
    j["pinned_left"] = traj.pinned_left;
    j["pinned_right"] = traj.pinned_right;
    for (const auto& s : traj.samples) {
        json row;
        row["t"] = s.t;
        row["E_N"] = s.energy;
        row["g_N"] = s.slope;
        row["min_dx"] = s.min_dx;
        row["max_dx"] = s.max_dx;
        row["total_gap"] = s.total_gap;
        row["uniform_ratio"] = s.uniform_ratio;
        row["M2"] = s.m2;
        row["x"] = s.positions;
        j["samples"].push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
}

void write_state_csv(std::ostream& os, const ParticleState& state) {
    os << state.size();
    for (double x : state.positions()) os << ',' << format_double(x);
    os << "\n";
}

ParticleState read_state_csv(std::istream& is, const Domain& domain) {
    std::string line;
    if (!std::getline(is, line)) throw input_error("state CSV: empty input");
    std::stringstream ss(line);
    std::string cell;
    if (!std::getline(ss, cell, ',')) throw input_error("state CSV: missing N");
    const int n = std::stoi(cell);
    std::vector<double> x;
    x.reserve(n);
    while (std::getline(ss, cell, ',')) x.push_back(std::stod(cell));
    if (static_cast<int>(x.size()) != n)
        throw input_error("state CSV: position count does not match N");
    return ParticleState(std::move(x), domain);
}

void write_serfaty_csv(std::ostream& os, const SerfatyReport& report) {
    os << "t,N,quantity,discrete,continuum\n";
    for (const auto& r : report.rows) {
        const auto row = [&](const char* q, double d, double c) {
            os << format_double(r.t) << ',' << r.n << ',' << q << ','
               << format_double(d) << ',' << format_double(c) << "\n";
        };
        row("speed2_int", r.disc_speed2_int, r.cont_speed2_int);
        row("energy", r.disc_energy, r.cont_energy);
        row("slope", r.disc_slope, r.cont_slope);
    }
}

void write_serfaty_json(std::ostream& os, const SerfatyReport& report) {
    json j;
    j["times"] = report.times;
    j["N"] = report.ns;
    j["energy_trend"] = report.energy_trend;
    j["slope_trend"] = report.slope_trend;
    j["speed_trend"] = report.speed_trend;
    for (const auto& r : report.rows) {
        json row;
        row["t"] = r.t;
        row["N"] = r.n;
        row["speed2_int"] = {{"discrete", r.disc_speed2_int},
                             {"continuum", r.cont_speed2_int}};
        row["energy"] = {{"discrete", r.disc_energy}, {"continuum", r.cont_energy}};
        row["slope"] = {{"discrete", r.disc_slope}, {"continuum", r.cont_slope}};
        j["rows"].push_back(std::move(row));
    }
    os << j.dump(2) << "\n";
}

}  // namespace wgf
