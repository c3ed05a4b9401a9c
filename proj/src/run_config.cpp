#include "wgf/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wgf/expression.hpp"
#include "wgf/io.hpp"
#include "wgf/references.hpp"

namespace wgf {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    if (!j.is_object()) throw input_error("config: " + where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw input_error("config: unknown key '" + key + "' in " + where);
    }
}

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw input_error("config: '" + key + "' must be a number");
    return j[key].get<double>();
}

std::string get_str(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw input_error("config: '" + key + "' must be a string");
    return j[key].get<std::string>();
}

// Applies "a.b.c=value" overrides onto the JSON tree; values parse as JSON
// when possible and fall back to strings.
void apply_override(json& j, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw input_error("override must look like key.path=value: " + spec);
    const std::string path = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);
    json* node = &j;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw input_error("override has an empty key path: " + spec);
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) node = &((*node)[parts[k]]);
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded())
        (*node)[parts.back()] = value;
    else
        (*node)[parts.back()] = parsed;
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path,
                                    const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), overrides);
}

RunConfig RunConfig::from_json_text(const std::string& text,
                                    const std::vector<std::string>& overrides) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("config is not valid JSON");
    for (const auto& o : overrides) apply_override(j, o);

    reject_unknown(j, {"domain", "energy", "N", "N_list", "T", "stepper", "init",
                       "reference", "gamma", "oracle", "output", "seed"},
                   "config root");

    RunConfig cfg;

    if (j.contains("domain")) {
        const json& d = j["domain"];
        reject_unknown(d, {"type", "halfwidth"}, "domain");
        const std::string type = get_str(d, "type", "interval");
        if (type == "interval")
            cfg.domain = Domain::interval(get_num(d, "halfwidth", 1.0));
        else if (type == "line")
            cfg.domain = Domain::whole_line();
        else
            throw input_error("config: domain.type must be 'interval' or 'line'");
    }

    if (j.contains("energy")) {
        const json& e = j["energy"];
        reject_unknown(e, {"type", "m", "H", "dH", "d2H", "psi_inf"}, "energy");
        const std::string type = get_str(e, "type", "heat");
        if (type == "heat") {
            cfg.energy = InternalEnergy::heat();
        } else if (type == "pme") {
            cfg.energy = InternalEnergy::power_law(get_num(e, "m", 2.0));
        } else if (type == "custom") {
            if (!e.contains("H") || !e.contains("dH") || !e.contains("d2H"))
                throw input_error("config: custom energy needs H, dH and d2H");
            cfg.energy = InternalEnergy::custom(
                parse_expression(e["H"].get<std::string>()),
                parse_expression(e["dH"].get<std::string>()),
                parse_expression(e["d2H"].get<std::string>()),
                get_num(e, "psi_inf", 0.0));
        } else {
            throw input_error("config: energy.type must be heat, pme or custom");
        }
    }

    if (j.contains("N") && j.contains("N_list"))
        throw input_error("config: give either N or N_list, not both");
    if (j.contains("N")) cfg.n_list = {j["N"].get<int>()};
    if (j.contains("N_list")) cfg.n_list = j["N_list"].get<std::vector<int>>();
    for (int n : cfg.n_list)
        if (n < 2) throw input_error("config: every N must be >= 2");

    if (j.contains("T")) cfg.stepper.t_end = j["T"].get<double>();

    if (j.contains("stepper")) {
        const json& s = j["stepper"];
        reject_unknown(s, {"scheme", "dt_init", "safety", "record_every", "prox_tol",
                           "tie_tol"},
                       "stepper");
        const std::string scheme = get_str(s, "scheme", "explicit");
        if (scheme == "explicit")
            cfg.stepper.scheme = Scheme::Explicit;
        else if (scheme == "proximal")
            cfg.stepper.scheme = Scheme::Proximal;
        else
            throw input_error("config: stepper.scheme must be explicit or proximal");
        cfg.stepper.dt_init = get_num(s, "dt_init", cfg.stepper.dt_init);
        cfg.stepper.safety = get_num(s, "safety", cfg.stepper.safety);
        cfg.stepper.record_every = get_num(s, "record_every", cfg.stepper.record_every);
        cfg.stepper.prox_tol = get_num(s, "prox_tol", cfg.stepper.prox_tol);
        cfg.stepper.tie_tol = get_num(s, "tie_tol", cfg.stepper.tie_tol);
    }
    cfg.stepper.validate();

    if (j.contains("init")) {
        const json& i = j["init"];
        reject_unknown(i, {"profile", "amplitude", "sigma", "radius", "delta", "t0",
                           "positions_file"},
                       "init");
        cfg.init_profile = get_str(i, "profile", cfg.init_profile);
        cfg.init_amplitude = get_num(i, "amplitude", cfg.init_amplitude);
        cfg.init_sigma = get_num(i, "sigma", cfg.init_sigma);
        cfg.init_radius = get_num(i, "radius", cfg.init_radius);
        cfg.init_delta = get_num(i, "delta", cfg.init_delta);
        cfg.init_t0 = get_num(i, "t0", cfg.init_t0);
        cfg.positions_file = get_str(i, "positions_file", "");
        if (cfg.init_profile == "file" && cfg.positions_file.empty())
            throw input_error("config: init.profile=file needs positions_file");
    }

    if (j.contains("reference")) {
        const json& r = j["reference"];
        reject_unknown(r, {"type"}, "reference");
        cfg.reference = get_str(r, "type", "none");
        if (cfg.reference != "none" && cfg.reference != "heat_neumann" &&
            cfg.reference != "barenblatt")
            throw input_error("config: unknown reference type " + cfg.reference);
    }

    if (j.contains("gamma")) {
        const json& g = j["gamma"];
        reject_unknown(g, {"N_list", "delta_list"}, "gamma");
        if (g.contains("N_list")) cfg.gamma_n_list = g["N_list"].get<std::vector<int>>();
        if (g.contains("delta_list"))
            cfg.gamma_delta_list = g["delta_list"].get<std::vector<double>>();
    }

    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        reject_unknown(o, {"gradient_cases", "tie_cases", "transport_cases",
                           "corrupt_table"},
                       "oracle");
        cfg.oracle_gradient_cases =
            static_cast<int>(get_num(o, "gradient_cases", cfg.oracle_gradient_cases));
        cfg.oracle_tie_cases =
            static_cast<int>(get_num(o, "tie_cases", cfg.oracle_tie_cases));
        cfg.oracle_transport_cases =
            static_cast<int>(get_num(o, "transport_cases", cfg.oracle_transport_cases));
        if (o.contains("corrupt_table"))
            cfg.oracle_corrupt_table = o["corrupt_table"].get<bool>();
    }

    cfg.output_dir = get_str(j, "output", cfg.output_dir);
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
    return cfg;
}

SmoothProfile RunConfig::make_profile() const {
    const double hw = domain.is_interval() ? domain.halfwidth() : init_radius;
    if (init_profile == "uniform") return SmoothProfile::uniform(hw);
    if (init_profile == "linear") {
        if (domain.is_interval() && std::abs(domain.halfwidth() - 1.0) > 1e-12)
            throw input_error("linear profile lives on [-1,1]");
        return SmoothProfile::linear_ramp();
    }
    if (init_profile == "cosine") return SmoothProfile::cosine(hw, init_amplitude);
    if (init_profile == "gaussian") {
        const double s = init_sigma, r = init_radius;
        if (!(s > 0.0 && r > 0.0)) throw input_error("gaussian profile needs sigma, radius > 0");
        const double z =
            std::erf(r / (s * std::sqrt(2.0)));  // mass of exp(-x^2/2s^2)/(s sqrt(2pi)) on [-r,r]
        const double c = 1.0 / (z * s * std::sqrt(2.0 * 3.141592653589793238462643));
        return SmoothProfile(
            [c, s](double x) { return c * std::exp(-0.5 * x * x / (s * s)); },
            [c, s](double x) { return -c * x / (s * s) * std::exp(-0.5 * x * x / (s * s)); },
            [s, r, z](double x) {
                return (std::erf(x / (s * std::sqrt(2.0))) + std::erf(r / (s * std::sqrt(2.0)))) /
                       (2.0 * z);
            },
            -r, r, "gaussian");
    }
    if (init_profile == "uniform_mollified" || init_profile == "gaussian_mollified" ||
        init_profile == "barenblatt")
        return mollify(make_source_density(), init_delta, domain);
    throw input_error("no smooth profile for init.profile=" + init_profile);
}

PiecewiseDensity RunConfig::make_source_density() const {
    const double hw = domain.is_interval() ? domain.halfwidth() : init_radius;
    if (init_profile == "uniform_mollified") {
        std::vector<PiecewiseDensity::Piece> pieces(1);
        pieces[0].a = -hw;
        pieces[0].b = hw;
        pieces[0].constant = true;
        pieces[0].value = 0.5 / hw;
        return PiecewiseDensity(std::move(pieces), 1.0);
    }
    if (init_profile == "gaussian_mollified") {
        const double s = init_sigma, r = init_radius;
        if (!(s > 0.0 && r > 0.0))
            throw input_error("gaussian source needs sigma, radius > 0");
        const double z = std::erf(r / (s * std::sqrt(2.0)));
        const double c = 1.0 / (z * s * std::sqrt(2.0 * 3.141592653589793238462643));
        std::vector<PiecewiseDensity::Piece> pieces(1);
        pieces[0].a = -r;
        pieces[0].b = r;
        pieces[0].constant = false;
        pieces[0].f = [c, s](double x) { return c * std::exp(-0.5 * x * x / (s * s)); };
        return PiecewiseDensity(std::move(pieces), 1.0);
    }
    if (init_profile == "barenblatt") {
        if (energy.kind() != InternalEnergy::Kind::PowerLaw)
            throw input_error("barenblatt init requires a pme energy");
        BarenblattReference ref(energy.exponent());
        const double t0 = init_t0;
        const double r = ref.support_radius(t0);
        std::vector<PiecewiseDensity::Piece> pieces(1);
        pieces[0].a = -r;
        pieces[0].b = r;
        pieces[0].constant = false;
        pieces[0].f = [ref, t0](double x) { return ref.density(t0, x); };
        return PiecewiseDensity(std::move(pieces), 1.0);
    }
    throw input_error("init.profile=" + init_profile + " has no source density");
}

ParticleState RunConfig::make_initial_state(int n) const {
    if (init_profile == "file") {
        std::ifstream in(positions_file);
        if (!in) throw input_error("cannot open positions file: " + positions_file);
        ParticleState s = read_state_csv(in, domain);
        if (s.size() != n)
            throw input_error("positions file N does not match requested N");
        return s;
    }
    return well_prepared(make_profile(), n, domain);
}

}  // namespace wgf
