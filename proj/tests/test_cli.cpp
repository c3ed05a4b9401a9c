#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgf/commands.hpp"
#include "wgf/expression.hpp"
#include "wgf/io.hpp"

using namespace wgf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("wgf_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("expression parser") {
    auto f = parse_expression("x*log(x) + 2^3 - 1/(x+1)");
    CHECK(f(2.0) == doctest::Approx(2.0 * std::log(2.0) + 8.0 - 1.0 / 3.0).epsilon(1e-14));
    auto g = parse_expression("exp(-x^2)");
    CHECK(g(1.5) == doctest::Approx(std::exp(-2.25)).epsilon(1e-14));
    CHECK_THROWS_AS(parse_expression("x +"), input_error);
    CHECK_THROWS_AS(parse_expression("foo(x)"), input_error);
    CHECK_THROWS_AS(parse_expression("x) ("), input_error);
}

TEST_CASE("config parsing and validation") {
    const RunConfig cfg = RunConfig::from_json_text(R"({
        "domain": {"type": "interval", "halfwidth": 1.0},
        "energy": {"type": "pme", "m": 2.0},
        "N": 16,
        "T": 0.05,
        "stepper": {"scheme": "explicit", "record_every": 0.01},
        "init": {"profile": "uniform"},
        "output": "unused",
        "seed": 9
    })");
    CHECK(cfg.energy.kind() == InternalEnergy::Kind::PowerLaw);
    CHECK(cfg.n_list == std::vector<int>{16});
    CHECK(cfg.stepper.t_end == 0.05);
    CHECK(cfg.seed == 9);

    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"bogus": 1})"), input_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"stepper": {"dt": 1}})"), input_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"energy": {"type": "pme", "m": 0.5}})"),
                    input_error);
    CHECK_THROWS_AS(RunConfig::from_json_text("not json"), input_error);
}

TEST_CASE("overrides win over the file") {
    const RunConfig cfg = RunConfig::from_json_text(R"({"N": 8, "T": 1.0})",
                                                    {"T=0.25", "stepper.safety=0.1"});
    CHECK(cfg.stepper.t_end == 0.25);
    CHECK(cfg.stepper.safety == 0.1);
}

TEST_CASE("custom energy from expressions") {
    const RunConfig cfg = RunConfig::from_json_text(R"({
        "energy": {"type": "custom", "H": "x^2", "dH": "2*x", "d2H": "2"}
    })");
    CHECK(cfg.energy.psi(2.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("simulate writes deterministic CSV output") {
    const std::string dir1 = tmp_dir("sim1");
    const std::string dir2 = tmp_dir("sim2");
    const std::string base = R"({
        "domain": {"type": "interval", "halfwidth": 1.0},
        "energy": {"type": "heat"},
        "N": 12,
        "T": 0.01,
        "stepper": {"record_every": 0.002},
        "init": {"profile": "cosine", "amplitude": 0.2},
        "seed": 3
    })";
    RunConfig c1 = RunConfig::from_json_text(base, {"output=" + dir1});
    RunConfig c2 = RunConfig::from_json_text(base, {"output=" + dir2});
    CHECK(cmd_simulate(c1) == kExitOk);
    CHECK(cmd_simulate(c2) == kExitOk);
    const std::string a = slurp(fs::path(dir1) / "trajectory_N12.csv");
    const std::string b = slurp(fs::path(dir2) / "trajectory_N12.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.substr(0, 4) == "t,E_");

    // Uniform init: every row carries the same positions.
    const std::string dir3 = tmp_dir("sim3");
    RunConfig c3 = RunConfig::from_json_text(base, {"output=" + dir3,
                                                    "init.profile=uniform"});
    CHECK(cmd_simulate(c3) == kExitOk);
    std::ifstream in(fs::path(dir3) / "trajectory_N12.csv");
    std::string header, first, line;
    std::getline(in, header);
    std::getline(in, first);
    // Positions occupy the last 12 columns; compare suffixes across rows.
    const auto positions_part = [](const std::string& s) {
        std::size_t pos = s.size();
        for (int k = 0; k < 12; ++k) pos = s.rfind(',', pos - 1);
        return s.substr(pos);
    };
    int rows = 1;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(positions_part(line) == positions_part(first));
    }
    CHECK(rows == 6);
}

TEST_CASE("state CSV round trip") {
    const ParticleState s({-0.75, 0.0, 0.6}, Domain::interval(1.0));
    std::stringstream ss;
    write_state_csv(ss, s);
    const ParticleState back = read_state_csv(ss, Domain::interval(1.0));
    CHECK(back.positions() == s.positions());
}

TEST_CASE("gamma command emits a decreasing energy gap with slope about -1") {
    const std::string dir = tmp_dir("gamma");
    RunConfig cfg = RunConfig::from_json_text(R"({
        "domain": {"type": "interval", "halfwidth": 1.0},
        "energy": {"type": "heat"},
        "init": {"profile": "linear"},
        "gamma": {"N_list": [16, 32, 64, 128]}
    })", {"output=" + dir});
    CHECK(cmd_gamma(cfg) == kExitOk);
    const std::string rep = slurp(fs::path(dir) / "report.json");
    CHECK(rep.find("energy_gap_slope") != std::string::npos);
    CHECK(rep.find("\"energy_gap_monotone\": true") != std::string::npos);
}

TEST_CASE("oracle command passes and its negative control fails") {
    const std::string dir = tmp_dir("oracle");
    RunConfig cfg = RunConfig::from_json_text(R"({
        "oracle": {"gradient_cases": 40, "tie_cases": 15, "transport_cases": 25},
        "seed": 12345
    })", {"output=" + dir});
    CHECK(cmd_oracle(cfg) == kExitOk);

    RunConfig bad = cfg;
    bad.oracle_corrupt_table = true;
    bad.output_dir = tmp_dir("oracle_bad");
    CHECK(cmd_oracle(bad) == kExitOracle);
}

TEST_CASE("invalid config surfaces as a config error") {
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"N": 1})"), input_error);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"stepper": {"safety": 2.0}})"),
                    input_error);
}
