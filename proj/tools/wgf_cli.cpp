#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wgf/commands.hpp"
#include "wgf/errors.hpp"

namespace {

void print_error_json(const char* code, const std::string& message) {
    nlohmann::json j;
    j["error"]["code"] = code;
    j["error"]["message"] = message;
    std::cout << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D Lagrangian particle solver for diffusive gradient flows"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--set", overrides, "key.path=value overrides (flags win)");
    };
    CLI::App* sim = app.add_subcommand("simulate", "run simulations and dump trajectories");
    CLI::App* con = app.add_subcommand("converge", "N-sweep against a reference solution");
    CLI::App* gam = app.add_subcommand("gamma", "discrete-vs-continuum energy study");
    CLI::App* ora = app.add_subcommand("oracle", "brute-force oracle test vectors");
    for (CLI::App* sub : {sim, con, gam, ora}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        const wgf::RunConfig cfg = wgf::RunConfig::from_json_file(config_path, overrides);
        if (sim->parsed()) return wgf::cmd_simulate(cfg);
        if (con->parsed()) return wgf::cmd_converge(cfg);
        if (gam->parsed()) return wgf::cmd_gamma(cfg);
        if (ora->parsed()) return wgf::cmd_oracle(cfg);
    } catch (const wgf::input_error& e) {
        print_error_json("config", e.what());
        return wgf::kExitConfig;
    } catch (const wgf::unsupported_error& e) {
        print_error_json("unsupported", e.what());
        return wgf::kExitConfig;
    } catch (const wgf::numerical_error& e) {
        print_error_json("numerical", e.what());
        return wgf::kExitNumerical;
    } catch (const std::exception& e) {
        print_error_json("internal", e.what());
        return wgf::kExitNumerical;
    }
    return wgf::kExitOk;
}
