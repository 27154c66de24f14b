#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "chiralqb/commands.hpp"
#include "chiralqb/config.hpp"
#include "chiralqb/errors.hpp"
#include "chiralqb/params.hpp"
#include "chiralqb/verify.hpp"
#include "chiralqb/version.hpp"

namespace {

chiralqb::RunConfig config_or_default(const std::string& path) {
    if (!path.empty()) return chiralqb::load_config(path);
    chiralqb::RunConfig cfg;
    cfg.params = chiralqb::canonical_params(1.0);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chiralqb: chiral two-magnon waveguide battery toolkit"};
    app.set_version_flag("--version", std::string(chiralqb::kVersion));
    app.require_subcommand(1);
    app.fallthrough();  // allow global flags after the subcommand name

    std::string config_path;
    std::string out_path = "-";
    int jobs = 0;
    std::uint64_t seed = 12345;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_path, "output CSV path ('-' for stdout)");
    app.add_option("--jobs", jobs, "worker threads (0 = hardware)");
    app.add_option("--seed", seed, "seed for the randomized property checks");

    auto* evolve = app.add_subcommand("evolve", "integrate the moment system");
    auto* steady = app.add_subcommand("steady", "closed-form steady state");
    auto* sweep = app.add_subcommand("sweep", "steady metrics over a grid");
    auto* verify = app.add_subcommand(
        "verify", "run the full verification battery (exit 2 on failure)");
    auto* figure =
        app.add_subcommand("figure", "canonical study presets (CSV)");
    std::string figure_name;
    figure->add_option("name", figure_name, "fig2, fig3, fig4 or figS1")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve->parsed()) {
            if (config_path.empty()) {
                throw chiralqb::ValidationError("evolve requires --config");
            }
            const auto cfg = chiralqb::load_config(config_path);
            chiralqb::write_csv(chiralqb::cmd_evolve(cfg), out_path);
        } else if (steady->parsed()) {
            if (config_path.empty()) {
                throw chiralqb::ValidationError("steady requires --config");
            }
            const auto cfg = chiralqb::load_config(config_path);
            chiralqb::write_csv(chiralqb::cmd_steady(cfg), out_path);
        } else if (sweep->parsed()) {
            if (config_path.empty()) {
                throw chiralqb::ValidationError("sweep requires --config");
            }
            const auto cfg = chiralqb::load_config(config_path);
            chiralqb::write_csv(chiralqb::cmd_sweep(cfg, jobs), out_path);
        } else if (figure->parsed()) {
            const auto cfg = config_or_default(config_path);
            chiralqb::write_csv(chiralqb::cmd_figure(figure_name, cfg, jobs),
                                out_path);
        } else if (verify->parsed()) {
            chiralqb::VerifyOptions opt;
            opt.seed = seed;
            if (!config_path.empty()) {
                const auto cfg = chiralqb::load_config(config_path);
                opt.cutoff = cfg.oracle.cutoff;
                opt.omega_scale = cfg.oracle.omega_scale;
            }
            const auto checks = chiralqb::run_all_checks(opt);
            std::cout << chiralqb::format_report(checks, opt);
            return chiralqb::all_passed(checks) ? 0 : 2;
        }
    } catch (const chiralqb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
