#include "ddl/pipeline.hpp"
#include "ddl/simd.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Drift-diffusion solver for thin layers of varying thickness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ddl 1.0");

    std::string config, out = "out", seed_grid;
    struct Sub {
        const char* name;
        const char* help;
        ddl::Mode mode;
    };
    const Sub subs[] = {
        {"solve-conformal", "Solve on a conformally mapped wedge domain", ddl::Mode::solve_conformal},
        {"solve-hodograph", "Solve in the hodograph plane", ddl::Mode::solve_hodograph},
        {"converge", "Grid convergence table for one direction", ddl::Mode::converge},
        {"asymptotic-sweep", "Sweep h_min and compare with the asymptotic estimates", ddl::Mode::asymptotic_sweep},
        {"validate", "Convergence tables of both formulations on the validation domain", ddl::Mode::validate},
    };
    std::vector<std::pair<CLI::App*, ddl::Mode>> cmds;
    for (const Sub& s : subs) {
        CLI::App* c = app.add_subcommand(s.name, s.help);
        c->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        c->add_option("--out", out, "Output directory")->capture_default_str();
        c->add_option("--seed-grid", seed_grid, "Override grid counts as PxC (periodic x Chebyshev)");
        cmds.emplace_back(c, s.mode);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    std::fprintf(stderr, "ddl: kernel %s\n", std::string(ddl::simd::isa_name(ddl::simd::active_isa())).c_str());
    for (auto& [c, mode] : cmds)
        if (c->parsed()) return ddl::run_cli(mode, config, out, seed_grid);
    return 1;
}
