#include "nclandau/nclandau.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

int main(int argc, char **argv) {
    using namespace nclandau;

    CLI::App app{"Landau levels and their noncommutative-oscillator counterpart"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    ConfigOverrides o;
    bool print_config = false;
    app.add_option("--config", o.config_path, "JSON config with flat keys (falls back to NC_LANDAU_CONFIG)");
    app.add_option("--B", o.B, "field strength in T (default 12)");
    app.add_option("--mu", o.mu, "particle mass in kg (default electron mass)");
    app.add_option("--gauge", o.gauge, "symmetric | landau1 | landau2");
    app.add_option("--sign", o.sign, "+ or - (qB = +eB or -eB)");
    app.add_option("--mode", o.mode, "orthonormal | paper");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--format", o.format, "text | csv | json");
    app.add_option("--precision", o.precision, "significant figures in tables (default 4)");
    app.add_flag("--print-config", print_config, "print the effective configuration and exit");

    int n_max = 3;
    int m_range = 3;
    auto *spectrum = app.add_subcommand("spectrum", "energy table, Landau side against oscillator side");
    spectrum->add_option("--n-max", n_max, "largest n_r or n_y")->capture_default_str();
    spectrum->add_option("--m-range", m_range, "largest |m_l|")->capture_default_str();

    auto *iso = app.add_subcommand("isomorphism", "parameter mapping and coefficient comparison");

    std::string suite = "all";
    VerifyOptions vopt;
    auto *verify = app.add_subcommand("verify", "numerical checks; exit 2 on any failure");
    verify->add_option("--suite", suite, "norm | residual | oracle | all")->capture_default_str();
    verify->add_option("--inject-energy-offset", vopt.energy_offset_units,
                       "add this many hbar omega_c/2 to analytic energies (negative control)");

    std::vector<std::string> states;
    std::string k0_sweep;
    std::vector<double> b_sweep;
    std::string component = "abs2";
    bool no_heatmap = false;
    SampleRequest req;
    auto *sample = app.add_subcommand("sample", "export eigenfunction samples and heatmaps");
    sample->add_option("--state", states, "n_r,m_l (repeatable)");
    sample->add_flag("--landau", req.landau, "sample the Landau-gauge oscillator instead");
    sample->add_option("--n", req.n, "n_y with --landau");
    sample->add_option("--k0", req.k0, "k0 in 1/m with --landau");
    sample->add_option("--k0-sweep", k0_sweep, "lo:hi:count with --landau");
    sample->add_option("--B-sweep", b_sweep, "field strengths in T, one grid each")->delimiter(',');
    sample->add_option("--component", component, "heatmap component: re | im | abs2")->capture_default_str();
    sample->add_flag("--no-heatmap", no_heatmap, "skip PPM output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_success : exit_validation;
    }

    return run_guarded(std::cerr, [&]() -> int {
        const RunConfig cfg = resolve_config(o);
        if (print_config) {
            std::cout << config_to_json(cfg).dump(1) << "\n";
            return exit_success;
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(cfg, n_max, m_range, std::cout);
        }
        if (iso->parsed()) {
            return cmd_isomorphism(cfg, std::cout);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, parse_suite(suite), vopt, std::cout);
        }
        if (!sample->parsed()) {
            throw std::invalid_argument("a subcommand is required (run with --help)");
        }
        for (const auto &s : states) {
            req.states.push_back(parse_state(s));
        }
        if (!k0_sweep.empty()) {
            req.k0_sweep = parse_sweep(k0_sweep);
        }
        req.B_sweep = b_sweep;
        req.heatmap = !no_heatmap;
        req.component = parse_component(component);
        return cmd_sample(cfg, req, std::cout);
    });
}
