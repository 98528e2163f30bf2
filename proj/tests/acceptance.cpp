// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "nclandau/nclandau.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace nclandau;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char *title, bool pass, const std::string &detail) {
    std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
    if (!pass) {
        ++failures;
    }
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

template <typename F>
double millis(F &&f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

const PhysicalParams defaults{};

void parameter_mapping() {
    double theta = 0.0;
    double zeta = 0.0;
    // Best of several runs, so a cold cache does not decide the verdict.
    double best = 1e9;
    for (int i = 0; i < 5; ++i) {
        best = std::min(best, millis([&] {
            theta = theta_from_B(defaults);
            zeta = zeta_from(defaults);
        }));
    }
    const bool ok = rel(theta, 2.195e-16) <= 1e-3 && rel(zeta, 5.071e-7) <= 1e-3 && best < 1.0;
    report(1, "parameter mapping", ok, fmt("theta=%.4e m^2 zeta=%.4e, %.4f ms", theta, zeta, best));
}

void effective_parameters() {
    const auto th = theta_dependent_params(theta_from_B(defaults));
    const auto z = zeta_scaled_params(theta_from_B(defaults), zeta_from(defaults));
    const double e_m = rel(z.M, defaults.mu);
    const double e_w = rel(z.Omega, cyclotron_frequency(defaults) / 2.0);
    const bool ok = rel(th.M, 4.620e-37) <= 1e-3 && rel(th.Omega, 2.081e18) <= 1e-3 && e_m <= 1e-12 && e_w <= 1e-12;
    report(2, "effective parameters", ok,
           fmt("M=%.4e kg Omega=%.4e rad/s; zeta-scaled errors %.1e, %.1e", th.M, th.Omega, e_m, e_w));
}

void energy_tables() {
    struct Row {
        int n, m;
        double J, eV;
    };
    const std::vector<Row> rows = {
        {0, 0, 1.112e-22, 6.943e-4},  {1, 0, 3.340e-22, 2.085e-3},  {2, 0, 5.566e-22, 3.475e-3},
        {3, 0, 7.793e-22, 4.864e-3},  {0, 3, 1.112e-22, 6.943e-4},  {0, 2, 1.112e-22, 6.943e-4},
        {0, 1, 1.112e-22, 6.943e-4},  {0, -1, 3.340e-22, 2.085e-3}, {0, -2, 5.566e-22, 3.475e-3},
        {0, -3, 7.793e-22, 4.864e-3}, {1, 1, 3.340e-22, 2.085e-3},  {2, 1, 5.566e-22, 3.475e-3},
        {3, 1, 7.793e-22, 4.864e-3},  {1, 2, 3.340e-22, 2.085e-3},  {2, 2, 5.566e-22, 3.475e-3},
        {3, 2, 7.793e-22, 4.864e-3},  {1, 3, 3.340e-22, 2.085e-3},  {2, 3, 5.566e-22, 3.475e-3},
        {3, 3, 7.793e-22, 4.864e-3},  {1, -1, 5.566e-22, 3.475e-3}, {2, -1, 7.793e-22, 4.864e-3},
        {3, -1, 1.002e-21, 6.254e-3}, {1, -2, 7.793e-22, 4.864e-3}, {2, -2, 1.002e-21, 6.254e-3},
        {3, -2, 1.225e-21, 7.644e-3}, {1, -3, 1.002e-21, 6.254e-3}, {2, -3, 1.225e-21, 7.644e-3},
        {3, -3, 1.447e-21, 9.034e-3},
    };
    double worst = 0.0;
    const double ms = millis([&] {
        const auto nc = map_to_nc(defaults);
        for (const auto &r : rows) {
            const double landau = energy_symmetric(r.n, r.m, defaults);
            const double osc = nc_energy_symmetric(r.n, r.m, nc);
            worst = std::max({worst, rel(landau, r.J), rel(osc, r.J), rel(landau / defaults.e, r.eV),
                              rel(osc / defaults.e, r.eV)});
        }
    });
    report(3, "energy tables", worst <= 1e-3 && ms < 10.0,
           fmt("%.0f rows, worst relative deviation %.2e, %.3f ms", static_cast<double>(rows.size()), worst, ms));
}

void spectrum_isomorphism() {
    const auto nc = map_to_nc(defaults);
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n) {
        for (int m = -6; m <= 6; ++m) {
            worst = std::max(worst, rel(nc_energy_symmetric(n, m, nc), energy_symmetric(n, m, defaults)));
        }
        worst = std::max(worst, rel(nc_energy_landau(n, nc), energy_landau(n, defaults)));
    }
    const bool negative_fails = !isomorphism_check(defaults, SignConvention::negative()).pass;
    const bool positive_passes = isomorphism_check(defaults, SignConvention::positive()).pass;
    report(4, "spectrum isomorphism", worst <= 1e-12 && negative_fails && positive_passes,
           fmt("max relative gap %.1e; sign -1 report ", worst) + (negative_fails ? "fails" : "passes"));
}

void state_isomorphism() {
    const double th = theta_from_B(defaults);
    const double lb = defaults.magnetic_length();
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n) {
        for (int m = -4; m <= 4; ++m) {
            const auto st = QuantumState::symmetric(n, m);
            for (int i = 0; i < 50; ++i) {
                const double r = i * 8.0 * lb / 49.0;
                for (int j = 0; j < 50; ++j) {
                    const double phi = 2.0 * constants::pi * j / 50.0;
                    const auto a = eigenfunction_symmetric(st, defaults, r, phi);
                    const auto b = nc_eigenfunction_symmetric(n, m, th, r, phi);
                    if (std::abs(a) > 0.0) {
                        worst = std::max(worst, std::abs(a - b) / std::abs(a));
                    } else if (std::abs(b) > 0.0) {
                        worst = 1.0;
                    }
                }
            }
        }
    }
    report(5, "state isomorphism", worst <= 1e-12, fmt("50x50 polar grid, n_r<=4 |m_l|<=4, max relative gap %.1e", worst));
}

void orthonormality() {
    double worst = 0.0;
    const double ms = millis([&] {
        const double lb = defaults.magnetic_length();
        const auto g = QuadratureGrid::polar(12.0 * lb, 257, 32);
        g.validate_for(defaults);
        std::vector<SampledField> fs;
        for (int n = 0; n <= 4; ++n) {
            for (int m = -4; m <= 4; ++m) {
                const auto st = QuantumState::symmetric(n, m);
                fs.push_back(sample(g, [&](double r, double phi) { return eigenfunction_symmetric(st, defaults, r, phi); }));
            }
        }
        for (std::size_t a = 0; a < fs.size(); ++a) {
            for (std::size_t b = 0; b < fs.size(); ++b) {
                worst = std::max(worst, std::abs(inner_product(fs[a], fs[b]) - (a == b ? 1.0 : 0.0)));
            }
        }
    });
    report(6, "orthonormality", worst <= 1e-6 && ms < 30000.0, fmt("45x45 Gram matrix, max entry error %.1e, %.0f ms", worst, ms));
}

void operator_residual() {
    const double lb = defaults.magnetic_length();
    double worst = 0.0;
    const auto polar = QuadratureGrid::polar(10.0 * lb, 401, 512);
    const auto g1 = QuadratureGrid::cartesian2d(-lb, lb, 81, -10.0 * lb, 10.0 * lb, 801);
    const auto g2 = QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 801, -lb, lb, 81);
    for (int s : {1, -1}) {
        const SignConvention sign(s);
        for (int n = 0; n <= 3; ++n) {
            for (int m = -3; m <= 3; ++m) {
                worst = std::max(worst, hamiltonian_residual(QuantumState::symmetric(n, m, sign), defaults, polar).residual);
            }
            worst = std::max(worst, hamiltonian_residual(QuantumState::landau(Gauge::LandauFirst, n, 0.5 / lb, sign), defaults, g1).residual);
            worst = std::max(worst, hamiltonian_residual(QuantumState::landau(Gauge::LandauSecond, n, 0.5 / lb, sign), defaults, g2).residual);
        }
    }
    const auto c_sym = residual_convergence(QuantumState::symmetric(1, 1), defaults, QuadratureGrid::polar(10.0 * lb, 201, 256));
    const auto c_lan = residual_convergence(QuantumState::landau(Gauge::LandauFirst, 1, 0.5 / lb), defaults,
                                            QuadratureGrid::cartesian2d(-lb, lb, 41, -10.0 * lb, 10.0 * lb, 401));
    const double order = std::min(c_sym.order, c_lan.order);
    report(7, "operator residual", worst <= 1e-3 && order >= 1.8,
           fmt("worst residual %.2e at 40 pts/l_B; orders %.2f (symmetric), %.2f (Landau)", worst, c_sym.order, c_lan.order));
}

void oracle_equivalence() {
    const double lb = defaults.magnetic_length();
    double err_landau = 0.0;
    double err_ground = 0.0;
    std::size_t dim = 0;
    double ground = 0.0;
    const double ms = millis([&] {
        const auto line = QuadratureGrid::cartesian1d(-10.0 * lb, 10.0 * lb, 801);
        const auto lan = grid_diagonalize(defaults, Gauge::LandauFirst, line, 6);
        std::vector<double> analytic;
        for (int n = 0; n < 6; ++n) {
            analytic.push_back((2.0 * n + 1.0) * half_cyclotron_energy(defaults));
        }
        err_landau = spectrum_match(analytic, lan.energies, 1e-2).max_error;
        const auto box = QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 48, -10.0 * lb, 10.0 * lb, 48);
        const auto sym = grid_diagonalize(defaults, Gauge::Symmetric, box, 1);
        ground = sym.energies.front();
        err_ground = rel(ground, 1.112e-22);
        dim = std::max(lan.dimension, sym.dimension);
    });
    report(8, "oracle equivalence", err_landau <= 1e-2 && err_ground <= 1e-2 && dim <= 4096 && ms < 120000.0,
           fmt("Landau 6 levels max error %.1e; ground %.4e J (%.1e off); dim %.0f", err_landau, ground,
               err_ground, static_cast<double>(dim)) +
               fmt(", %.0f ms", ms));
}

void figure_properties(const fs::path &dir) {
    std::vector<std::string> failed;
    auto load = [&](const FieldGrid &g, const std::string &name) {
        export_field(g, ExportFormat::Json, dir / name);
        return read_field_json(dir / name);
    };
    auto ray = [](const FieldGrid &g, bool real_part) {
        std::vector<double> v;
        for (std::size_t i = 0; i < g.count(0); ++i) {
            v.push_back(real_part ? g.at(i, 0).re : g.at(i, 0).abs2);
        }
        return v;
    };
    const double th = theta_from_B(defaults);

    for (int n = 0; n <= 4; ++n) {
        const auto re = ray(load(sample_symmetric(n, 0, th), "nodes.json"), true);
        int zeros = 0;
        for (std::size_t i = 1; i < re.size(); ++i) {
            zeros += (re[i] > 0) != (re[i - 1] > 0);
        }
        if (zeros != n) {
            failed.push_back("node count n_r=" + std::to_string(n));
        }
    }

    for (int m = 1; m <= 3; ++m) {
        const auto a = load(sample_symmetric(1, m, th), "plus.json");
        const auto b = load(sample_symmetric(1, -m, th), "minus.json");
        for (std::size_t k = 0; k < a.points.size(); ++k) {
            if (std::abs(a.points[k].abs2 - b.points[k].abs2) > 1e-12 * a.points[k].abs2) {
                failed.push_back("m_l sign invariance");
                break;
            }
        }
    }

    double last_r = 0.0;
    for (int m = 1; m <= 4; ++m) {
        const auto g = load(sample_symmetric(0, m, th), "ring.json");
        const auto d = ray(g, false);
        const double r = g.axes[0].values[static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin())];
        if (!(r > last_r)) {
            failed.push_back("annulus radius");
        }
        last_r = r;
    }

    GridSpec line;
    line.n0 = 4001;
    const double h = 2.0 * line.extent * magnetic_length_from_theta(th) / 4000.0;
    for (double k0 : {-3e7, 0.0, 2e7, 5e7}) {
        const auto g = load(sample_landau(0, k0, th, line), "landau.json");
        std::size_t best = 0;
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            best = g.points[i].abs2 > g.points[best].abs2 ? i : best;
        }
        if (std::abs(g.axes[0].values[best] + th * k0 / 4.0) > h) {
            failed.push_back("Landau peak position");
        }
    }

    const auto sweep = sweep_field({10.0, 15.0, 20.0}, SweepState{}, GridSpec{});
    double last_half = 1e9;
    for (std::size_t s = 0; s < sweep.size(); ++s) {
        const auto g = load(sweep[s], "sweep.json");
        const auto d = ray(g, false);
        double half = g.axes[0].values.back();
        for (std::size_t i = 1; i < d.size(); ++i) {
            if (d[i] < 0.5 * d[0]) {
                const double r0 = g.axes[0].values[i - 1];
                const double r1 = g.axes[0].values[i];
                half = r0 + (0.5 * d[0] - d[i - 1]) / (d[i] - d[i - 1]) * (r1 - r0);
                break;
            }
        }
        if (!(half < last_half)) {
            failed.push_back("half-max radius over B");
        }
        last_half = half;
    }

    std::string detail = "nodes, m_l symmetry, annulus growth, Landau peak, half-max radius vs B";
    for (const auto &f : failed) {
        detail += "; failed: " + f;
    }
    report(9, "figure properties", failed.empty(), detail);
}

void determinism(const fs::path &dir) {
    RunConfig cfg;
    std::ostringstream a;
    std::ostringstream b;
    cmd_spectrum(cfg, 6, 6, a);
    cmd_spectrum(cfg, 6, 6, b);
    bool same = a.str() == b.str();

    cfg.grid.n0 = 96;
    cfg.grid.n1 = 48;
    SampleRequest req;
    req.states = {{0, 0}, {2, -1}};
    std::vector<std::vector<fs::path>> runs;
    for (const char *sub : {"run1", "run2"}) {
        cfg.out_dir = (dir / sub).string();
        runs.push_back(sample_files(cfg, req));
    }
    req.landau = true;
    req.n = 1;
    req.k0_sweep = std::make_tuple(0.0, 5e7, 5);
    for (int i = 0; i < 2; ++i) {
        cfg.out_dir = (dir / (i == 0 ? "run1" : "run2")).string();
        for (const auto &p : sample_files(cfg, req)) {
            runs[static_cast<std::size_t>(i)].push_back(p);
        }
    }
    std::size_t files = 0;
    same = same && runs[0].size() == runs[1].size();
    for (std::size_t i = 0; same && i < runs[0].size(); ++i) {
        same = slurp(runs[0][i]) == slurp(runs[1][i]) && !slurp(runs[0][i]).empty();
        ++files;
    }
    report(10, "determinism", same, "spectrum output and " + std::to_string(files) + " sample files byte-identical");
}

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / "nclandau_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    parameter_mapping();
    effective_parameters();
    energy_tables();
    spectrum_isomorphism();
    state_isomorphism();
    orthonormality();
    operator_residual();
    oracle_equivalence();
    figure_properties(dir);
    determinism(dir);

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
