#pragma once

/**
 * @file
 * @brief Command implementations behind the nclandau tool.
 *
 * Every command writes to caller-supplied streams and returns a process exit code, so tests can
 * drive them without spawning processes.
 */

#include "nclandau/errors.hpp"
#include "nclandau/field.hpp"
#include "nclandau/landau.hpp"
#include "nclandau/nc_oscillator.hpp"
#include "nclandau/quadrature.hpp"
#include "nclandau/verify.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nclandau {

enum ExitCode : int { exit_success = 0, exit_validation = 1, exit_verification = 2, exit_io = 3 };

enum class OutputFormat { Text, Csv, Json };

struct RunConfig {
    double B = 12.0;
    double mu = constants::electron_mass;
    Gauge gauge = Gauge::Symmetric;
    SignConvention sign{};
    NormalizationMode mode = NormalizationMode::Orthonormal;
    GridSpec grid{};
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Text;
    int precision = 4;  // significant figures in tables
    std::string timestamp = "0";

    [[nodiscard]] PhysicalParams params() const {
        PhysicalParams p;
        p.B = B;
        p.mu = mu;
        return p;
    }

    void validate() const {
        params().validate();
        if (precision < 1 || precision > 17) {
            throw std::invalid_argument("precision must be in 1..17");
        }
        if (!(grid.extent > 0.0) || !std::isfinite(grid.extent)) {
            throw std::invalid_argument("grid_extent must be positive");
        }
        if (grid.unit == ExtentUnit::MagneticLengths && grid.extent > max_extent_magnetic_lengths) {
            throw std::invalid_argument("grid_extent exceeds 64 magnetic lengths");
        }
        if (grid.n0 < 2 || grid.n1 < 2) {
            throw std::invalid_argument("grid_n0 and grid_n1 must be at least 2");
        }
        if (out_dir.empty()) {
            throw std::invalid_argument("out must not be empty");
        }
    }
};

[[nodiscard]] inline std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "text";
}

[[nodiscard]] inline Gauge parse_gauge(const std::string &s) {
    if (s == "symmetric") return Gauge::Symmetric;
    if (s == "landau1") return Gauge::LandauFirst;
    if (s == "landau2") return Gauge::LandauSecond;
    throw std::invalid_argument("gauge must be symmetric, landau1 or landau2, got '" + s + "'");
}

[[nodiscard]] inline SignConvention parse_sign(const std::string &s) {
    if (s == "+" || s == "+1" || s == "1") return SignConvention::positive();
    if (s == "-" || s == "-1") return SignConvention::negative();
    throw std::invalid_argument("sign must be + or -, got '" + s + "'");
}

[[nodiscard]] inline NormalizationMode parse_mode(const std::string &s) {
    if (s == "orthonormal") return NormalizationMode::Orthonormal;
    if (s == "paper") return NormalizationMode::PaperLiteral;
    throw std::invalid_argument("mode must be orthonormal or paper, got '" + s + "'");
}

[[nodiscard]] inline OutputFormat parse_format(const std::string &s) {
    if (s == "text") return OutputFormat::Text;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw std::invalid_argument("format must be text, csv or json, got '" + s + "'");
}

[[nodiscard]] inline nlohmann::json config_to_json(const RunConfig &c) {
    nlohmann::json j;
    j["B"] = c.B;
    j["mu"] = c.mu;
    j["gauge"] = std::string(to_string(c.gauge));
    j["sign"] = c.sign.value() > 0 ? "+" : "-";
    j["mode"] = std::string(to_string(c.mode));
    j["out"] = c.out_dir;
    j["format"] = to_string(c.format);
    j["precision"] = c.precision;
    j["timestamp"] = c.timestamp;
    j["grid_kind"] = to_string(c.grid.kind);
    j["grid_extent"] = c.grid.extent;
    j["grid_unit"] = c.grid.unit == ExtentUnit::MagneticLengths ? "lB" : "m";
    j["grid_n0"] = c.grid.n0;
    j["grid_n1"] = c.grid.n1;
    return j;
}

/// Applies the flat keys of @p j on top of @p base. Unknown keys are rejected.
[[nodiscard]] inline RunConfig config_from_json(const nlohmann::json &j, RunConfig base = {}) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: top level must be a JSON object");
    }
    try {
        for (const auto &[key, v] : j.items()) {
            if (key == "B") base.B = v.get<double>();
            else if (key == "mu") base.mu = v.get<double>();
            else if (key == "gauge") base.gauge = parse_gauge(v.get<std::string>());
            else if (key == "sign") base.sign = parse_sign(v.get<std::string>());
            else if (key == "mode") base.mode = parse_mode(v.get<std::string>());
            else if (key == "out") base.out_dir = v.get<std::string>();
            else if (key == "format") base.format = parse_format(v.get<std::string>());
            else if (key == "precision") base.precision = v.get<int>();
            else if (key == "timestamp") base.timestamp = v.get<std::string>();
            else if (key == "grid_kind") {
                const auto k = v.get<std::string>();
                if (k != "polar" && k != "cartesian") {
                    throw std::invalid_argument("grid_kind must be polar or cartesian");
                }
                base.grid.kind = k == "polar" ? FieldKind::Polar : FieldKind::Cartesian;
            } else if (key == "grid_extent") base.grid.extent = v.get<double>();
            else if (key == "grid_unit") {
                const auto u = v.get<std::string>();
                if (u != "lB" && u != "m") {
                    throw std::invalid_argument("grid_unit must be lB or m");
                }
                base.grid.unit = u == "lB" ? ExtentUnit::MagneticLengths : ExtentUnit::Meters;
            } else if (key == "grid_n0") base.grid.n0 = v.get<std::size_t>();
            else if (key == "grid_n1") base.grid.n1 = v.get<std::size_t>();
            else throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("config: wrong value type: ") + e.what());
    }
    base.grid.timestamp = base.timestamp;
    return base;
}

[[nodiscard]] inline RunConfig load_config_file(const std::filesystem::path &path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config '" + path.string() + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j, std::move(base));
}

/// Flag values given on the command line; unset members leave the config untouched.
struct ConfigOverrides {
    std::optional<std::string> config_path;
    std::optional<double> B;
    std::optional<double> mu;
    std::optional<std::string> gauge;
    std::optional<std::string> sign;
    std::optional<std::string> mode;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> precision;
};

/// Defaults, then the config file (--config, else NC_LANDAU_CONFIG), then flags.
[[nodiscard]] inline RunConfig resolve_config(const ConfigOverrides &o) {
    RunConfig c;
    std::optional<std::string> path = o.config_path;
    if (!path) {
        if (const char *env = std::getenv("NC_LANDAU_CONFIG"); env != nullptr && *env != '\0') {
            path = env;
        }
    }
    if (path) {
        c = load_config_file(*path, c);
    }
    if (o.B) c.B = *o.B;
    if (o.mu) c.mu = *o.mu;
    if (o.gauge) c.gauge = parse_gauge(*o.gauge);
    if (o.sign) c.sign = parse_sign(*o.sign);
    if (o.mode) c.mode = parse_mode(*o.mode);
    if (o.out) c.out_dir = *o.out;
    if (o.format) c.format = parse_format(*o.format);
    if (o.precision) c.precision = *o.precision;
    c.grid.timestamp = c.timestamp;
    c.validate();
    return c;
}

/// Runs @p body and maps escaping exceptions to exit codes, printing the message to @p err.
inline int run_guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const ConvergenceError &e) {
        err << "error: " << e.what() << "\n";
        return exit_verification;
    } catch (const ResolutionError &e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    }
}

namespace detail {

inline std::string sci(double v, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", sig - 1, v);
    return buf;
}

inline std::string padded(const std::string &s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

/// Text tables right-align columns; CSV joins with commas.
inline void emit_table(std::ostream &out, OutputFormat f, const std::vector<std::string> &header,
                       const std::vector<std::vector<std::string>> &rows) {
    if (f == OutputFormat::Csv) {
        auto line = [&](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << (i ? "," : "") << cells[i];
            }
            out << "\r\n";
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
        return;
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        w[i] = header[i].size();
        for (const auto &r : rows) {
            w[i] = std::max(w[i], r[i].size());
        }
    }
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "  " : "") << padded(cells[i], w[i]);
        }
        out << "\n";
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
}

}  // namespace detail

// ---------------------------------------------------------------- spectrum

struct SpectrumRow {
    int n = 0;     // n_r or n_y
    int m_l = 0;   // 0 in Landau gauges
    double landau_J = 0.0;
    double nc_J = 0.0;

    [[nodiscard]] double landau_eV(double e) const { return landau_J / e; }
    [[nodiscard]] double nc_eV(double e) const { return nc_J / e; }
    [[nodiscard]] double rel_diff() const { return std::abs(nc_J - landau_J) / std::abs(landau_J); }
};

/// Landau-side and oscillator-side energies, n up to @p n_max and |m_l| up to @p m_range (symmetric gauge).
[[nodiscard]] inline std::vector<SpectrumRow> spectrum_rows(const RunConfig &cfg, int n_max, int m_range) {
    if (n_max < 0 || m_range < 0) {
        throw std::invalid_argument("spectrum: n_max and m_range must be non-negative");
    }
    const auto p = cfg.params();
    p.validate();
    const auto nc = map_to_nc(p);
    std::vector<SpectrumRow> rows;
    if (cfg.gauge == Gauge::Symmetric) {
        for (int n = 0; n <= n_max; ++n) {
            for (int m = -m_range; m <= m_range; ++m) {
                rows.push_back({n, m, energy_symmetric(n, m, p, cfg.sign), nc_energy_symmetric(n, m, nc)});
            }
        }
    } else {
        for (int n = 0; n <= n_max; ++n) {
            rows.push_back({n, 0, energy_landau(n, p), nc_energy_landau(n, nc)});
        }
    }
    return rows;
}

inline int cmd_spectrum(const RunConfig &cfg, int n_max, int m_range, std::ostream &out) {
    cfg.validate();
    const auto rows = spectrum_rows(cfg, n_max, m_range);
    const double e = cfg.params().e;
    const bool sym = cfg.gauge == Gauge::Symmetric;

    if (cfg.format == OutputFormat::Json) {
        nlohmann::json j;
        j["gauge"] = std::string(to_string(cfg.gauge));
        j["sign"] = cfg.sign.value();
        j["B"] = cfg.B;
        j["mu"] = cfg.mu;
        auto &arr = j["rows"] = nlohmann::json::array();
        for (const auto &r : rows) {
            nlohmann::json row;
            row[sym ? "n_r" : "n_y"] = r.n;
            if (sym) {
                row["m_l"] = r.m_l;
            }
            row["landau_J"] = r.landau_J;
            row["landau_eV"] = r.landau_eV(e);
            row["nc_J"] = r.nc_J;
            row["nc_eV"] = r.nc_eV(e);
            row["rel_diff"] = r.rel_diff();
            arr.push_back(std::move(row));
        }
        out << j.dump(1) << "\n";
        return exit_success;
    }

    std::vector<std::string> header = {sym ? "n_r" : "n_y"};
    if (sym) {
        header.push_back("m_l");
    }
    for (const char *h : {"landau_J", "landau_eV", "nc_J", "nc_eV", "rel_diff"}) {
        header.emplace_back(h);
    }
    std::vector<std::vector<std::string>> cells;
    const int p = cfg.precision;
    for (const auto &r : rows) {
        std::vector<std::string> c = {std::to_string(r.n)};
        if (sym) {
            c.push_back(std::to_string(r.m_l));
        }
        c.push_back(detail::sci(r.landau_J, p));
        c.push_back(detail::sci(r.landau_eV(e), p));
        c.push_back(detail::sci(r.nc_J, p));
        c.push_back(detail::sci(r.nc_eV(e), p));
        c.push_back(detail::sci(r.rel_diff(), 2));
        cells.push_back(std::move(c));
    }
    detail::emit_table(out, cfg.format, header, cells);
    return exit_success;
}

// ------------------------------------------------------------- isomorphism

/// Coefficients of one Landau-gauge row: Landau Hamiltonian next to the scaled oscillator.
struct LandauComparisonRow {
    Gauge gauge = Gauge::LandauFirst;
    double landau_kinetic = 0.0;    // 1/(2 mu)
    double landau_quadratic = 0.0;  // e^2 B^2 / (2 mu), on y^2 or x^2
    double landau_cross = 0.0;      // +-eB/mu, on y p_x or x p_y
    double nc_kinetic = 0.0;        // zeta theta^2 / 4hbar^2
    double nc_quadratic = 0.0;      // zeta, on x^2 + y^2
    double nc_angular = 0.0;        // -zeta theta / hbar, on L_z
    double landau_ground_J = 0.0;   // hbar omega_c / 2
    double nc_ground_J = 0.0;       // zeta theta
};

[[nodiscard]] inline std::vector<LandauComparisonRow> landau_comparison(const PhysicalParams &p, SignConvention sign) {
    const auto nc = map_to_nc(p);
    std::vector<LandauComparisonRow> rows;
    for (Gauge g : {Gauge::LandauFirst, Gauge::LandauSecond}) {
        LandauComparisonRow r;
        r.gauge = g;
        r.landau_kinetic = 1.0 / (2.0 * p.mu);
        r.landau_quadratic = p.e * p.e * p.B * p.B / (2.0 * p.mu);
        r.landau_cross = (g == Gauge::LandauFirst ? 1.0 : -1.0) * sign.value() * p.e * p.B / p.mu;
        r.nc_kinetic = nc.zeta * nc.theta * nc.theta / (4.0 * nc.hbar * nc.hbar);
        r.nc_quadratic = nc.zeta;
        r.nc_angular = -nc.zeta * nc.theta / nc.hbar;
        r.landau_ground_J = energy_landau(0, p);
        r.nc_ground_J = nc_energy_landau(0, nc);
        rows.push_back(r);
    }
    return rows;
}

inline int cmd_isomorphism(const RunConfig &cfg, std::ostream &out) {
    cfg.validate();
    const auto p = cfg.params();
    const auto rep = isomorphism_check(p, cfg.sign);
    const auto cmp = landau_comparison(p, cfg.sign);
    const int sig = cfg.precision;
    auto f = [&](double v) { return detail::sci(v, sig); };

    if (cfg.format == OutputFormat::Json) {
        nlohmann::json j;
        j["B"] = p.B;
        j["mu"] = p.mu;
        j["sign"] = cfg.sign.value();
        j["theta"] = rep.theta;
        j["zeta"] = rep.zeta;
        j["M_eff"] = rep.M_eff;
        j["Omega_eff"] = rep.Omega_eff;
        j["theta_only"] = {{"M", rep.theta_only.M}, {"Omega", rep.theta_only.Omega}};
        j["residuals"] = {rep.residuals[0], rep.residuals[1], rep.residuals[2]};
        auto &raw = j["raw"] = nlohmann::json::object();
        raw["inconsistent"] = rep.raw.inconsistent;
        for (const auto &a : rep.raw.attempts) {
            raw["attempts"].push_back({{"solved", a.solved},
                                       {"checked", a.checked},
                                       {"solvable", a.solvable},
                                       {"m", std::isfinite(a.m) ? nlohmann::json(a.m) : nlohmann::json()},
                                       {"omega", std::isfinite(a.omega) ? nlohmann::json(a.omega) : nlohmann::json()},
                                       {"residual", std::isfinite(a.residual) ? nlohmann::json(a.residual) : nlohmann::json()},
                                       {"note", a.note}});
        }
        for (const auto &r : cmp) {
            j["landau_comparison"].push_back({{"gauge", std::string(to_string(r.gauge))},
                                              {"landau_kinetic", r.landau_kinetic},
                                              {"landau_quadratic", r.landau_quadratic},
                                              {"landau_cross", r.landau_cross},
                                              {"nc_kinetic", r.nc_kinetic},
                                              {"nc_quadratic", r.nc_quadratic},
                                              {"nc_angular", r.nc_angular},
                                              {"landau_ground_J", r.landau_ground_J},
                                              {"nc_ground_J", r.nc_ground_J}});
        }
        j["verdict"] = rep.pass ? "pass" : "fail";
        if (!rep.sign_note.empty()) {
            j["sign_note"] = rep.sign_note;
        }
        out << j.dump(1) << "\n";
        return rep.pass ? exit_success : exit_verification;
    }

    out << "Parameters\n"
        << "  B      = " << f(p.B) << " T\n"
        << "  mu     = " << f(p.mu) << " kg\n"
        << "  sign   = " << (cfg.sign.value() > 0 ? "+1 (qB = +eB)" : "-1 (qB = -eB)") << "\n\n"
        << "Mapping\n"
        << "  theta  = 4 hbar/(eB)   = " << f(rep.theta) << " m^2\n"
        << "  zeta   = e^2 B^2/(8 mu) = " << f(rep.zeta) << " C^2 T^2/kg\n\n"
        << "Theta parametrization (M = 2 hbar^2/theta^2, Omega = theta/hbar)\n"
        << "  M      = " << f(rep.theta_only.M) << " kg\n"
        << "  Omega  = " << f(rep.theta_only.Omega) << " rad/s\n\n"
        << "Zeta-scaled parametrization\n"
        << "  M      = " << f(rep.M_eff) << " kg  (mu = " << f(p.mu) << ")\n"
        << "  Omega  = " << f(rep.Omega_eff) << " rad/s  (omega_c/2 = " << f(cyclotron_frequency(p) / 2.0) << ")\n\n"
        << "Raw oscillator (m, omega) at the mapped theta\n";
    for (const auto &a : rep.raw.attempts) {
        out << "  " << a.solved << " -> check " << a.checked << ": ";
        if (a.solvable || std::isfinite(a.m)) {
            out << "m = " << f(a.m) << " kg, omega = " << f(a.omega) << " rad/s, residual = " << detail::sci(a.residual, 3);
        } else {
            out << "no solution";
        }
        out << "\n    " << a.note << "\n";
    }
    out << "  raw system " << (rep.raw.inconsistent ? "inconsistent" : "consistent") << "\n\n"
        << "Coefficient residuals (relative)\n"
        << "  kinetic   zeta theta^2/4hbar^2 vs 1/2mu : " << detail::sci(rep.residuals[0], 3) << "\n"
        << "  potential zeta vs e^2B^2/8mu           : " << detail::sci(rep.residuals[1], 3) << "\n"
        << "  angular   zeta theta/hbar vs s eB/2mu   : " << detail::sci(rep.residuals[2], 3) << "\n\n"
        << "Landau gauges against the oscillator\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto &r : cmp) {
        rows.push_back({std::string(to_string(r.gauge)), f(r.landau_kinetic), f(r.landau_quadratic), f(r.landau_cross),
                        f(r.nc_kinetic), f(r.nc_quadratic), f(r.nc_angular), f(r.landau_ground_J), f(r.nc_ground_J)});
    }
    detail::emit_table(out, OutputFormat::Text,
                       {"gauge", "1/2mu", "e2B2/2mu", "+-eB/mu", "zt2/4h2", "zeta", "-zt/h", "E0_landau_J", "E0_nc_J"},
                       rows);
    out << "  (Landau: p^2, y^2 or x^2, y p_x or x p_y; oscillator: p^2, x^2 + y^2, L_z)\n\n"
        << "Verdict: " << (rep.pass ? "pass" : "fail") << "\n";
    if (!rep.sign_note.empty()) {
        out << "Note: " << rep.sign_note << "\n";
    }
    return rep.pass ? exit_success : exit_verification;
}

// ------------------------------------------------------------------ verify

enum class VerifySuite { Norm, Residual, Oracle, All };

[[nodiscard]] inline VerifySuite parse_suite(const std::string &s) {
    if (s == "norm") return VerifySuite::Norm;
    if (s == "residual") return VerifySuite::Residual;
    if (s == "oracle") return VerifySuite::Oracle;
    if (s == "all") return VerifySuite::All;
    throw std::invalid_argument("suite must be norm, residual, oracle or all, got '" + s + "'");
}

struct CheckResult {
    std::string suite;
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    /// Added to every analytic energy in the residual suite, in units of hbar omega_c/2 (negative control).
    double energy_offset_units = 0.0;
};

namespace detail {

inline void check_norm(const RunConfig &cfg, std::vector<CheckResult> &out) {
    const auto p = cfg.params();
    const double lb = p.magnetic_length();
    const auto grid = QuadratureGrid::polar(12.0 * lb, 257, 32);
    grid.validate_for(p);
    std::vector<SampledField> fields;
    for (int n = 0; n <= 4; ++n) {
        for (int m = -4; m <= 4; ++m) {
            const auto st = QuantumState::symmetric(n, m, cfg.sign);
            fields.push_back(sample(grid, [&](double r, double phi) {
                return eigenfunction_symmetric(st, p, r, phi, NormalizationMode::Orthonormal);
            }));
        }
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < fields.size(); ++a) {
        for (std::size_t b = a; b < fields.size(); ++b) {
            const double target = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(inner_product(fields[a], fields[b]) - target));
        }
    }
    out.push_back({"norm", "gram_identity n_r<=4 |m_l|<=4", worst, 1e-6, worst <= 1e-6,
                   "max |<a|b> - delta_ab| over " + std::to_string(fields.size()) + " states"});
}

inline void check_residual(const RunConfig &cfg, const VerifyOptions &vo, std::vector<CheckResult> &out) {
    const auto p = cfg.params();
    const double lb = p.magnetic_length();
    ResidualOptions opt;
    opt.energy_shift = vo.energy_offset_units * half_cyclotron_energy(p);

    const auto polar = QuadratureGrid::polar(10.0 * lb, 401, 512);
    double worst = 0.0;
    std::string worst_state;
    for (int n = 0; n <= 3; ++n) {
        for (int m = -3; m <= 3; ++m) {
            const auto r = hamiltonian_residual(QuantumState::symmetric(n, m, cfg.sign), p, polar, opt).residual;
            if (r > worst) {
                worst = r;
                worst_state = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
            }
        }
    }
    out.push_back({"residual", "symmetric n_r<=3 |m_l|<=3", worst, 1e-3, worst <= 1e-3, "worst state " + worst_state});

    const double k = 0.5 / lb;
    for (Gauge g : {Gauge::LandauFirst, Gauge::LandauSecond}) {
        // Longitudinal axis short, transverse axis wide enough for n = 3 at centre -+ k l_B^2.
        const bool first = g == Gauge::LandauFirst;
        const auto grid = first ? QuadratureGrid::cartesian2d(-lb, lb, 81, -10.0 * lb, 10.0 * lb, 801)
                                : QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 801, -lb, lb, 81);
        double w = 0.0;
        for (int n = 0; n <= 3; ++n) {
            w = std::max(w, hamiltonian_residual(QuantumState::landau(g, n, k, cfg.sign), p, grid, opt).residual);
        }
        out.push_back({"residual", std::string(to_string(g)) + " n<=3", w, 1e-3, w <= 1e-3, "k = 0.5/l_B"});
    }

    if (vo.energy_offset_units == 0.0) {
        const auto c1 = residual_convergence(QuantumState::symmetric(1, 1, cfg.sign), p,
                                             QuadratureGrid::polar(10.0 * lb, 201, 256));
        out.push_back({"residual", "order symmetric (1,1)", c1.order, 1.8, c1.order >= 1.8,
                       "coarse " + sci(c1.coarse, 3) + ", fine " + sci(c1.fine, 3)});
        const auto c2 = residual_convergence(QuantumState::landau(Gauge::LandauFirst, 1, k, cfg.sign), p,
                                             QuadratureGrid::cartesian2d(-lb, lb, 41, -10.0 * lb, 10.0 * lb, 401));
        out.push_back({"residual", "order landau1 n=1", c2.order, 1.8, c2.order >= 1.8,
                       "coarse " + sci(c2.coarse, 3) + ", fine " + sci(c2.fine, 3)});
    }
}

inline void check_oracle(const RunConfig &cfg, std::vector<CheckResult> &out) {
    const auto p = cfg.params();
    const double lb = p.magnetic_length();
    const double unit = half_cyclotron_energy(p);
    DiagonalizeOptions opt;
    opt.sign = cfg.sign;

    const auto box = QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 48, -10.0 * lb, 10.0 * lb, 48);
    const auto sym = grid_diagonalize(p, Gauge::Symmetric, box, 12, opt);
    const double e0 = energy_symmetric(0, 0, p, cfg.sign);
    const double err0 = std::abs(sym.energies.front() - e0) / e0;
    out.push_back({"oracle", "symmetric ground level", err0, 1e-2, err0 <= 1e-2,
                   "grid " + sci(sym.energies.front(), 4) + " J vs " + sci(e0, 4) + " J, dim " +
                       std::to_string(sym.dimension)});
    const double spread = (sym.energies.back() - sym.energies.front()) / (2.0 * unit);
    out.push_back({"oracle", "symmetric lowest-level flatness (12 states)", spread, 1e-2, spread <= 1e-2,
                   "spread in units of hbar omega_c"});

    for (Gauge g : {Gauge::LandauFirst, Gauge::LandauSecond}) {
        const auto line = QuadratureGrid::cartesian1d(-10.0 * lb, 10.0 * lb, 801);
        const auto res = grid_diagonalize(p, g, line, 6, opt);
        std::vector<double> analytic;
        for (int n = 0; n < 6; ++n) {
            analytic.push_back(energy_landau(n, p));
        }
        const auto m = spectrum_match(analytic, res.energies, 1e-2);
        out.push_back({"oracle", std::string(to_string(g)) + " lowest 6 levels", m.max_error, 1e-2, m.pass,
                       "max relative error, k = 0"});
    }
}

}  // namespace detail

[[nodiscard]] inline std::vector<CheckResult> run_verify(const RunConfig &cfg, VerifySuite suite, const VerifyOptions &vo = {}) {
    cfg.validate();
    std::vector<CheckResult> out;
    if (suite == VerifySuite::Norm || suite == VerifySuite::All) {
        detail::check_norm(cfg, out);
    }
    if (suite == VerifySuite::Residual || suite == VerifySuite::All) {
        detail::check_residual(cfg, vo, out);
    }
    if (suite == VerifySuite::Oracle || suite == VerifySuite::All) {
        detail::check_oracle(cfg, out);
    }
    return out;
}

[[nodiscard]] inline nlohmann::json verify_summary(const std::vector<CheckResult> &checks) {
    nlohmann::json j;
    bool all = true;
    for (const auto &c : checks) {
        all = all && c.pass;
        j["checks"].push_back({{"suite", c.suite},
                               {"name", c.name},
                               {"value", c.value},
                               {"threshold", c.threshold},
                               {"pass", c.pass},
                               {"detail", c.detail}});
    }
    j["pass"] = all;
    return j;
}

/// Prints one line per check and writes verify_summary.json into the output directory.
inline int cmd_verify(const RunConfig &cfg, VerifySuite suite, const VerifyOptions &vo, std::ostream &out) {
    const auto checks = run_verify(cfg, suite, vo);
    const auto summary = verify_summary(checks);
    std::filesystem::create_directories(cfg.out_dir);
    detail::write_file(std::filesystem::path(cfg.out_dir) / "verify_summary.json", summary.dump(1) + "\n");
    if (cfg.format == OutputFormat::Json) {
        out << summary.dump(1) << "\n";
    } else {
        for (const auto &c : checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " = " << detail::sci(c.value, 3)
                << " (limit " << detail::sci(c.threshold, 2) << ") " << c.detail << "\n";
        }
        out << (summary["pass"].get<bool>() ? "all checks passed" : "verification failed") << "\n";
    }
    return summary["pass"].get<bool>() ? exit_success : exit_verification;
}

// ------------------------------------------------------------------ sample

struct SampleRequest {
    std::vector<std::pair<int, int>> states;  // (n_r, m_l), symmetric gauge
    bool landau = false;
    int n = 0;                                // n_y for --landau
    double k0 = 0.0;
    std::optional<std::tuple<double, double, std::size_t>> k0_sweep;
    std::vector<double> B_sweep;              // empty: use config B
    bool heatmap = true;
    FieldComponent component = FieldComponent::Abs2;
};

[[nodiscard]] inline std::pair<int, int> parse_state(const std::string &s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("state must be n_r,m_l, got '" + s + "'");
    }
    try {
        std::size_t used = 0;
        const int n = std::stoi(s.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("");
        const auto rest = s.substr(comma + 1);
        const int m = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
        if (n < 0) throw std::invalid_argument("");
        return {n, m};
    } catch (const std::exception &) {
        throw std::invalid_argument("state must be n_r,m_l with n_r >= 0, got '" + s + "'");
    }
}

/// "lo:hi:count"
[[nodiscard]] inline std::tuple<double, double, std::size_t> parse_sweep(const std::string &s) {
    const auto a = s.find(':');
    const auto b = a == std::string::npos ? a : s.find(':', a + 1);
    if (b == std::string::npos) {
        throw std::invalid_argument("sweep must be lo:hi:count, got '" + s + "'");
    }
    try {
        const double lo = std::stod(s.substr(0, a));
        const double hi = std::stod(s.substr(a + 1, b - a - 1));
        const long count = std::stol(s.substr(b + 1));
        if (count < 2 || !(hi > lo)) throw std::invalid_argument("");
        return {lo, hi, static_cast<std::size_t>(count)};
    } catch (const std::exception &) {
        throw std::invalid_argument("sweep must be lo:hi:count with hi > lo and count >= 2, got '" + s + "'");
    }
}

[[nodiscard]] inline FieldComponent parse_component(const std::string &s) {
    if (s == "re") return FieldComponent::Re;
    if (s == "im") return FieldComponent::Im;
    if (s == "abs2") return FieldComponent::Abs2;
    throw std::invalid_argument("component must be re, im or abs2, got '" + s + "'");
}

namespace detail {

inline std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string component_name(FieldComponent c) {
    switch (c) {
        case FieldComponent::Re: return "re";
        case FieldComponent::Im: return "im";
        case FieldComponent::Abs2: return "abs2";
    }
    return "abs2";
}

}  // namespace detail

/// Writes one export per requested state and field strength, plus heatmaps of 2D grids; returns the paths.
[[nodiscard]] inline std::vector<std::filesystem::path> sample_files(const RunConfig &cfg, const SampleRequest &req) {
    cfg.validate();
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    const auto fmt = cfg.format == OutputFormat::Json ? ExportFormat::Json : ExportFormat::Csv;
    const std::string ext = fmt == ExportFormat::Json ? ".json" : ".csv";
    GridSpec spec = cfg.grid;
    spec.timestamp = cfg.timestamp;

    const std::vector<double> fields = req.B_sweep.empty() ? std::vector<double>{cfg.B} : req.B_sweep;
    const bool tag_B = !req.B_sweep.empty();
    PhysicalParams base = cfg.params();
    std::vector<std::filesystem::path> written;

    auto emit = [&](const FieldGrid &g, const std::string &stem) {
        const auto path = dir / (stem + ext);
        export_field(g, fmt, path);
        written.push_back(path);
        if (req.heatmap && g.axes.size() == 2) {
            const auto ppm = dir / (stem + "_" + detail::component_name(req.component) + ".ppm");
            (void)render_heatmap(g, req.component, ppm);
            written.push_back(ppm);
        }
    };

    if (req.landau) {
        if (req.n < 0) {
            throw std::invalid_argument("sample: --n must be non-negative");
        }
        for (double B : fields) {
            PhysicalParams p = base;
            p.B = B;
            p.validate();
            const double theta = theta_from_B(p);
            GridSpec s = spec;
            if (tag_B && s.unit == ExtentUnit::MagneticLengths) {
                // Shared physical axes across the sweep, sized by the weakest field.
                PhysicalParams weakest = base;
                weakest.B = *std::min_element(fields.begin(), fields.end());
                s.unit = ExtentUnit::Meters;
                s.extent = spec.extent * weakest.magnetic_length();
            }
            std::string stem = "landau_n" + std::to_string(req.n);
            FieldGrid g;
            if (req.k0_sweep) {
                const auto &[lo, hi, count] = *req.k0_sweep;
                g = sample_landau_sweep(req.n, sweep_values(lo, hi, count), theta, s, cfg.mode);
                stem += "_k0sweep";
            } else {
                g = sample_landau(req.n, req.k0, theta, s, cfg.mode);
                stem += "_k0_" + detail::compact(req.k0);
            }
            g.meta.B = B;
            if (tag_B) {
                stem += "_B" + detail::compact(B);
            }
            emit(g, stem);
        }
        return written;
    }

    auto states = req.states;
    if (states.empty()) {
        states.emplace_back(0, 0);
    }
    for (const auto &[n, m] : states) {
        SweepState st;
        st.n = n;
        st.m_l = m;
        const auto grids = sweep_field(fields, st, spec, base);
        for (std::size_t i = 0; i < grids.size(); ++i) {
            std::string stem = "symmetric_n" + std::to_string(n) + "_m" + std::to_string(m);
            if (tag_B) {
                stem += "_B" + detail::compact(fields[i]);
            }
            emit(grids[i], stem);
        }
    }
    return written;
}

inline int cmd_sample(const RunConfig &cfg, const SampleRequest &req, std::ostream &out) {
    for (const auto &path : sample_files(cfg, req)) {
        out << "wrote " << path.generic_string() << " (" << std::filesystem::file_size(path) << " bytes)\n";
    }
    return exit_success;
}

}  // namespace nclandau
