#pragma once

/**
 * @file
 * @brief Plot-ready samples of the oscillator eigenfunctions and their file formats.
 *
 * Points are stored with the first axis outermost. Exports are deterministic: no wall-clock data
 * enters a file, and the meta timestamp comes from the caller.
 */

#include "nclandau/errors.hpp"
#include "nclandau/landau.hpp"
#include "nclandau/nc_oscillator.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nclandau {

enum class FieldKind { Polar, Cartesian };

struct FieldAxis {
    std::string name;
    std::string unit;
    std::vector<double> values;

    friend bool operator==(const FieldAxis &, const FieldAxis &) = default;
};

struct FieldPoint {
    double re = 0.0;
    double im = 0.0;
    double abs2 = 0.0;

    friend bool operator==(const FieldPoint &, const FieldPoint &) = default;
};

struct FieldMeta {
    std::string state;  // e.g. "symmetric n_r=0 m_l=1" or "landau1 n_y=1 k0=5e7"
    std::string gauge;
    int n = 0;          // n_r or n_y
    int m_l = 0;
    double k0 = 0.0;    // 1/m
    double theta = 0.0; // m^2
    double B = 0.0;     // T, implied by theta
    std::string mode = "orthonormal";
    std::string amplitude_unit = "1/m";
    std::string timestamp = "0";

    friend bool operator==(const FieldMeta &, const FieldMeta &) = default;
};

struct FieldGrid {
    FieldKind kind = FieldKind::Polar;
    std::vector<FieldAxis> axes;  // one or two
    std::vector<FieldPoint> points;
    FieldMeta meta;

    [[nodiscard]] std::size_t count(std::size_t axis) const { return axes.at(axis).values.size(); }
    [[nodiscard]] std::size_t inner_count() const { return axes.size() == 2 ? axes[1].values.size() : 1; }
    [[nodiscard]] const FieldPoint &at(std::size_t i, std::size_t j = 0) const { return points.at(i * inner_count() + j); }

    friend bool operator==(const FieldGrid &, const FieldGrid &) = default;
};

enum class ExtentUnit { MagneticLengths, Meters };

/**
 * @brief Sampling layout. Polar: n0 radial points over [0, extent], n1 angles over [0, 2 pi).
 * Cartesian: n0 x n1 points over [-extent, extent]^2 (n0 only for 1D).
 */
struct GridSpec {
    FieldKind kind = FieldKind::Polar;
    double extent = 8.0;
    ExtentUnit unit = ExtentUnit::MagneticLengths;
    std::size_t n0 = 256;
    std::size_t n1 = 128;
    std::string timestamp = "0";

    static GridSpec polar_default() { return {}; }
    static GridSpec cartesian_default() { return {FieldKind::Cartesian, 8.0, ExtentUnit::MagneticLengths, 256, 256}; }
};

inline constexpr double max_extent_magnetic_lengths = 64.0;

/// Magnetic length implied by theta = 4 l_B^2.
[[nodiscard]] inline double magnetic_length_from_theta(double theta) { return std::sqrt(theta / 4.0); }

namespace detail {

inline double extent_in_meters(const GridSpec &spec, double lb) {
    const double ext = spec.unit == ExtentUnit::MagneticLengths ? spec.extent * lb : spec.extent;
    if (!(ext > 0.0) || !std::isfinite(ext)) {
        throw std::invalid_argument("GridSpec: extent must be positive");
    }
    if (ext > max_extent_magnetic_lengths * lb * (1.0 + 1e-12)) {
        throw std::invalid_argument("GridSpec: extent exceeds 64 magnetic lengths");
    }
    return ext;
}

inline void require_counts(const GridSpec &spec, bool two_d) {
    if (spec.n0 < 2 || (two_d && spec.n1 < 2)) {
        throw std::invalid_argument("GridSpec: at least 2 points per axis");
    }
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

inline FieldPoint point(std::complex<double> z) { return {z.real(), z.imag(), std::norm(z)}; }

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Symmetric-gauge oscillator eigenfunction (theta form) on a polar or Cartesian grid.
[[nodiscard]] inline FieldGrid sample_symmetric(int n_r, int m_l, double theta, const GridSpec &spec = {}) {
    if (n_r < 0) {
        throw std::invalid_argument("sample_symmetric: n_r must be non-negative");
    }
    if (!(theta > 0.0)) {
        throw std::invalid_argument("sample_symmetric: theta must be positive");
    }
    const double lb = magnetic_length_from_theta(theta);
    const double ext = detail::extent_in_meters(spec, lb);
    detail::require_counts(spec, true);

    FieldGrid g;
    g.kind = spec.kind;
    g.meta.state = "symmetric n_r=" + std::to_string(n_r) + " m_l=" + std::to_string(m_l);
    g.meta.gauge = "symmetric";
    g.meta.n = n_r;
    g.meta.m_l = m_l;
    g.meta.theta = theta;
    g.meta.B = B_from_theta(theta);
    g.meta.timestamp = spec.timestamp;
    g.meta.amplitude_unit = "1/m";

    if (spec.kind == FieldKind::Polar) {
        std::vector<double> phi(spec.n1);
        for (std::size_t j = 0; j < spec.n1; ++j) {
            phi[j] = 2.0 * constants::pi * static_cast<double>(j) / static_cast<double>(spec.n1);
        }
        g.axes = {{"r", "m", detail::linspace(0.0, ext, spec.n0)}, {"phi", "rad", std::move(phi)}};
        g.points.reserve(spec.n0 * spec.n1);
        for (double r : g.axes[0].values) {
            for (double p : g.axes[1].values) {
                g.points.push_back(detail::point(nc_eigenfunction_symmetric(n_r, m_l, theta, r, p)));
            }
        }
    } else {
        g.axes = {{"x", "m", detail::linspace(-ext, ext, spec.n0)}, {"y", "m", detail::linspace(-ext, ext, spec.n1)}};
        g.points.reserve(spec.n0 * spec.n1);
        for (double x : g.axes[0].values) {
            for (double y : g.axes[1].values) {
                g.points.push_back(detail::point(nc_eigenfunction_symmetric(n_r, m_l, theta, std::hypot(x, y), std::atan2(y, x))));
            }
        }
    }
    return g;
}

namespace detail {

inline FieldMeta landau_meta(int n_y, double k0, double theta, NormalizationMode mode, const GridSpec &spec) {
    FieldMeta m;
    m.state = "landau1 n_y=" + std::to_string(n_y) + " k0=" + fmt_double(k0);
    m.gauge = "landau1";
    m.n = n_y;
    m.k0 = k0;
    m.theta = theta;
    m.B = B_from_theta(theta);
    m.mode = std::string(to_string(mode));
    m.amplitude_unit = "1/m^0.5";
    m.timestamp = spec.timestamp;
    return m;
}

}  // namespace detail

/// Transverse oscillator (first Landau gauge context) on a 1D y grid over [-extent, extent].
[[nodiscard]] inline FieldGrid sample_landau(int n_y, double k0, double theta, const GridSpec &spec,
                                             NormalizationMode mode = NormalizationMode::Orthonormal) {
    if (n_y < 0 || !(theta > 0.0) || !std::isfinite(k0)) {
        throw std::invalid_argument("sample_landau: need n_y >= 0, theta > 0, finite k0");
    }
    const double lb = magnetic_length_from_theta(theta);
    const double ext = detail::extent_in_meters(spec, lb);
    detail::require_counts(spec, false);
    FieldGrid g;
    g.kind = FieldKind::Cartesian;
    g.meta = detail::landau_meta(n_y, k0, theta, mode, spec);
    g.axes = {{"y", "m", detail::linspace(-ext, ext, spec.n0)}};
    for (double y : g.axes[0].values) {
        g.points.push_back(detail::point(nc_eigenfunction_landau(n_y, k0, theta, y, mode)));
    }
    return g;
}

/// (y, k0) sweep: axis 0 is y over [-extent, extent], axis 1 lists @p k0_values (strictly increasing).
[[nodiscard]] inline FieldGrid sample_landau_sweep(int n_y, const std::vector<double> &k0_values, double theta,
                                                   const GridSpec &spec,
                                                   NormalizationMode mode = NormalizationMode::Orthonormal) {
    if (k0_values.empty() || !std::is_sorted(k0_values.begin(), k0_values.end()) ||
        std::adjacent_find(k0_values.begin(), k0_values.end()) != k0_values.end()) {
        throw std::invalid_argument("sample_landau_sweep: k0 values must be strictly increasing");
    }
    auto g = sample_landau(n_y, k0_values.front(), theta, spec, mode);
    g.meta.state = "landau1 n_y=" + std::to_string(n_y) + " k0-sweep";
    g.meta.k0 = 0.0;
    g.axes.push_back({"k0", "1/m", k0_values});
    g.points.clear();
    for (double y : g.axes[0].values) {
        for (double k0 : k0_values) {
            g.points.push_back(detail::point(nc_eigenfunction_landau(n_y, k0, theta, y, mode)));
        }
    }
    return g;
}

/// Evenly spaced values lo, ..., hi (count >= 2), for k0 sweeps.
[[nodiscard]] inline std::vector<double> sweep_values(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) {
        throw std::invalid_argument("sweep_values: need hi > lo and count >= 2");
    }
    return detail::linspace(lo, hi, count);
}

/// What to sample in a field sweep.
struct SweepState {
    Gauge gauge = Gauge::Symmetric;
    int n = 0;     // n_r or n_y
    int m_l = 0;
    double k0 = 0.0;
    NormalizationMode mode = NormalizationMode::Orthonormal;
};

/**
 * @brief One grid per field strength, theta = 4 hbar/(eB) recomputed each time.
 *
 * Extents given in magnetic lengths refer to the weakest field, so all grids share one set of axes.
 */
[[nodiscard]] inline std::vector<FieldGrid> sweep_field(const std::vector<double> &B_values, const SweepState &state,
                                                        const GridSpec &spec, const PhysicalParams &base = {}) {
    if (B_values.empty()) {
        throw std::invalid_argument("sweep_field: empty B list");
    }
    const double b_min = *std::min_element(B_values.begin(), B_values.end());
    if (!(b_min > 0.0)) {
        throw std::invalid_argument("sweep_field: every B must be positive");
    }
    PhysicalParams ref = base;
    ref.B = b_min;
    GridSpec fixed = spec;
    if (spec.unit == ExtentUnit::MagneticLengths) {
        fixed.unit = ExtentUnit::Meters;
        fixed.extent = spec.extent * ref.magnetic_length();
    }
    std::vector<FieldGrid> out;
    for (double B : B_values) {
        PhysicalParams p = base;
        p.B = B;
        const double theta = theta_from_B(p);
        if (state.gauge == Gauge::Symmetric) {
            out.push_back(sample_symmetric(state.n, state.m_l, theta, fixed));
        } else {
            out.push_back(sample_landau(state.n, state.k0, theta, fixed, state.mode));
        }
        out.back().meta.B = B;
    }
    return out;
}

/// Area-weighted discrete norm sum |psi|^2 dA (trapezoid; r dr dphi on polar grids, dy on 1D grids).
[[nodiscard]] inline double discrete_norm(const FieldGrid &g) {
    auto trap = [](const std::vector<double> &v, std::size_t i) {
        const std::size_t n = v.size();
        if (n < 2) {
            return 1.0;
        }
        const double h = (v.back() - v.front()) / static_cast<double>(n - 1);
        return (i == 0 || i + 1 == n) ? 0.5 * h : h;
    };
    double sum = 0.0;
    if (g.axes.size() == 1) {
        for (std::size_t i = 0; i < g.count(0); ++i) {
            sum += trap(g.axes[0].values, i) * g.points[i].abs2;
        }
        return sum;
    }
    const std::size_t n1 = g.count(1);
    for (std::size_t i = 0; i < g.count(0); ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
            double w = 0.0;
            if (g.kind == FieldKind::Polar) {
                w = trap(g.axes[0].values, i) * g.axes[0].values[i] * (2.0 * constants::pi / static_cast<double>(n1));
            } else {
                w = trap(g.axes[0].values, i) * trap(g.axes[1].values, j);
            }
            sum += w * g.points[i * n1 + j].abs2;
        }
    }
    return sum;
}

enum class ExportFormat { Csv, Json };
enum class FieldComponent { Re, Im, Abs2 };

[[nodiscard]] inline std::string to_string(FieldKind k) { return k == FieldKind::Polar ? "polar" : "cartesian"; }

[[nodiscard]] inline std::string to_csv(const FieldGrid &g) {
    std::ostringstream os;
    for (const auto &a : g.axes) {
        os << a.name << " [" << a.unit << "],";
    }
    const std::string &u = g.meta.amplitude_unit;
    const std::string u2 = u == "1/m" ? "1/m^2" : "1/m";
    os << "re [" << u << "],im [" << u << "],abs2 [" << u2 << "]\r\n";
    const std::size_t n1 = g.inner_count();
    for (std::size_t i = 0; i < g.count(0); ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
            os << detail::fmt_double(g.axes[0].values[i]) << ',';
            if (g.axes.size() == 2) {
                os << detail::fmt_double(g.axes[1].values[j]) << ',';
            }
            const auto &p = g.points[i * n1 + j];
            os << detail::fmt_double(p.re) << ',' << detail::fmt_double(p.im) << ',' << detail::fmt_double(p.abs2)
               << "\r\n";
        }
    }
    return os.str();
}

/**
 * JSON layout:
 * {
 *   "format": "nclandau.fieldgrid/1",
 *   "kind": "polar" | "cartesian",
 *   "meta": {...},
 *   "axes": [{"name", "unit", "values": [...]}, ...],
 *   "re": [...], "im": [...], "abs2": [...]      // first axis outermost
 * }
 */
[[nodiscard]] inline nlohmann::json to_json(const FieldGrid &g) {
    nlohmann::json j;
    j["format"] = "nclandau.fieldgrid/1";
    j["kind"] = to_string(g.kind);
    j["meta"] = {{"state", g.meta.state}, {"gauge", g.meta.gauge}, {"n", g.meta.n},
                 {"m_l", g.meta.m_l},     {"k0", g.meta.k0},       {"theta", g.meta.theta},
                 {"B", g.meta.B},         {"mode", g.meta.mode},   {"amplitude_unit", g.meta.amplitude_unit},
                 {"timestamp", g.meta.timestamp}};
    j["axes"] = nlohmann::json::array();
    for (const auto &a : g.axes) {
        j["axes"].push_back({{"name", a.name}, {"unit", a.unit}, {"values", a.values}});
    }
    std::vector<double> re, im, abs2;
    re.reserve(g.points.size());
    im.reserve(g.points.size());
    abs2.reserve(g.points.size());
    for (const auto &p : g.points) {
        re.push_back(p.re);
        im.push_back(p.im);
        abs2.push_back(p.abs2);
    }
    j["re"] = re;
    j["im"] = im;
    j["abs2"] = abs2;
    return j;
}

[[nodiscard]] inline FieldGrid from_json(const nlohmann::json &j) {
    if (j.value("format", "") != "nclandau.fieldgrid/1") {
        throw std::invalid_argument("from_json: not a nclandau field grid");
    }
    FieldGrid g;
    g.kind = j.at("kind").get<std::string>() == "polar" ? FieldKind::Polar : FieldKind::Cartesian;
    const auto &m = j.at("meta");
    g.meta.state = m.at("state").get<std::string>();
    g.meta.gauge = m.at("gauge").get<std::string>();
    g.meta.n = m.at("n").get<int>();
    g.meta.m_l = m.at("m_l").get<int>();
    g.meta.k0 = m.at("k0").get<double>();
    g.meta.theta = m.at("theta").get<double>();
    g.meta.B = m.at("B").get<double>();
    g.meta.mode = m.at("mode").get<std::string>();
    g.meta.amplitude_unit = m.at("amplitude_unit").get<std::string>();
    g.meta.timestamp = m.at("timestamp").get<std::string>();
    for (const auto &a : j.at("axes")) {
        g.axes.push_back({a.at("name").get<std::string>(), a.at("unit").get<std::string>(),
                          a.at("values").get<std::vector<double>>()});
    }
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    const auto abs2 = j.at("abs2").get<std::vector<double>>();
    if (re.size() != im.size() || re.size() != abs2.size()) {
        throw std::invalid_argument("from_json: field arrays differ in length");
    }
    for (std::size_t k = 0; k < re.size(); ++k) {
        g.points.push_back({re[k], im[k], abs2[k]});
    }
    return g;
}

namespace detail {

inline void write_file(const std::filesystem::path &path, const std::string &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

}  // namespace detail

inline void export_field(const FieldGrid &g, ExportFormat format, const std::filesystem::path &path) {
    detail::write_file(path, format == ExportFormat::Csv ? to_csv(g) : to_json(g).dump(1) + "\n");
}

[[nodiscard]] inline FieldGrid read_field_json(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception &e) {
        throw IoError("malformed field file '" + path.string() + "': " + e.what());
    }
}

struct HeatmapResult {
    std::size_t width = 0;
    std::size_t height = 0;
    bool degenerate_range = false;  // constant field, rendered mid-gray
    double min = 0.0;
    double max = 0.0;
};

[[nodiscard]] inline double component(const FieldPoint &p, FieldComponent c) {
    switch (c) {
        case FieldComponent::Re: return p.re;
        case FieldComponent::Im: return p.im;
        case FieldComponent::Abs2: return p.abs2;
    }
    return 0.0;
}

/**
 * @brief Linear grayscale binary PPM (P6), min-max normalized per image, black = min.
 *
 * Cartesian grids map one point to one pixel with the second axis pointing up. Polar grids are
 * resampled by nearest neighbour onto a square raster of side 2 * n_r - 1 covering [-R, R]^2;
 * pixels outside R take the field minimum.
 */
[[nodiscard]] inline std::vector<std::uint8_t> heatmap_pixels(const FieldGrid &g, FieldComponent c, HeatmapResult &info) {
    if (g.axes.size() != 2) {
        throw std::invalid_argument("render_heatmap: needs a two-dimensional grid");
    }
    info.min = component(g.points.front(), c);
    info.max = info.min;
    for (const auto &p : g.points) {
        info.min = std::min(info.min, component(p, c));
        info.max = std::max(info.max, component(p, c));
    }
    info.degenerate_range = !(info.max > info.min);
    auto gray = [&](double v) -> std::uint8_t {
        if (info.degenerate_range) {
            return 128;
        }
        const double t = (v - info.min) / (info.max - info.min);
        return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
    };

    std::vector<std::uint8_t> px;
    const std::size_t n0 = g.count(0);
    const std::size_t n1 = g.count(1);
    if (g.kind == FieldKind::Cartesian) {
        info.width = n0;
        info.height = n1;
        px.resize(3 * n0 * n1);
        for (std::size_t row = 0; row < n1; ++row) {
            const std::size_t j = n1 - 1 - row;
            for (std::size_t i = 0; i < n0; ++i) {
                const auto v = gray(component(g.points[i * n1 + j], c));
                std::fill_n(px.begin() + 3 * (row * n0 + i), 3, v);
            }
        }
        return px;
    }
    const double rmax = g.axes[0].values.back();
    const double dr = rmax / static_cast<double>(n0 - 1);
    const std::size_t side = 2 * n0 - 1;
    info.width = info.height = side;
    px.resize(3 * side * side);
    for (std::size_t row = 0; row < side; ++row) {
        const double y = rmax - static_cast<double>(row) * dr;
        for (std::size_t col = 0; col < side; ++col) {
            const double x = -rmax + static_cast<double>(col) * dr;
            const double r = std::hypot(x, y);
            std::uint8_t v = gray(info.min);
            if (r <= rmax * (1.0 + 1e-12)) {
                const auto i = std::min<std::size_t>(static_cast<std::size_t>(std::lround(r / dr)), n0 - 1);
                double phi = std::atan2(y, x);
                if (phi < 0.0) {
                    phi += 2.0 * constants::pi;
                }
                const auto j = static_cast<std::size_t>(std::lround(phi / (2.0 * constants::pi) * static_cast<double>(n1))) % n1;
                v = gray(component(g.points[i * n1 + j], c));
            }
            std::fill_n(px.begin() + 3 * (row * side + col), 3, v);
        }
    }
    return px;
}

inline HeatmapResult render_heatmap(const FieldGrid &g, FieldComponent c, const std::filesystem::path &path) {
    HeatmapResult info;
    const auto px = heatmap_pixels(g, c, info);
    std::string bytes = "P6\n" + std::to_string(info.width) + " " + std::to_string(info.height) + "\n255\n";
    bytes.append(px.begin(), px.end());
    detail::write_file(path, bytes);
    return info;
}

}  // namespace nclandau
