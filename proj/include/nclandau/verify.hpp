#pragma once

/**
 * @file
 * @brief Numerical oracles that check the analytic spectra without trusting them.
 *
 * All operators are discretized in natural units (lengths in magnetic lengths l_B, energies in
 * hbar omega_c) and converted back to SI at the boundary.
 */

#include "nclandau/eigensolver.hpp"
#include "nclandau/errors.hpp"
#include "nclandau/landau.hpp"
#include "nclandau/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nclandau {

inline constexpr double min_points_per_magnetic_length = 20.0;

struct ResidualOptions {
    /// Added to the analytic energy before forming H psi - E psi (J). Nonzero only for negative controls.
    double energy_shift = 0.0;
    /// Throw ResolutionError when the predicted truncation error exceeds this; 0 disables the check.
    double tolerance = 0.0;
    NormalizationMode mode = NormalizationMode::Orthonormal;
};

struct ResidualResult {
    double residual = 0.0;              // ||H psi - E psi||_2 / ||E psi||_2 over interior points
    double predicted_truncation = 0.0;  // heuristic second-order error estimate
    std::size_t interior_points = 0;
};

namespace detail {

/// Rough second-order truncation estimate: (h k)^2 / 12 summed over the resolved wave numbers.
inline double predicted_truncation(double h_over_lb, double level_units, double angular_term) {
    return (h_over_lb * h_over_lb * level_units * level_units) / 12.0 + angular_term;
}

inline void require_resolution(double h, double lb, const char *axis) {
    if (lb / h < min_points_per_magnetic_length * (1.0 - 1e-12)) {
        throw ResolutionError(std::string("hamiltonian_residual: ") + axis + " axis resolves l_B by " +
                              std::to_string(lb / h) + " points, need at least 20");
    }
}

/// Symmetric-gauge operator on a polar grid:
/// H/(hbar w_c) = -1/2 (d_rr + d_r/r + d_pp/r^2) + r^2/8 + (s/2) i d_p, with r in l_B.
inline ResidualResult polar_residual(const SampledField &psi, double lb, double e_units, int s) {
    const auto &g = psi.grid;
    const std::size_t nr = g.count(0);
    const std::size_t np = g.count(1);
    const double hr = g.spacing(0) / lb;
    const double hp = g.spacing(1);
    const auto at = [&](std::size_t i, std::size_t j) { return psi.values[i * np + j]; };
    const std::complex<double> I(0.0, 1.0);

    double num = 0.0;
    double den = 0.0;
    ResidualResult res;
    for (std::size_t i = 1; i + 1 < nr; ++i) {
        const double r = i * hr;
        for (std::size_t j = 0; j < np; ++j) {
            const std::size_t jp = (j + 1) % np;
            const std::size_t jm = (j + np - 1) % np;
            const auto f = at(i, j);
            const auto f_rr = (at(i + 1, j) - 2.0 * f + at(i - 1, j)) / (hr * hr);
            const auto f_r = (at(i + 1, j) - at(i - 1, j)) / (2.0 * hr);
            const auto f_pp = (at(i, jp) - 2.0 * f + at(i, jm)) / (hp * hp);
            const auto f_p = (at(i, jp) - at(i, jm)) / (2.0 * hp);
            const auto hf = -0.5 * (f_rr + f_r / r + f_pp / (r * r)) + (r * r / 8.0) * f + 0.5 * s * I * f_p;
            const double w = r;
            num += w * std::norm(hf - e_units * f);
            den += w * std::norm(e_units * f);
            ++res.interior_points;
        }
    }
    res.residual = std::sqrt(num / den);
    return res;
}

/// Landau-gauge operator on a Cartesian (x, y) grid. First gauge:
/// H/(hbar w_c) = -1/2 (d_xx + d_yy) + y^2/2 + s y (-i d_x); the second swaps the roles with
/// + x^2/2 - s x (-i d_y).
inline ResidualResult cartesian_residual(const SampledField &psi, double lb, double e_units, int s, Gauge gauge) {
    const auto &g = psi.grid;
    const std::size_t nx = g.count(0);
    const std::size_t ny = g.count(1);
    const double hx = g.spacing(0) / lb;
    const double hy = g.spacing(1) / lb;
    const auto at = [&](std::size_t i, std::size_t j) { return psi.values[i * ny + j]; };
    const std::complex<double> I(0.0, 1.0);

    double num = 0.0;
    double den = 0.0;
    ResidualResult res;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double x = g.coordinate(0, i) / lb;
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            const double y = g.coordinate(1, j) / lb;
            const auto f = at(i, j);
            const auto f_xx = (at(i + 1, j) - 2.0 * f + at(i - 1, j)) / (hx * hx);
            const auto f_yy = (at(i, j + 1) - 2.0 * f + at(i, j - 1)) / (hy * hy);
            const auto f_x = (at(i + 1, j) - at(i - 1, j)) / (2.0 * hx);
            const auto f_y = (at(i, j + 1) - at(i, j - 1)) / (2.0 * hy);
            std::complex<double> hf = -0.5 * (f_xx + f_yy);
            if (gauge == Gauge::LandauFirst) {
                hf += 0.5 * y * y * f + static_cast<double>(s) * y * (-I * f_x);
            } else {
                hf += 0.5 * x * x * f - static_cast<double>(s) * x * (-I * f_y);
            }
            num += std::norm(hf - e_units * f);
            den += std::norm(e_units * f);
            ++res.interior_points;
        }
    }
    res.residual = std::sqrt(num / den);
    return res;
}

}  // namespace detail

/**
 * @brief Relative residual of a sampled field under the finite-difference Hamiltonian of @p gauge.
 *
 * Symmetric gauge needs a polar grid (r, phi); the Landau gauges need a Cartesian2D grid (x, y).
 * Fields from either side of the isomorphism can be passed here.
 */
[[nodiscard]] inline ResidualResult hamiltonian_residual(const SampledField &psi, double energy_J, Gauge gauge,
                                                         SignConvention sign, const PhysicalParams &p) {
    p.validate();
    const double lb = p.magnetic_length();
    const double e_units = energy_J / (2.0 * half_cyclotron_energy(p));
    if (gauge == Gauge::Symmetric) {
        if (psi.grid.kind() != GridKind::Polar) {
            throw std::invalid_argument("hamiltonian_residual: symmetric gauge needs a polar grid");
        }
        detail::require_resolution(psi.grid.spacing(0), lb, "radial");
        return detail::polar_residual(psi, lb, e_units, sign.value());
    }
    if (psi.grid.kind() != GridKind::Cartesian2D) {
        throw std::invalid_argument("hamiltonian_residual: Landau gauges need a Cartesian2D grid");
    }
    detail::require_resolution(psi.grid.spacing(0), lb, "x");
    detail::require_resolution(psi.grid.spacing(1), lb, "y");
    return detail::cartesian_residual(psi, lb, e_units, sign.value(), gauge);
}

/// Samples the analytic eigenfunction of @p state on @p grid and returns its residual.
[[nodiscard]] inline ResidualResult hamiltonian_residual(const QuantumState &state, const PhysicalParams &p,
                                                         const QuadratureGrid &grid, const ResidualOptions &opt = {}) {
    p.validate();
    state.validate();
    const double lb = p.magnetic_length();
    double predicted = 0.0;
    SampledField psi{grid, {}};
    if (state.is_symmetric()) {
        if (grid.kind() != GridKind::Polar) {
            throw std::invalid_argument("hamiltonian_residual: symmetric gauge needs a polar grid");
        }
        const double m = std::abs(state.m_l);
        const double hp = grid.spacing(1);
        predicted = detail::predicted_truncation(grid.spacing(0) / lb, 2.0 * state.n_r + m + 1.0,
                                                 hp * hp * m * m * (m + 1.0) / 12.0);
        psi = sample(grid, [&](double r, double phi) { return eigenfunction_symmetric(state, p, r, phi, opt.mode); });
    } else {
        if (grid.kind() != GridKind::Cartesian2D) {
            throw std::invalid_argument("hamiltonian_residual: Landau gauges need a Cartesian2D grid");
        }
        const int longitudinal = state.gauge == Gauge::LandauFirst ? 0 : 1;
        const int transverse = 1 - longitudinal;
        const double kh = state.k * grid.spacing(longitudinal);
        predicted = detail::predicted_truncation(grid.spacing(transverse) / lb, 2.0 * state.n_perp + 1.0,
                                                 kh * kh / 12.0);
        psi = sample(grid, [&](double x, double y) { return eigenfunction_landau(state, p, x, y, opt.mode); });
    }
    if (opt.tolerance > 0.0 && predicted > opt.tolerance) {
        throw ResolutionError("hamiltonian_residual: predicted truncation " + std::to_string(predicted) +
                              " exceeds tolerance " + std::to_string(opt.tolerance));
    }
    auto res = hamiltonian_residual(psi, energy(state, p) + opt.energy_shift, state.gauge, state.sign, p);
    res.predicted_truncation = predicted;
    return res;
}

struct ConvergenceStudy {
    double coarse = 0.0;
    double fine = 0.0;
    double order = 0.0;  // log2(coarse / fine)
};

/// Residual on @p grid and on the grid with every spacing halved.
[[nodiscard]] inline ConvergenceStudy residual_convergence(const QuantumState &state, const PhysicalParams &p,
                                                           const QuadratureGrid &grid) {
    ConvergenceStudy c;
    c.coarse = hamiltonian_residual(state, p, grid).residual;
    c.fine = hamiltonian_residual(state, p, grid.refined()).residual;
    c.order = std::log2(c.coarse / c.fine);
    return c;
}

/**
 * @brief Discrete magnetic Hamiltonian of the symmetric gauge on the interior nodes of a Cartesian
 * Dirichlet box, in units of hbar omega_c.
 *
 * The vector potential enters through Peierls link phases on a fourth-order covariant Laplacian, so
 * the operator is Hermitian by construction and the lowest Landau level stays flat across the box.
 * Node index = i * n_y + j.
 */
[[nodiscard]] inline HermitianMatrix assemble_symmetric_gauge(const PhysicalParams &p, const QuadratureGrid &grid,
                                                              SignConvention sign) {
    if (grid.kind() != GridKind::Cartesian2D) {
        throw std::invalid_argument("assemble_symmetric_gauge: needs a Cartesian2D grid");
    }
    const double lb = p.magnetic_length();
    const std::size_t nx = grid.count(0);
    const std::size_t ny = grid.count(1);
    const double hx = grid.spacing(0) / lb;
    const double hy = grid.spacing(1) / lb;
    const int s = sign.value();
    // -1/2 times the five-point (per axis) fourth-order second-derivative stencil.
    constexpr double c0 = -30.0 / 12.0;
    constexpr double c1 = 16.0 / 12.0;
    constexpr double c2 = -1.0 / 12.0;

    HermitianMatrix h(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = grid.coordinate(0, i) / lb;
        for (std::size_t j = 0; j < ny; ++j) {
            const double y = grid.coordinate(1, j) / lb;
            const std::size_t k = i * ny + j;
            h.add_diagonal(k, -0.5 * c0 * (1.0 / (hx * hx) + 1.0 / (hy * hy)));
            // (q/hbar) A = s (-y/2, x/2) in units of 1/l_B.
            const double ax = -0.5 * s * y;
            const double ay = 0.5 * s * x;
            for (std::size_t d = 1; d <= 2; ++d) {
                const double c = d == 1 ? c1 : c2;
                if (i + d < nx) {
                    h.add_pair(k, (i + d) * ny + j, -0.5 * c / (hx * hx) * std::polar(1.0, -ax * d * hx));
                }
                if (j + d < ny) {
                    h.add_pair(k, i * ny + j + d, -0.5 * c / (hy * hy) * std::polar(1.0, -ay * d * hy));
                }
            }
        }
    }
    return h;
}

/**
 * @brief Landau-gauge Hamiltonian at fixed longitudinal wave number @p k on a 1D Dirichlet grid over the
 * transverse coordinate, in units of hbar omega_c. Real symmetric tridiagonal.
 *
 * First gauge (grid over y): -1/2 d_yy + (k l_B + s y)^2/2. Second gauge (grid over x): -1/2 d_xx + (k l_B - s x)^2/2.
 */
[[nodiscard]] inline HermitianMatrix assemble_landau_gauge(const PhysicalParams &p, const QuadratureGrid &grid,
                                                           Gauge gauge, SignConvention sign, double k) {
    if (grid.kind() != GridKind::Cartesian1D) {
        throw std::invalid_argument("assemble_landau_gauge: needs a Cartesian1D grid");
    }
    if (gauge == Gauge::Symmetric) {
        throw std::invalid_argument("assemble_landau_gauge: gauge must be a Landau gauge");
    }
    const double lb = p.magnetic_length();
    const std::size_t n = grid.count(0);
    const double h = grid.spacing(0) / lb;
    const double kl = k * lb;
    const double s = gauge == Gauge::LandauFirst ? sign.value() : -sign.value();
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = grid.coordinate(0, i) / lb;
        const double shifted = kl + s * u;
        m.add_diagonal(i, 1.0 / (h * h) + 0.5 * shifted * shifted);
        if (i + 1 < n) {
            m.add_pair(i, i + 1, -0.5 / (h * h));
        }
    }
    return m;
}

struct DiagonalizeOptions {
    SignConvention sign{};
    double k = 0.0;  // 1/m, Landau gauges only
    LanczosOptions lanczos{};
};

struct DiagonalizationResult {
    std::vector<double> energies;  // J, ascending
    EigenMethod method = EigenMethod::Dense;
    std::size_t dimension = 0;
    int iterations = 0;
    /// Ground density at the nearest box wall exceeds 1e-8 of its peak.
    bool box_warning = false;
    double boundary_density_ratio = 0.0;
};

inline constexpr std::size_t max_oracle_count = 12;

/**
 * @brief Lowest @p count eigenvalues of the discretized Hamiltonian, in J, from the grid alone.
 *
 * Symmetric gauge: Cartesian2D grid; its nodes are the unknowns and the wavefunction vanishes one
 * spacing beyond them. Landau gauges: Cartesian1D grid over the transverse coordinate at fixed k.
 */
[[nodiscard]] inline DiagonalizationResult grid_diagonalize(const PhysicalParams &p, Gauge gauge,
                                                            const QuadratureGrid &grid, std::size_t count,
                                                            const DiagonalizeOptions &opt = {}) {
    p.validate();
    if (count == 0 || count > max_oracle_count) {
        throw std::invalid_argument("grid_diagonalize: count must be in 1..12");
    }
    const double lb = p.magnetic_length();
    HermitianMatrix h = gauge == Gauge::Symmetric ? assemble_symmetric_gauge(p, grid, opt.sign)
                                                  : assemble_landau_gauge(p, grid, gauge, opt.sign, opt.k);

    DiagonalizationResult out;
    out.dimension = h.dim();

    // Distance from the ground-state centre to the nearest Dirichlet wall, in l_B.
    double wall = 0.0;
    if (gauge == Gauge::Symmetric) {
        wall = std::min({-grid.lower(0), grid.upper(0), -grid.lower(1), grid.upper(1)}) / lb;
        wall += std::min(grid.spacing(0), grid.spacing(1)) / lb;
        out.boundary_density_ratio = std::exp(-0.5 * wall * wall);  // |psi_00|^2 ~ exp(-r^2/2 l_B^2)
    } else {
        const double s = gauge == Gauge::LandauFirst ? opt.sign.value() : -opt.sign.value();
        const double centre = -opt.k * lb / s;
        wall = std::min(centre - grid.lower(0) / lb, grid.upper(0) / lb - centre) + grid.spacing(0) / lb;
        out.boundary_density_ratio = std::exp(-wall * wall);  // |psi_0|^2 ~ exp(-(u - u0)^2 / l_B^2)
    }
    out.box_warning = out.boundary_density_ratio > 1e-8;

    const auto eig = lowest_eigenvalues(h, count, opt.lanczos);
    out.method = eig.method;
    out.iterations = eig.iterations;
    const double unit = 2.0 * half_cyclotron_energy(p);
    out.energies.reserve(eig.values.size());
    for (double v : eig.values) {
        out.energies.push_back(v * unit);
    }
    return out;
}

struct SpectrumMatchReport {
    std::vector<double> analytic;  // J, ascending
    std::vector<double> numeric;   // J, ascending
    std::vector<double> relative_errors;
    double max_error = 0.0;
    bool pass = false;
    /// Inputs had different lengths; both were truncated to the shorter one.
    bool length_warning = false;
};

[[nodiscard]] inline SpectrumMatchReport spectrum_match(std::vector<double> analytic, std::vector<double> numeric,
                                                        double tol) {
    if (analytic.empty() || numeric.empty()) {
        throw std::invalid_argument("spectrum_match: both spectra must be non-empty");
    }
    std::sort(analytic.begin(), analytic.end());
    std::sort(numeric.begin(), numeric.end());
    SpectrumMatchReport rep;
    const std::size_t n = std::min(analytic.size(), numeric.size());
    rep.length_warning = analytic.size() != numeric.size();
    analytic.resize(n);
    numeric.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double err = std::abs(numeric[i] - analytic[i]) / std::abs(analytic[i]);
        rep.relative_errors.push_back(err);
        rep.max_error = std::max(rep.max_error, err);
    }
    rep.analytic = std::move(analytic);
    rep.numeric = std::move(numeric);
    rep.pass = rep.max_error <= tol;
    return rep;
}

}  // namespace nclandau
