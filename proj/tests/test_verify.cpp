#include "nclandau/eigensolver.hpp"
#include "nclandau/nc_oscillator.hpp"
#include "nclandau/quadrature.hpp"
#include "nclandau/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nclandau;

namespace {

const PhysicalParams defaults{};
const double lb = defaults.magnetic_length();

SampledField symmetric_field(const QuadratureGrid &g, int n, int m) {
    const auto st = QuantumState::symmetric(n, m);
    return sample(g, [&](double r, double phi) { return eigenfunction_symmetric(st, defaults, r, phi); });
}

}  // namespace

TEST(Quadrature, GregoryIntegratesOddRadialIntegrand) {
    // int_0^R r e^{-r^2} dr with R = 8: 0.5 (1 - e^{-64}).
    for (std::size_t n : {128u, 256u}) {
        const double h = 8.0 / static_cast<double>(n - 1);
        const auto w = gregory_weights(n, h);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = i * h;
            s += w[i] * r * std::exp(-r * r);
        }
        EXPECT_NEAR(s, 0.5, n == 128 ? 1e-8 : 1e-10);
    }
    EXPECT_THROW((void)gregory_weights(13, 0.1), std::invalid_argument);
}

TEST(Quadrature, GridValidation) {
    EXPECT_THROW((void)QuadratureGrid::polar(10.0 * lb, 15, 32), std::invalid_argument);
    EXPECT_THROW((void)QuadratureGrid::cartesian1d(1.0, 0.0, 32), std::invalid_argument);
    EXPECT_THROW(QuadratureGrid::polar(6.0 * lb, 64, 32).validate_for(defaults), ResolutionError);
    EXPECT_NO_THROW(QuadratureGrid::polar(8.0 * lb, 64, 32).validate_for(defaults));
    const auto g = QuadratureGrid::polar(10.0 * lb, 101, 32);
    const auto f = g.refined();
    EXPECT_EQ(f.count(0), 201u);
    EXPECT_EQ(f.count(1), 64u);
    EXPECT_DOUBLE_EQ(f.spacing(0) * 2.0, g.spacing(0));
}

TEST(InnerProduct, SpecExamples) {
    const auto g = QuadratureGrid::polar(10.0 * lb, 257, 32);
    const auto f00 = symmetric_field(g, 0, 0);
    EXPECT_NEAR(std::abs(inner_product(f00, f00) - 1.0), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(inner_product(f00, symmetric_field(g, 0, 1))), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(inner_product(symmetric_field(g, 1, 0), symmetric_field(g, 2, 0))), 0.0, 1e-6);
}

TEST(InnerProduct, GramMatrixIsIdentity) {
    const auto g = QuadratureGrid::polar(12.0 * lb, 257, 32);
    std::vector<SampledField> fs;
    for (int n = 0; n <= 4; ++n) {
        for (int m = -4; m <= 4; ++m) {
            fs.push_back(symmetric_field(g, n, m));
        }
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < fs.size(); ++a) {
        for (std::size_t b = 0; b < fs.size(); ++b) {
            worst = std::max(worst, std::abs(inner_product(fs[a], fs[b]) - (a == b ? 1.0 : 0.0)));
        }
    }
    EXPECT_LE(worst, 1e-6);
}

TEST(InnerProduct, LandauTransverseNormalization) {
    // Per unit longitudinal length: integrate |psi|^2 over y only.
    const auto g = QuadratureGrid::cartesian1d(-12.0 * lb, 12.0 * lb, 801);
    for (int n = 0; n <= 4; ++n) {
        const auto st = QuantumState::landau(Gauge::LandauFirst, n, 0.3 / lb);
        const auto f = sample(g, [&](double y, double) { return eigenfunction_landau(st, defaults, 0.0, y); });
        EXPECT_NEAR(inner_product(f, f).real(), 1.0, 1e-10);
    }
}

TEST(InnerProduct, MismatchedGridsThrow) {
    const auto a = symmetric_field(QuadratureGrid::polar(10.0 * lb, 64, 32), 0, 0);
    const auto b = symmetric_field(QuadratureGrid::polar(10.0 * lb, 65, 32), 0, 0);
    EXPECT_THROW((void)inner_product(a, b), GridMismatchError);
}

TEST(Eigensolver, DenseMatchesKnownSpectrum) {
    // 1D Dirichlet Laplacian: eigenvalues 2 - 2 cos(k pi/(n+1)).
    const std::size_t n = 50;
    HermitianMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.add_diagonal(i, 2.0);
        if (i + 1 < n) {
            h.add_pair(i, i + 1, -1.0);
        }
    }
    const auto r = lowest_eigenvalues_dense(h, 5);
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_NEAR(r.values[k], 2.0 - 2.0 * std::cos((k + 1) * constants::pi / (n + 1)), 1e-12);
    }
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_TRUE(h.is_real());
}

TEST(Eigensolver, LanczosAgreesWithDenseOnMagneticBox) {
    const auto grid = QuadratureGrid::cartesian2d(-5.0 * lb, 5.0 * lb, 24, -5.0 * lb, 5.0 * lb, 24);
    const auto h = assemble_symmetric_gauge(defaults, grid, SignConvention::positive());
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_FALSE(h.is_real());
    const auto dense = lowest_eigenvalues_dense(h, 8);
    const auto lanczos = lowest_eigenvalues_lanczos(h, 8, {});
    ASSERT_EQ(lanczos.values.size(), 8u);
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_NEAR(lanczos.values[k], dense.values[k], 1e-6 * std::abs(dense.values[k]));
    }
    EXPECT_EQ(lanczos.method, EigenMethod::Lanczos);
}

TEST(Eigensolver, RandomHermitianAgreement) {
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    const std::size_t n = 120;
    HermitianMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.add_diagonal(i, 4.0 * nd(rng));
        for (std::size_t j = i + 1; j < std::min(n, i + 4); ++j) {
            h.add_pair(i, j, {nd(rng), nd(rng)});
        }
    }
    const auto d = lowest_eigenvalues_dense(h, 6);
    const auto l = lowest_eigenvalues_lanczos(h, 6, {});
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_NEAR(l.values[k], d.values[k], 1e-8);
    }
}

TEST(Residual, GroundStateOn400x64Grid) {
    const auto g = QuadratureGrid::polar(10.0 * lb, 401, 64);
    const auto r = hamiltonian_residual(QuantumState::symmetric(0, 0), defaults, g);
    EXPECT_LE(r.residual, 1e-3);
    EXPECT_GT(r.interior_points, 0u);
}

TEST(Residual, AllLowStatesBothSigns) {
    const auto g = QuadratureGrid::polar(10.0 * lb, 401, 512);
    for (int s : {1, -1}) {
        for (int n = 0; n <= 3; ++n) {
            for (int m = -3; m <= 3; ++m) {
                const auto r = hamiltonian_residual(QuantumState::symmetric(n, m, SignConvention(s)), defaults, g);
                EXPECT_LE(r.residual, 1e-3) << s << " " << n << " " << m;
            }
        }
    }
}

TEST(Residual, LandauGaugesBothSigns) {
    const auto g1 = QuadratureGrid::cartesian2d(-lb, lb, 81, -10.0 * lb, 10.0 * lb, 801);
    const auto g2 = QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 801, -lb, lb, 81);
    for (int s : {1, -1}) {
        for (int n = 0; n <= 3; ++n) {
            const auto a = QuantumState::landau(Gauge::LandauFirst, n, 0.5 / lb, SignConvention(s));
            const auto b = QuantumState::landau(Gauge::LandauSecond, n, 0.5 / lb, SignConvention(s));
            EXPECT_LE(hamiltonian_residual(a, defaults, g1).residual, 1e-3);
            EXPECT_LE(hamiltonian_residual(b, defaults, g2).residual, 1e-3);
        }
    }
}

TEST(Residual, WrongSignIsDetected) {
    // A state of one sign is not an eigenfunction of the other sign's operator.
    const auto g = QuadratureGrid::polar(10.0 * lb, 401, 128);
    const auto st = QuantumState::symmetric(0, 2, SignConvention::positive());
    const auto psi = sample(g, [&](double r, double phi) { return eigenfunction_symmetric(st, defaults, r, phi); });
    const auto r = hamiltonian_residual(psi, energy(st, defaults), Gauge::Symmetric, SignConvention::negative(), defaults);
    EXPECT_GT(r.residual, 0.5);
}

TEST(Residual, NcSideFieldsSatisfyLandauOperator) {
    const auto g = QuadratureGrid::polar(10.0 * lb, 401, 128);
    const double th = theta_from_B(defaults);
    const auto nc = map_to_nc(defaults);
    const auto psi = sample(g, [&](double r, double phi) { return nc_eigenfunction_symmetric(1, -2, th, r, phi); });
    const auto r = hamiltonian_residual(psi, nc_energy_symmetric(1, -2, nc), Gauge::Symmetric,
                                        SignConvention::positive(), defaults);
    EXPECT_LE(r.residual, 1e-3);
}

TEST(Residual, ConvergenceOrder) {
    const auto c = residual_convergence(QuantumState::symmetric(0, 0), defaults, QuadratureGrid::polar(10.0 * lb, 201, 256));
    EXPECT_GE(c.order, 1.8);
    const auto c1 = residual_convergence(QuantumState::landau(Gauge::LandauSecond, 2, 0.5 / lb), defaults,
                                         QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 401, -lb, lb, 41));
    EXPECT_GE(c1.order, 1.8);
}

TEST(Residual, NegativeControlAndResolutionErrors) {
    const auto g = QuadratureGrid::polar(10.0 * lb, 401, 64);
    ResidualOptions opt;
    opt.energy_shift = 2.0 * half_cyclotron_energy(defaults);  // E + hbar omega_c
    const auto r = hamiltonian_residual(QuantumState::symmetric(0, 0), defaults, g, opt);
    EXPECT_NEAR(r.residual, 2.0 / 3.0, 1e-2);

    EXPECT_THROW((void)hamiltonian_residual(QuantumState::symmetric(0, 0), defaults, QuadratureGrid::polar(10.0 * lb, 101, 64)),
                 ResolutionError);
    ResidualOptions strict;
    strict.tolerance = 1e-9;
    EXPECT_THROW((void)hamiltonian_residual(QuantumState::symmetric(2, 2), defaults, g, strict), ResolutionError);
    EXPECT_THROW((void)hamiltonian_residual(QuantumState::symmetric(0, 0), defaults,
                                            QuadratureGrid::cartesian2d(-lb, lb, 81, -lb, lb, 81)),
                 std::invalid_argument);
}

TEST(Oracle, SymmetricGaugeGroundLevel) {
    const auto box = QuadratureGrid::cartesian2d(-10.0 * lb, 10.0 * lb, 48, -10.0 * lb, 10.0 * lb, 48);
    for (int s : {1, -1}) {
        DiagonalizeOptions opt;
        opt.sign = SignConvention(s);
        const auto r = grid_diagonalize(defaults, Gauge::Symmetric, box, 12, opt);
        EXPECT_NEAR(r.energies.front() / 1.112e-22, 1.0, 1e-2);
        EXPECT_NEAR(r.energies.front() / energy_symmetric(0, 0, defaults), 1.0, 1e-2);
        // The lowest level stays flat: the 12 lowest states all belong to it.
        EXPECT_LT((r.energies.back() - r.energies.front()) / r.energies.front(), 1e-2);
        EXPECT_FALSE(r.box_warning);
        EXPECT_EQ(r.method, EigenMethod::Dense);
        EXPECT_LE(r.dimension, dense_dimension_limit);
    }
}

TEST(Oracle, LandauGaugeLevelsAndSpacing) {
    const auto line = QuadratureGrid::cartesian1d(-10.0 * lb, 10.0 * lb, 801);
    for (Gauge g : {Gauge::LandauFirst, Gauge::LandauSecond}) {
        for (double k : {0.0, 1.5 / lb}) {
            DiagonalizeOptions opt;
            opt.k = k;
            const auto r = grid_diagonalize(defaults, g, line, 6, opt);
            std::vector<double> analytic;
            for (int n = 0; n < 6; ++n) {
                analytic.push_back(energy_landau(n, defaults));
            }
            EXPECT_TRUE(spectrum_match(analytic, r.energies, 1e-2).pass);
            const double quantum = 2.0 * half_cyclotron_energy(defaults);
            for (std::size_t i = 1; i < r.energies.size(); ++i) {
                EXPECT_NEAR((r.energies[i] - r.energies[i - 1]) / quantum, 1.0, 2e-2);
            }
        }
    }
}

TEST(Oracle, Diagnostics) {
    const auto small = QuadratureGrid::cartesian2d(-2.0 * lb, 2.0 * lb, 20, -2.0 * lb, 2.0 * lb, 20);
    EXPECT_TRUE(grid_diagonalize(defaults, Gauge::Symmetric, small, 2).box_warning);
    const auto line = QuadratureGrid::cartesian1d(-10.0 * lb, 10.0 * lb, 201);
    EXPECT_THROW((void)grid_diagonalize(defaults, Gauge::LandauFirst, line, 13), std::invalid_argument);
    EXPECT_THROW((void)grid_diagonalize(defaults, Gauge::LandauFirst, line, 0), std::invalid_argument);
}

TEST(SpectrumMatch, Examples) {
    const std::vector<double> a = {1.0, 3.0, 5.0};
    const auto same = spectrum_match(a, a, 1e-12);
    EXPECT_TRUE(same.pass);
    EXPECT_EQ(same.max_error, 0.0);
    EXPECT_FALSE(same.length_warning);

    std::vector<double> scaled;
    for (double v : a) {
        scaled.push_back(v * (1.0 + 5e-3));
    }
    EXPECT_TRUE(spectrum_match(a, scaled, 1e-2).pass);
    EXPECT_FALSE(spectrum_match(a, scaled, 1e-3).pass);

    const auto short_list = spectrum_match(a, {1.0, 3.0}, 1e-2);
    EXPECT_TRUE(short_list.length_warning);
    EXPECT_EQ(short_list.numeric.size(), 2u);
    EXPECT_THROW((void)spectrum_match({}, a, 1e-2), std::invalid_argument);
}
