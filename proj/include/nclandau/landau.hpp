#pragma once

/**
 * @file
 * @brief Analytic Landau levels: a charged particle in a uniform field B along z, SI units.
 *
 * Three gauges are covered: the symmetric gauge A = (-By/2, Bx/2) with states labelled by the
 * radial number n_r and the angular momentum number m_l, and the two Landau gauges A = (-By, 0)
 * and A = (0, Bx) with states labelled by an oscillator number and a plane-wave number k.
 *
 * The sign convention selects qB = +eB or qB = -eB. Spin is ignored throughout.
 *
 * The Gaussian-units form of the Hamiltonian (eB/mu c in place of eB/mu) is not modelled. Pass an
 * already converted field if you need it.
 */

#include "nclandau/constants.hpp"
#include "nclandau/special_functions.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nclandau {

using complex = std::complex<double>;

struct PhysicalParams {
    double mu = constants::electron_mass;  // kg
    double B = 12.0;                       // T
    double hbar = constants::hbar;         // J s
    double e = constants::elementary_charge;  // C

    /// Throws std::invalid_argument unless every field is positive and finite.
    void validate() const {
        auto positive = [](double v, const char *name) {
            if (!(std::isfinite(v) && v > 0.0)) {
                throw std::invalid_argument(std::string("PhysicalParams: ") + name + " must be positive and finite");
            }
        };
        positive(mu, "mu");
        positive(B, "B");
        positive(hbar, "hbar");
        positive(e, "e");
    }

    /// eB/hbar in 1/m^2; the inverse squared magnetic length.
    [[nodiscard]] double eB_over_hbar() const noexcept { return e * B / hbar; }

    /// sqrt(hbar/eB) in m.
    [[nodiscard]] double magnetic_length() const noexcept { return std::sqrt(hbar / (e * B)); }
};

enum class Gauge { Symmetric, LandauFirst, LandauSecond };

enum class NormalizationMode {
    /// Hermite argument sqrt(eB/hbar)(y - y0): the normalized shifted oscillator.
    Orthonormal,
    /// Hermite argument (eB/hbar)(y - y0), reproduced as printed for figure matching. Not normalized.
    PaperLiteral,
};

/// s = +1 means qB = +eB, s = -1 means qB = -eB.
class SignConvention {
  public:
    constexpr SignConvention() = default;

    explicit constexpr SignConvention(int s) : s_(s) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("SignConvention: s must be +1 or -1");
        }
    }

    static constexpr SignConvention positive() { return SignConvention(1); }
    static constexpr SignConvention negative() { return SignConvention(-1); }

    [[nodiscard]] constexpr int value() const noexcept { return s_; }

    friend constexpr bool operator==(SignConvention, SignConvention) = default;

  private:
    int s_ = 1;
};

/**
 * @brief Labels one eigenstate.
 *
 * Symmetric-gauge states use (n_r, m_l); Landau-gauge states use (n_perp, k). The unused pair is
 * ignored.
 */
struct QuantumState {
    Gauge gauge = Gauge::Symmetric;
    SignConvention sign{};
    int n_r = 0;
    int m_l = 0;
    int n_perp = 0;
    double k = 0.0;  // 1/m

    static QuantumState symmetric(int n_r, int m_l, SignConvention sign = SignConvention::positive()) {
        QuantumState s;
        s.gauge = Gauge::Symmetric;
        s.sign = sign;
        s.n_r = n_r;
        s.m_l = m_l;
        s.validate();
        return s;
    }

    static QuantumState landau(Gauge gauge, int n_perp, double k, SignConvention sign = SignConvention::positive()) {
        if (gauge == Gauge::Symmetric) {
            throw std::invalid_argument("QuantumState::landau: gauge must be LandauFirst or LandauSecond");
        }
        QuantumState s;
        s.gauge = gauge;
        s.sign = sign;
        s.n_perp = n_perp;
        s.k = k;
        s.validate();
        return s;
    }

    void validate() const {
        if (n_r < 0 || n_perp < 0) {
            throw std::invalid_argument("QuantumState: n_r and n_perp must be non-negative");
        }
        if (!std::isfinite(k)) {
            throw std::invalid_argument("QuantumState: k must be finite");
        }
    }

    [[nodiscard]] bool is_symmetric() const noexcept { return gauge == Gauge::Symmetric; }
};

[[nodiscard]] inline std::string_view to_string(Gauge g) {
    switch (g) {
        case Gauge::Symmetric: return "symmetric";
        case Gauge::LandauFirst: return "landau1";
        case Gauge::LandauSecond: return "landau2";
    }
    return "unknown";
}

[[nodiscard]] inline std::string_view to_string(NormalizationMode m) {
    return m == NormalizationMode::Orthonormal ? "orthonormal" : "paper";
}

/// omega_c = eB/mu in rad/s.
[[nodiscard]] inline double cyclotron_frequency(const PhysicalParams &p) {
    p.validate();
    return p.e * p.B / p.mu;
}

/// hbar omega_c / 2, the energy unit of every level ladder in this library.
[[nodiscard]] inline double half_cyclotron_energy(const PhysicalParams &p) {
    return 0.5 * p.hbar * cyclotron_frequency(p);
}

/// Symmetric gauge: E = (2 n_r + |m_l| + 1) hbar omega_c/2 - s m_l hbar omega_c/2.
[[nodiscard]] inline double energy_symmetric(int n_r, int m_l, const PhysicalParams &p,
                                             SignConvention sign = SignConvention::positive()) {
    if (n_r < 0) {
        throw std::invalid_argument("energy_symmetric: n_r must be non-negative");
    }
    const double units = 2.0 * n_r + std::abs(m_l) + 1.0 - sign.value() * static_cast<double>(m_l);
    return units * half_cyclotron_energy(p);
}

/// Either Landau gauge, either sign: E = (2n + 1) hbar omega_c/2, independent of k.
[[nodiscard]] inline double energy_landau(int n_perp, const PhysicalParams &p) {
    if (n_perp < 0) {
        throw std::invalid_argument("energy_landau: n_perp must be non-negative");
    }
    return (2.0 * n_perp + 1.0) * half_cyclotron_energy(p);
}

/// Dispatches on the state's gauge.
[[nodiscard]] inline double energy(const QuantumState &state, const PhysicalParams &p) {
    return state.is_symmetric() ? energy_symmetric(state.n_r, state.m_l, p, state.sign)
                                : energy_landau(state.n_perp, p);
}

namespace detail {

/// Radial profile shared by the symmetric-gauge formulas, given rho = (eB/2hbar) r^2 and the
/// log of the constant prefactor. Evaluated in log space, then signed by the Laguerre factor.
inline double symmetric_radial(int n_r, int abs_m, double rho, double log_prefactor) {
    const double lag = laguerre_assoc(n_r, abs_m, rho);
    if (lag == 0.0) {
        return 0.0;
    }
    if (rho == 0.0) {
        return abs_m == 0 ? std::copysign(std::exp(log_prefactor), lag) : 0.0;
    }
    const double log_amp = log_prefactor + 0.5 * (ln_factorial(n_r) - ln_factorial(n_r + abs_m)) +
                           0.5 * abs_m * std::log(rho) - 0.5 * rho + std::log(std::abs(lag));
    return std::copysign(std::exp(log_amp), lag);
}

/**
 * One-dimensional oscillator eigenfunction centred at u = 0 with inverse squared length
 * @p inv_len2 (1/m^2):
 *   (2^n n!)^{-1/2} (inv_len2/pi)^{1/4} exp(-inv_len2 u^2 / 2) H_n(a u),
 * with a = sqrt(inv_len2) (orthonormal) or a = inv_len2 (as printed).
 */
inline double shifted_oscillator(int n, double inv_len2, double u, NormalizationMode mode) {
    const double a = mode == NormalizationMode::Orthonormal ? std::sqrt(inv_len2) : inv_len2;
    const double h = hermite_phys(n, a * u);
    if (h == 0.0) {
        return 0.0;
    }
    const double log_amp = -0.5 * (n * std::log(2.0) + ln_factorial(n)) + 0.25 * std::log(inv_len2 / constants::pi) -
                           0.5 * inv_len2 * u * u + std::log(std::abs(h));
    return std::copysign(std::exp(log_amp), h);
}

}  // namespace detail

/**
 * @brief Symmetric-gauge eigenfunction at polar point (r, phi), in 1/m.
 *
 * The closed form is normalized over the plane and identical in both normalization modes.
 *
 * @throws std::domain_error if @p r is negative
 * @throws std::invalid_argument if @p state is not a symmetric-gauge state
 */
[[nodiscard]] inline complex eigenfunction_symmetric(const QuantumState &state, const PhysicalParams &p, double r,
                                                     double phi,
                                                     NormalizationMode /*mode*/ = NormalizationMode::Orthonormal) {
    if (!state.is_symmetric()) {
        throw std::invalid_argument("eigenfunction_symmetric: state is not a symmetric-gauge state");
    }
    if (!(r >= 0.0)) {
        throw std::domain_error("eigenfunction_symmetric: r must be non-negative");
    }
    const double eb = p.eB_over_hbar();
    const double rho = 0.5 * eb * r * r;
    const double log_prefactor = -0.5 * std::log(2.0 * constants::pi) + 0.5 * std::log(eb);
    const double radial = detail::symmetric_radial(state.n_r, std::abs(state.m_l), rho, log_prefactor);
    return radial * std::polar(1.0, state.m_l * phi);
}

/**
 * @brief Landau-gauge eigenfunction at Cartesian point (x, y), in 1/m (per unit longitudinal length).
 *
 * First gauge: oscillator in y centred at y0 = -s hbar k/eB, plane wave e^{ikx}.
 * Second gauge: the same with x and y swapped and the shift negated, so x0 = +s hbar k/eB.
 */
[[nodiscard]] inline complex eigenfunction_landau(const QuantumState &state, const PhysicalParams &p, double x,
                                                  double y,
                                                  NormalizationMode mode = NormalizationMode::Orthonormal) {
    if (state.is_symmetric()) {
        throw std::invalid_argument("eigenfunction_landau: state is not a Landau-gauge state");
    }
    const double eb = p.eB_over_hbar();
    const double shift = state.sign.value() * state.k / eb;  // hbar k / eB
    const bool first = state.gauge == Gauge::LandauFirst;
    const double transverse = first ? y : x;
    const double longitudinal = first ? x : y;
    const double u = first ? transverse + shift : transverse - shift;
    return detail::shifted_oscillator(state.n_perp, eb, u, mode) * std::polar(1.0, state.k * longitudinal);
}

/// Centre of the transverse oscillator of a Landau-gauge state, in m.
[[nodiscard]] inline double landau_center(const QuantumState &state, const PhysicalParams &p) {
    const double shift = state.sign.value() * state.k / p.eB_over_hbar();
    return state.gauge == Gauge::LandauSecond ? shift : -shift;
}

/// One energy level of the symmetric-gauge ladder in units of hbar omega_c/2.
struct DegeneracyLevel {
    int units = 0;
    std::vector<std::pair<int, int>> members;  // (n_r, m_l)
    /// The level holds infinitely many states; members stop at the |m_l| cutoff.
    bool infinite_family = false;
};

/**
 * @brief Groups symmetric-gauge states with |m_l| <= @p m_cutoff by energy, for every odd energy
 * up to @p max_units (units of hbar omega_c/2).
 *
 * Members are ordered by n_r descending, then by s*m_l ascending.
 */
[[nodiscard]] inline std::vector<DegeneracyLevel> degeneracy_listing(int max_units, SignConvention sign, int m_cutoff) {
    if (max_units <= 0 || max_units % 2 == 0) {
        throw std::invalid_argument("degeneracy_listing: max_units must be odd and positive");
    }
    if (m_cutoff < 0) {
        throw std::invalid_argument("degeneracy_listing: m_cutoff must be non-negative");
    }
    const int s = sign.value();
    std::vector<DegeneracyLevel> levels;
    for (int units = 1; units <= max_units; units += 2) {
        DegeneracyLevel level;
        level.units = units;
        for (int n_r = (units - 1) / 2; n_r >= 0; --n_r) {
            // Favourable sign first (s*m_l >= 0 contributes nothing), then the penalised side.
            for (int sm = -m_cutoff; sm <= m_cutoff; ++sm) {
                const int m_l = s * sm;
                const int u = 2 * n_r + std::abs(m_l) + 1 - s * m_l;
                if (u == units) {
                    level.members.emplace_back(n_r, m_l);
                }
            }
        }
        // Every level carries the whole family (n, s*m_l >= 0), which the cutoff truncates.
        level.infinite_family = true;
        levels.push_back(std::move(level));
    }
    return levels;
}

}  // namespace nclandau
