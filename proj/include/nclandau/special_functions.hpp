#pragma once

/**
 * @file
 * @brief Orthogonal polynomials and factorial logarithms used by every eigenfunction.
 *
 * Polynomials are evaluated with upward three-term recurrences. The explicit factorial series
 * overflows long before the recurrence does and is kept only as a test oracle.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nclandau {

namespace detail {

inline void require_order(int n, const char *who) {
    if (n < 0) {
        throw std::invalid_argument(std::string(who) + ": negative order " + std::to_string(n));
    }
}

inline void require_finite(double x, const char *who) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(who) + ": non-finite argument");
    }
}

}  // namespace detail

/**
 * @brief Associated (generalized) Laguerre polynomial L_n^alpha(x).
 * @throws std::invalid_argument if @p n is negative
 * @throws std::domain_error if @p alpha or @p x is not finite
 */
[[nodiscard]] inline double laguerre_assoc(int n, double alpha, double x) {
    detail::require_order(n, "laguerre_assoc");
    detail::require_finite(alpha, "laguerre_assoc");
    detail::require_finite(x, "laguerre_assoc");

    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double curr = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0 + alpha - x) * curr - (k - 1.0 + alpha) * prev) / k;
        prev = curr;
        curr = next;
    }
    return curr;
}

/**
 * @brief Physicists' Hermite polynomial H_n(x).
 * @throws std::invalid_argument if @p n is negative
 * @throws std::domain_error if @p x is not finite
 */
[[nodiscard]] inline double hermite_phys(int n, double x) {
    detail::require_order(n, "hermite_phys");
    detail::require_finite(x, "hermite_phys");

    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double curr = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * curr - 2.0 * k * prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

/// ln(n!). Exact integer product up to 20!, log-gamma beyond.
[[nodiscard]] inline double ln_factorial(int n) {
    detail::require_order(n, "ln_factorial");
    if (n <= 20) {
        std::uint64_t product = 1;
        for (int k = 2; k <= n; ++k) {
            product *= static_cast<std::uint64_t>(k);
        }
        return std::log(static_cast<double>(product));
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace nclandau
