#pragma once

/**
 * @file
 * @brief Lowest eigenvalues of sparse Hermitian matrices.
 *
 * Small problems go to LAPACK (zheevr/dsyevr, index range only). Larger ones use a Lanczos iteration
 * with full reorthogonalization and explicit deflation: each cycle converges the lowest remaining
 * Ritz pair, locks its vector and restarts orthogonal to everything locked so far. Locking one pair
 * per cycle keeps exactly degenerate eigenvalues from being collapsed into one.
 */

#include "nclandau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

namespace nclandau {

/// Sparse Hermitian matrix in CSR form. Off-diagonal entries are inserted in conjugate pairs.
class HermitianMatrix {
  public:
    using value_type = std::complex<double>;

    explicit HermitianMatrix(std::size_t dim) : dim_(dim) {}

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    void add_diagonal(std::size_t i, double v) {
        check(i);
        pending_.emplace_back(i, i, value_type(v, 0.0));
        built_ = false;
    }

    /// Adds @p v at (i, j) and conj(v) at (j, i). @p i must differ from @p j.
    void add_pair(std::size_t i, std::size_t j, value_type v) {
        check(i);
        check(j);
        if (i == j) {
            throw std::invalid_argument("HermitianMatrix::add_pair: use add_diagonal for i == j");
        }
        pending_.emplace_back(i, j, v);
        pending_.emplace_back(j, i, std::conj(v));
        built_ = false;
    }

    /// Sums duplicates and freezes the CSR arrays. Called implicitly by every read.
    void finalize() const {
        if (built_) {
            return;
        }
        auto entries = pending_;
        std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        row_ptr_.assign(dim_ + 1, 0);
        cols_.clear();
        vals_.clear();
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto &[i, j, v] = entries[k];
            if (k > 0 && std::get<0>(entries[k - 1]) == i && std::get<1>(entries[k - 1]) == j) {
                vals_.back() += v;
                continue;
            }
            cols_.push_back(j);
            vals_.push_back(v);
            ++row_ptr_[i + 1];
        }
        for (std::size_t r = 0; r < dim_; ++r) {
            row_ptr_[r + 1] += row_ptr_[r];
        }
        built_ = true;
    }

    [[nodiscard]] std::size_t nonzeros() const {
        finalize();
        return vals_.size();
    }

    [[nodiscard]] value_type entry(std::size_t i, std::size_t j) const {
        finalize();
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            if (cols_[k] == j) {
                return vals_[k];
            }
        }
        return {};
    }

    /// y = A x.
    void apply(std::span<const value_type> x, std::span<value_type> y) const {
        finalize();
        if (x.size() != dim_ || y.size() != dim_) {
            throw std::invalid_argument("HermitianMatrix::apply: dimension mismatch");
        }
        for (std::size_t r = 0; r < dim_; ++r) {
            value_type acc{};
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                acc += vals_[k] * x[cols_[k]];
            }
            y[r] = acc;
        }
    }

    /// Exact check: every stored entry equals the conjugate of its transpose partner.
    [[nodiscard]] bool is_hermitian() const {
        finalize();
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                if (entry(cols_[k], r) != std::conj(vals_[k])) {
                    return false;
                }
            }
        }
        return true;
    }

    [[nodiscard]] bool is_real() const {
        finalize();
        return std::all_of(vals_.begin(), vals_.end(), [](const value_type &v) { return v.imag() == 0.0; });
    }

    /// Column-major dense copy.
    [[nodiscard]] std::vector<value_type> to_dense() const {
        finalize();
        std::vector<value_type> a(dim_ * dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
                a[cols_[k] * dim_ + r] = vals_[k];
            }
        }
        return a;
    }

  private:
    void check(std::size_t i) const {
        if (i >= dim_) {
            throw std::out_of_range("HermitianMatrix: index out of range");
        }
    }

    std::size_t dim_;
    std::vector<std::tuple<std::size_t, std::size_t, value_type>> pending_;
    mutable bool built_ = false;
    mutable std::vector<std::size_t> row_ptr_;
    mutable std::vector<std::size_t> cols_;
    mutable std::vector<value_type> vals_;
};

enum class EigenMethod { Dense, Lanczos };

struct EigenResult {
    std::vector<double> values;  // ascending
    EigenMethod method = EigenMethod::Dense;
    int iterations = 0;          // Lanczos steps summed over cycles
    double max_residual = 0.0;   // largest locked Ritz residual norm
};

/// Largest dimension handed to the dense LAPACK path by lowest_eigenvalues().
inline constexpr std::size_t dense_dimension_limit = 4096;

/// Lowest @p count eigenvalues by a dense LAPACK solve.
[[nodiscard]] inline EigenResult lowest_eigenvalues_dense(const HermitianMatrix &h, std::size_t count) {
    const auto n = static_cast<lapack_int>(h.dim());
    if (count == 0 || count > h.dim()) {
        throw std::invalid_argument("lowest_eigenvalues_dense: count out of range");
    }
    EigenResult res;
    res.method = EigenMethod::Dense;
    std::vector<double> w(h.dim());
    std::vector<lapack_int> isuppz(2 * h.dim());
    lapack_int found = 0;
    lapack_int info = 0;
    auto dense = h.to_dense();
    if (h.is_real()) {
        std::vector<double> a(dense.size());
        std::transform(dense.begin(), dense.end(), a.begin(), [](const auto &z) { return z.real(); });
        info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1,
                              static_cast<lapack_int>(count), 0.0, &found, w.data(), nullptr, 1, isuppz.data());
    } else {
        info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, dense.data(), n, 0.0, 0.0, 1,
                              static_cast<lapack_int>(count), 0.0, &found, w.data(), nullptr, 1, isuppz.data());
    }
    if (info != 0) {
        throw ConvergenceError("dense eigensolver failed, LAPACK info = " + std::to_string(info), 0, 0.0);
    }
    res.values.assign(w.begin(), w.begin() + found);
    return res;
}

struct LanczosOptions {
    int max_steps_per_cycle = 600;
    int max_restarts = 40;
    int check_every = 10;
    double tolerance = 1e-10;  // Ritz residual relative to the spectral scale
    unsigned seed = 12345;
};

namespace detail {

inline std::complex<double> dot(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
    std::complex<double> s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline double norm(std::span<const std::complex<double>> a) { return std::sqrt(dot(a, a).real()); }

/// w -= sum_k <q_k, w> q_k, applied twice.
inline void orthogonalize(std::vector<std::complex<double>> &w, const std::vector<std::vector<std::complex<double>>> &basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto &q : basis) {
            const auto c = dot(q, w);
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] -= c * q[i];
            }
        }
    }
}

/// Subtracts the components of w along basis (two passes) and adds the removed coefficients to col.
inline void project_out(std::vector<std::complex<double>> &w, const std::vector<std::vector<std::complex<double>>> &basis,
                        std::complex<double> *col) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto c = dot(basis[k], w);
            col[k] += c;
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] -= c * basis[k][i];
            }
        }
    }
}

/// Eigen-decomposition of the Hermitian part of the leading m x m block of a column-major matrix with leading
/// dimension ld. Returns ascending values and column-major vectors.
inline std::pair<std::vector<double>, std::vector<std::complex<double>>>
projected_eigen(const std::vector<std::complex<double>> &hm, std::size_t ld, std::size_t m) {
    std::vector<std::complex<double>> a(m * m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < m; ++r) {
            a[c * m + r] = 0.5 * (hm[c * ld + r] + std::conj(hm[r * ld + c]));
        }
    }
    std::vector<double> w(m);
    const auto lm = static_cast<lapack_int>(m);
    const lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'U', lm, a.data(), lm, w.data());
    if (info != 0) {
        throw ConvergenceError("projected eigensolver failed, LAPACK info = " + std::to_string(info), 0, 0.0);
    }
    return {std::move(w), std::move(a)};
}

}  // namespace detail

/// Lowest @p count eigenvalues by deflated, explicitly restarted Lanczos with full reorthogonalization.
/// Ritz pairs come from the full projected matrix, so rounding in the three-term recurrence cannot leak in.
/// Each cycle locks every converged pair contiguous from the bottom and restarts from the sum of the next
/// unconverged Ritz vectors. Throws ConvergenceError with diagnostics on failure.
[[nodiscard]] inline EigenResult lowest_eigenvalues_lanczos(const HermitianMatrix &h, std::size_t count,
                                                            const LanczosOptions &opt = {}) {
    using vec = std::vector<std::complex<double>>;
    const std::size_t n = h.dim();
    if (count == 0 || count > n) {
        throw std::invalid_argument("lowest_eigenvalues_lanczos: count out of range");
    }
    EigenResult res;
    res.method = EigenMethod::Lanczos;

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    const auto random_vector = [&] {
        vec v(n);
        for (auto &x : v) {
            x = {gauss(rng), gauss(rng)};
        }
        return v;
    };
    std::vector<vec> locked;
    vec v = random_vector();
    int stalled = 0;
    double last_residual = 0.0;

    while (res.values.size() < count) {
        detail::orthogonalize(v, locked);
        double nv = detail::norm(v);
        if (nv < 1e-8) {
            v = random_vector();
            detail::orthogonalize(v, locked);
            nv = detail::norm(v);
        }
        for (auto &x : v) {
            x /= nv;
        }
        const std::size_t max_steps = std::min<std::size_t>(opt.max_steps_per_cycle, n - locked.size());
        std::vector<vec> basis{v};
        vec hm(max_steps * max_steps);
        vec w(n);

        for (std::size_t j = 0;; ++j) {
            h.apply(basis[j], w);
            ++res.iterations;
            const double hq = detail::norm(w);
            detail::orthogonalize(w, locked);
            detail::project_out(w, basis, &hm[j * max_steps]);
            const double b = detail::norm(w);
            const bool exhausted = b <= 1e-12 * std::max(hq, 1e-300);
            const bool last = exhausted || j + 1 == max_steps;
            const std::size_t m = j + 1;

            if (last || m % static_cast<std::size_t>(opt.check_every) == 0) {
                const auto [theta, z] = detail::projected_eigen(hm, max_steps, m);
                const double tol = opt.tolerance * std::max({std::abs(theta.front()), std::abs(theta.back()), 1e-300});
                const auto residual = [&](std::size_t i) { return exhausted ? 0.0 : b * std::abs(z[i * m + m - 1]); };
                const auto ritz_vector = [&](std::size_t i) {
                    vec y(n);
                    for (std::size_t k = 0; k < m; ++k) {
                        for (std::size_t r = 0; r < n; ++r) {
                            y[r] += z[i * m + k] * basis[k][r];
                        }
                    }
                    return y;
                };
                last_residual = residual(0);
                if (last || last_residual <= tol) {
                    std::size_t i = 0;
                    for (; i < m && res.values.size() < count && residual(i) <= tol; ++i) {
                        vec y = ritz_vector(i);
                        detail::orthogonalize(y, locked);
                        const double ny = detail::norm(y);
                        for (auto &x : y) {
                            x /= ny;
                        }
                        vec hy(n);
                        h.apply(y, hy);
                        res.values.push_back(detail::dot(y, hy).real());
                        res.max_residual = std::max(res.max_residual, residual(i));
                        locked.push_back(std::move(y));
                    }
                    stalled = i > 0 ? 0 : stalled + 1;
                    v.assign(n, {});
                    for (std::size_t k = i; k < std::min(m, i + count - res.values.size()); ++k) {
                        const vec y = ritz_vector(k);
                        for (std::size_t r = 0; r < n; ++r) {
                            v[r] += y[r];
                        }
                    }
                    break;
                }
            }
            for (auto &x : w) {
                x /= b;
            }
            hm[j * max_steps + j + 1] = b;
            basis.push_back(w);
        }
        if (stalled > opt.max_restarts) {
            throw ConvergenceError("Lanczos did not converge eigenvalue #" + std::to_string(res.values.size()) +
                                       " after " + std::to_string(res.iterations) + " steps (Ritz residual " +
                                       std::to_string(last_residual) + ")",
                                   res.iterations, last_residual);
        }
    }
    std::sort(res.values.begin(), res.values.end());
    return res;
}

/// Dense LAPACK up to dense_dimension_limit, Lanczos above.
[[nodiscard]] inline EigenResult lowest_eigenvalues(const HermitianMatrix &h, std::size_t count,
                                                    const LanczosOptions &opt = {}) {
    return h.dim() <= dense_dimension_limit ? lowest_eigenvalues_dense(h, count)
                                            : lowest_eigenvalues_lanczos(h, count, opt);
}

}  // namespace nclandau
