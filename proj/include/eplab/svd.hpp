#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "eplab/complex_matrix.hpp"
#include "eplab/errors.hpp"

namespace eplab {

/// Full factorization M = left * diag(singular_values) * right^H with
/// left m x m and right n x n unitary and the singular values sorted
/// descending. min(m, n) values are stored; diag is rectangular.
struct SvdResult {
    ComplexMatrix left;
    std::vector<double> singular_values;
    ComplexMatrix right;

    double sigma_max() const { return singular_values.empty() ? 0.0 : singular_values.front(); }

    ComplexMatrix reconstruct() const {
        ComplexMatrix scaled = left.columns(0, singular_values.size());
        for (std::size_t j = 0; j < singular_values.size(); ++j)
            for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= singular_values[j];
        return scaled * adjoint(right.columns(0, singular_values.size()));
    }

    std::size_t numerical_rank(const Tolerance& tol = {}) const {
        const double cutoff = tol.rank_cutoff(left.rows(), right.rows(), sigma_max());
        std::size_t r = 0;
        for (double s : singular_values)
            if (s > cutoff) ++r;
        return r;
    }
};

namespace detail {

inline constexpr std::size_t kMaxJacobiSweeps = 64;

// Extends the orthonormal columns in u (those marked valid) to a full
// unitary basis, drawing candidates from the standard basis in order and
// re-orthogonalizing twice. Deterministic.
inline void complete_unitary(ComplexMatrix& u, std::vector<bool>& valid) {
    const std::size_t m = u.rows();
    std::size_t candidate = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (valid[j]) continue;
        while (candidate < m) {
            std::vector<Complex> v(m, Complex{0.0, 0.0});
            v[candidate] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < m; ++k) {
                    if (!valid[k]) continue;
                    Complex proj{0.0, 0.0};
                    for (std::size_t i = 0; i < m; ++i) proj += std::conj(u(i, k)) * v[i];
                    for (std::size_t i = 0; i < m; ++i) v[i] -= proj * u(i, k);
                }
            }
            double norm = 0.0;
            for (const Complex& z : v) norm += std::norm(z);
            norm = std::sqrt(norm);
            ++candidate;
            if (norm > 1e-4) {
                for (std::size_t i = 0; i < m; ++i) u(i, j) = v[i] / norm;
                valid[j] = true;
                break;
            }
        }
        if (!valid[j]) {
            throw internal_error("unitary completion ran out of candidate directions");
        }
    }
}

// Makes the largest-magnitude entry of column j of m real positive,
// returning the unit phase that was divided out.
inline Complex fix_column_phase(ComplexMatrix& m, std::size_t j) {
    std::size_t arg = 0;
    double best = -1.0;
    // strict improvement keeps the first of equal-magnitude entries
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double a = std::abs(m(i, j));
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    const Complex pivot = m(arg, j);
    if (std::abs(pivot) == 0.0) return Complex{1.0, 0.0};
    const Complex phase = pivot / std::abs(pivot);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= phase;
    return phase;
}

// One-sided Jacobi on a tall-or-square matrix (m >= n). Columns of the
// working copy converge to sigma_j * u_j while v accumulates the
// rotations, so input = work * v^H throughout.
inline SvdResult svd_tall(const ComplexMatrix& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    ComplexMatrix work = input;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double conv = 1e-14;
    bool converged = (n <= 1);
    std::size_t sweep = 0;
    while (!converged && sweep < kMaxJacobiSweeps) {
        converged = true;
        ++sweep;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{0.0, 0.0};
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += std::norm(work(k, i));
                    beta += std::norm(work(k, j));
                    gamma += std::conj(work(k, i)) * work(k, j);
                }
                const double off = std::abs(gamma);
                if (off <= conv * std::sqrt(alpha * beta) || off == 0.0) continue;
                converged = false;

                // Rotation diagonalizing the 2x2 Gram block [[alpha, gamma], [conj, beta]].
                const double zeta = (beta - alpha) / (2.0 * off);
                const double sign = zeta < 0.0 ? -1.0 : 1.0;
                const double t = sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex s = (gamma / off) * (c * t);
                const Complex s_conj = std::conj(s);
                for (std::size_t k = 0; k < m; ++k) {
                    const Complex wi = work(k, i), wj = work(k, j);
                    work(k, i) = c * wi - s_conj * wj;
                    work(k, j) = s * wi + c * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vi = v(k, i), vj = v(k, j);
                    v(k, i) = c * vi - s_conj * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
    }
    if (!converged) {
        throw convergence_error("one-sided Jacobi SVD did not converge", sweep);
    }

    std::vector<double> sigma(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) sum += std::norm(work(k, j));
        sigma[j] = std::sqrt(sum);
    }

    // Sort descending with a fixed selection order; swap the paired columns.
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t arg = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (sigma[j] > sigma[arg]) arg = j;
        if (arg != i) {
            std::swap(sigma[i], sigma[arg]);
            for (std::size_t k = 0; k < m; ++k) std::swap(work(k, i), work(k, arg));
            for (std::size_t k = 0; k < n; ++k) std::swap(v(k, i), v(k, arg));
        }
    }

    const double sigma_max = sigma.empty() ? 0.0 : sigma.front();
    const double tiny = sigma_max * static_cast<double>(std::max(m, n)) *
                        std::numeric_limits<double>::epsilon();

    ComplexMatrix u(m, m);
    std::vector<bool> valid(m, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma[j] > tiny && sigma[j] > 0.0) {
            for (std::size_t k = 0; k < m; ++k) u(k, j) = work(k, j) / sigma[j];
            valid[j] = true;
        }
    }
    complete_unitary(u, valid);

    return SvdResult{std::move(u), std::move(sigma), std::move(v)};
}

}  // namespace detail

/// Deterministic SVD via one-sided Jacobi (sweep order and phase
/// convention fixed: the largest-magnitude entry of each left singular
/// vector is made real positive). Wide inputs are factored through the
/// adjoint. Throws convergence_error with the sweep count on failure.
inline SvdResult svd(const ComplexMatrix& input) {
    SvdResult result;
    if (input.rows() >= input.cols()) {
        result = detail::svd_tall(input);
    } else {
        SvdResult t = detail::svd_tall(adjoint(input));
        result = SvdResult{std::move(t.right), std::move(t.singular_values), std::move(t.left)};
    }

    const std::size_t m = result.left.rows();
    const std::size_t n = result.right.rows();
    const std::size_t k = result.singular_values.size();
    const double cutoff = Tolerance{}.rank_cutoff(m, n, result.sigma_max());
    for (std::size_t j = 0; j < m; ++j) {
        const Complex phase = detail::fix_column_phase(result.left, j);
        if (j < k && result.singular_values[j] > cutoff) {
            // coupled phase keeps left * diag * right^H unchanged
            for (std::size_t i = 0; i < n; ++i) result.right(i, j) /= phase;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (j < k && result.singular_values[j] > cutoff) continue;
        detail::fix_column_phase(result.right, j);
    }
    return result;
}

/// Count of singular values above the relative cutoff; 0 for the zero matrix.
inline std::size_t rank(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return svd(m).numerical_rank(tol);
}

}  // namespace eplab
