#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "eplab/complex_matrix.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/svd.hpp"

namespace eplab {

/// Subspace of C^n held as an n x d matrix with orthonormal columns
/// (d may be 0). Equality is basis-independent: Frobenius distance of
/// the orthogonal projectors.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim)
        : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

    Subspace(std::size_t ambient_dim, ComplexMatrix orthonormal_basis)
        : ambient_(ambient_dim), basis_(std::move(orthonormal_basis)) {
        if (basis_.rows() != ambient_ || basis_.cols() > ambient_) {
            throw dimension_error("subspace basis shape " + basis_.shape_string() +
                                  " does not fit ambient dimension " + std::to_string(ambient_));
        }
        const ComplexMatrix gram = adjoint(basis_) * basis_;
        if (distance(gram, ComplexMatrix::identity(basis_.cols())) > 1e-8) {
            throw std::invalid_argument("subspace basis columns are not orthonormal");
        }
    }

    static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }

    static Subspace full(std::size_t ambient_dim) {
        return Subspace(ambient_dim, ComplexMatrix::identity(ambient_dim));
    }

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const ComplexMatrix& basis() const noexcept { return basis_; }

    ComplexMatrix projector() const { return basis_ * adjoint(basis_); }

private:
    std::size_t ambient_;
    ComplexMatrix basis_;
};

inline double subspace_distance(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw dimension_error("subspace distance across ambient dimensions");
    }
    return distance(a.projector(), b.projector());
}

inline bool subspaces_equal(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
    return subspace_distance(a, b) <= tol.eq_tol;
}

/// Column space of m as a subspace: the first rank(m) left singular vectors.
inline Subspace from_columns(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (m.cols() == 0) return Subspace::zero(m.rows());
    const SvdResult s = svd(m);
    return Subspace(m.rows(), s.left.columns(0, s.numerical_rank(tol)));
}

/// Kernel of m as a subspace of the domain: right singular vectors past
/// the numerical rank.
inline Subspace nullspace(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (m.cols() == 0) return Subspace::zero(0);
    const SvdResult s = svd(m);
    return Subspace(m.cols(), s.right.columns(s.numerical_rank(tol), m.cols()));
}

inline Subspace complement(const Subspace& s) {
    const std::size_t n = s.ambient_dim();
    const std::size_t d = s.dim();
    if (d == 0) return Subspace::full(n);
    if (d == n) return Subspace::zero(n);
    const SvdResult f = svd(s.basis());
    return Subspace(n, f.left.columns(d, n));
}

inline Subspace sum(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw dimension_error("subspace sum across ambient dimensions");
    }
    return from_columns(hconcat(a.basis(), b.basis()), tol);
}

inline Subspace intersect(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw dimension_error("subspace intersection across ambient dimensions");
    }
    return complement(sum(complement(a), complement(b), tol));
}

/// Presentation of a subspace by coordinates: the entries at free_indices
/// are unconstrained and the entry at each constrained index c equals
/// sum_k coefficients[c][k] * x(free_indices[k]). Indices are 0-based and
/// strictly increasing; together the two lists partition 0..n-1.
struct ConstraintSpec {
    std::size_t ambient_dim = 0;
    std::vector<std::size_t> free_indices;
    std::vector<std::size_t> constrained_indices;
    std::vector<std::vector<Complex>> coefficients;  // aligned with constrained_indices

    void validate() const {
        const std::size_t d = free_indices.size();
        if (free_indices.size() + constrained_indices.size() != ambient_dim) {
            throw std::invalid_argument("constraint spec does not cover the ambient dimension");
        }
        std::vector<bool> seen(ambient_dim, false);
        auto mark = [&](const std::vector<std::size_t>& idx) {
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (idx[i] >= ambient_dim || seen[idx[i]]) {
                    throw std::invalid_argument("constraint spec indices must partition 1..n");
                }
                if (i > 0 && idx[i] <= idx[i - 1]) {
                    throw std::invalid_argument("constraint spec indices must be increasing");
                }
                seen[idx[i]] = true;
            }
        };
        mark(free_indices);
        mark(constrained_indices);
        if (coefficients.size() != constrained_indices.size()) {
            throw std::invalid_argument("one coefficient vector per constrained index required");
        }
        for (const auto& coeff : coefficients) {
            if (coeff.size() != d) {
                throw std::invalid_argument("coefficient vectors must have one entry per free index");
            }
        }
    }

    /// n x d embedding whose j-th column is the subspace vector with
    /// free coordinates equal to the j-th standard basis vector.
    ComplexMatrix embedding() const {
        validate();
        const std::size_t d = free_indices.size();
        ComplexMatrix e(ambient_dim, d);
        for (std::size_t j = 0; j < d; ++j) e(free_indices[j], j) = 1.0;
        for (std::size_t c = 0; c < constrained_indices.size(); ++c) {
            for (std::size_t j = 0; j < d; ++j) e(constrained_indices[c], j) = coefficients[c][j];
        }
        return e;
    }
};

inline Subspace from_constraint_form(const ConstraintSpec& spec, const Tolerance& tol = {}) {
    return from_columns(spec.embedding(), tol);
}

/// Recovers a constraint presentation of s. Free indices are the pivot
/// columns of Gaussian elimination with partial pivoting on the d x n
/// matrix of basis rows; the coefficients solve x_c = a^(c) . x_F on the
/// subspace. Throws rank_error when pivoting cannot find d independent
/// coordinates at the eq_tol threshold.
inline ConstraintSpec to_constraint_form(const Subspace& s, const Tolerance& tol = {}) {
    const std::size_t n = s.ambient_dim();
    const std::size_t d = s.dim();
    if (d == 0) {
        throw rank_error("to_constraint_form requires a nonzero subspace");
    }

    ComplexMatrix w = transpose(s.basis());  // d x n, orthonormal rows
    std::vector<std::size_t> free_idx;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < d; ++col) {
        std::size_t pivot = row;
        for (std::size_t k = row + 1; k < d; ++k)
            if (std::abs(w(k, col)) > std::abs(w(pivot, col))) pivot = k;
        if (std::abs(w(pivot, col)) <= tol.eq_tol) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(w(row, j), w(pivot, j));
        free_idx.push_back(col);
        for (std::size_t k = 0; k < d; ++k) {
            if (k == row) continue;
            const Complex factor = w(k, col) / w(row, col);
            for (std::size_t j = 0; j < n; ++j) w(k, j) -= factor * w(row, j);
        }
        ++row;
    }
    if (row < d) {
        throw rank_error("degenerate basis: fewer than dim independent coordinates");
    }

    ConstraintSpec spec;
    spec.ambient_dim = n;
    spec.free_indices = free_idx;
    std::vector<bool> is_free(n, false);
    for (std::size_t f : free_idx) is_free[f] = true;

    // Solve B[F,:] for the dependence of each constrained row of the basis.
    ComplexMatrix bf(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) bf(j, k) = s.basis()(free_idx[j], k);
    const ComplexMatrix bf_inv = pinv(bf, tol);

    for (std::size_t c = 0; c < n; ++c) {
        if (is_free[c]) continue;
        spec.constrained_indices.push_back(c);
        std::vector<Complex> coeff(d);
        // a^(c) = basis_row(c) * inv(B[F,:])
        for (std::size_t j = 0; j < d; ++j) {
            Complex sum{0.0, 0.0};
            for (std::size_t k = 0; k < d; ++k) sum += s.basis()(c, k) * bf_inv(k, j);
            coeff[j] = sum;
        }
        spec.coefficients.push_back(std::move(coeff));
    }
    spec.validate();
    return spec;
}

}  // namespace eplab
