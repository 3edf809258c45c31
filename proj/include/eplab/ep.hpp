#pragma once

#include <array>
#include <cstddef>

#include "eplab/complex_matrix.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/subspace.hpp"
#include "eplab/svd.hpp"

namespace eplab {

/// Outcome of the five equivalent EP characterizations of a square T:
///   (1) R(T) = R(T^H)
///   (2) T T^+ = T^+ T
///   (3) N(T)^perp = R(T)
///   (4) N(T) = N(T^H)
///   (5) T^H = P T for a bijective P
/// They must agree; a split is an internal inconsistency, never a valid
/// answer, and is surfaced through `unanimous`.
struct EPReport {
    bool char_ranges_equal = false;
    bool char_mp_commute = false;
    bool char_nullperp_is_range = false;
    bool char_null_equal = false;
    bool char_witness_bijective = false;
    std::array<double, 5> residuals{};
    bool verdict = false;
    bool unanimous = false;

    std::array<bool, 5> flags() const {
        return {char_ranges_equal, char_mp_commute, char_nullperp_is_range, char_null_equal,
                char_witness_bijective};
    }
};

/// Candidate for the bijection of characterization (5):
/// P = T^H T^+ + (I - T T^+). P T = T^H exactly when R(T) is contained in
/// R(T^H), and P has full rank exactly when T is EP, so the pair of checks
/// (equation within eq_tol, full numerical rank) decides EP-ness.
struct WitnessReport {
    ComplexMatrix p;
    bool equation_holds = false;
    bool bijective = false;
    double equation_residual = 0.0;
    double smallest_singular_value = 0.0;

    bool succeeds() const { return equation_holds && bijective; }
};

inline WitnessReport ep_witness(const ComplexMatrix& t, const Tolerance& tol = {}) {
    if (!t.is_square()) throw dimension_error("ep_witness requires a square matrix");
    const ComplexMatrix t_pinv = pinv(t, tol);
    const ComplexMatrix proj_range = t * t_pinv;
    WitnessReport w;
    w.p = adjoint(t) * t_pinv + (ComplexMatrix::identity(t.rows()) - proj_range);
    const ComplexMatrix lhs = w.p * t;
    const ComplexMatrix rhs = adjoint(t);
    w.equation_residual = distance(lhs, rhs);
    w.equation_holds = approx_eq(lhs, rhs, tol);
    const SvdResult s = svd(w.p);
    w.smallest_singular_value = s.singular_values.empty() ? 0.0 : s.singular_values.back();
    w.bijective = s.numerical_rank(tol) == t.rows();
    return w;
}

inline EPReport is_ep(const ComplexMatrix& t, const Tolerance& tol = {}) {
    if (!t.is_square()) throw dimension_error("is_ep requires a square matrix");
    const ComplexMatrix th = adjoint(t);

    EPReport report;

    // (1) range equality, via independent factorizations of T and T^H
    const Subspace range_t = from_columns(t, tol);
    const Subspace range_th = from_columns(th, tol);
    report.residuals[0] = subspace_distance(range_t, range_th);
    report.char_ranges_equal = report.residuals[0] <= tol.eq_tol;

    // (2) Moore-Penrose commutation
    const ComplexMatrix t_pinv = pinv(t, tol);
    const ComplexMatrix left = t * t_pinv;
    const ComplexMatrix right = t_pinv * t;
    report.residuals[1] = distance(left, right);
    report.char_mp_commute = approx_eq(left, right, tol);

    // (3) orthogonal complement of the kernel equals the range
    const Subspace null_t = nullspace(t, tol);
    report.residuals[2] = subspace_distance(complement(null_t), range_t);
    report.char_nullperp_is_range = report.residuals[2] <= tol.eq_tol;

    // (4) kernel of T equals kernel of T^H
    const Subspace null_th = nullspace(th, tol);
    report.residuals[3] = subspace_distance(null_t, null_th);
    report.char_null_equal = report.residuals[3] <= tol.eq_tol;

    // (5) bijective witness
    const WitnessReport w = ep_witness(t, tol);
    report.residuals[4] = w.equation_residual;
    report.char_witness_bijective = w.succeeds();

    const auto flags = report.flags();
    report.unanimous = true;
    for (bool f : flags) report.unanimous = report.unanimous && (f == flags[0]);
    report.verdict = report.char_mp_commute;
    return report;
}

/// ||T T^H - T^H T||_F <= eq_tol * max(1, ||T||_F^2).
inline bool is_normal(const ComplexMatrix& t, const Tolerance& tol = {}) {
    if (!t.is_square()) throw dimension_error("is_normal requires a square matrix");
    const ComplexMatrix th = adjoint(t);
    const double res = distance(t * th, th * t);
    const double nf = frobenius_norm(t);
    return res <= tol.eq_tol * std::max(1.0, nf * nf);
}

inline double normality_residual(const ComplexMatrix& t) {
    const ComplexMatrix th = adjoint(t);
    return distance(t * th, th * t);
}

/// Flags feeding the rank-1 implications: complex rank-1 EP matrices are
/// normal, real rank-1 EP matrices are symmetric.
struct Rank1Report {
    bool is_rank1 = false;
    bool is_ep = false;
    bool is_normal = false;
    bool is_real = false;
    bool is_symmetric = false;
};

inline Rank1Report check_rank1_remarks(const ComplexMatrix& t, const Tolerance& tol = {}) {
    if (!t.is_square()) throw dimension_error("check_rank1_remarks requires a square matrix");
    Rank1Report r;
    r.is_rank1 = rank(t, tol) == 1;
    r.is_ep = is_ep(t, tol).verdict;
    r.is_normal = is_normal(t, tol);
    const double scale = std::max(1.0, frobenius_norm(t));
    double imag_norm = 0.0;
    for (const Complex& z : t.entries()) imag_norm += z.imag() * z.imag();
    r.is_real = std::sqrt(imag_norm) <= tol.eq_tol * scale;
    r.is_symmetric = distance(t, transpose(t)) <= tol.eq_tol * scale;
    return r;
}

/// Builds the n x n EP matrix with range (and corange) equal to the
/// subspace presented by `spec`. The columns at free indices are the basis
/// vectors whose free coordinates are the rows of free_coords; the column
/// at each constrained index carries the conjugate-coefficient combination
/// that forces every row back into the subspace. Algebraically the result
/// is E X^T E^H for the embedding E, so both the range and the corange
/// equal the target subspace whenever X is invertible.
inline ComplexMatrix ep_construct(const ConstraintSpec& spec, const ComplexMatrix& free_coords,
                                  const Tolerance& tol = {}) {
    spec.validate();
    const std::size_t d = spec.free_indices.size();
    if (free_coords.rows() != d || free_coords.cols() != d) {
        throw dimension_error("free_coords must be d x d for d free indices");
    }
    if (d > 0 && rank(free_coords, tol) != d) {
        throw rank_error("free_coords matrix is singular");
    }
    const ComplexMatrix e = spec.embedding();
    const ComplexMatrix t = e * transpose(free_coords) * adjoint(e);

    const EPReport ep = is_ep(t, tol);
    const Subspace target = from_constraint_form(spec, tol);
    const bool range_ok = subspaces_equal(from_columns(t, tol), target, tol);
    if (!(ep.verdict && ep.unanimous && range_ok)) {
        throw internal_error("ep_construct postcondition failed: output not EP onto the target");
    }
    return t;
}

}  // namespace eplab
