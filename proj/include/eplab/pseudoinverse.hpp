#pragma once

#include <array>
#include <cstddef>

#include "eplab/complex_matrix.hpp"
#include "eplab/svd.hpp"

namespace eplab {

/// Defect of each of the four defining equations of the Moore-Penrose
/// inverse for a candidate pair (T, G):
///   (1) TGT = T   (2) GTG = G   (3) (TG)^H = TG   (4) (GT)^H = GT
/// holds[k] is residuals[k] <= eq_tol * max(1, ||T||_F, ||G||_F).
struct PenroseReport {
    bool eq1_holds = false;
    bool eq2_holds = false;
    bool eq3_holds = false;
    bool eq4_holds = false;
    std::array<double, 4> residuals{};

    bool all_hold() const { return eq1_holds && eq2_holds && eq3_holds && eq4_holds; }
};

/// Moore-Penrose inverse through the SVD: reciprocal singular values over
/// the numerical rank, zero elsewhere. The zero matrix maps to the zero
/// matrix of transposed shape.
inline ComplexMatrix pinv(const ComplexMatrix& m, const Tolerance& tol = {}) {
    const SvdResult s = svd(m);
    const std::size_t r = s.numerical_rank(tol);
    ComplexMatrix g(m.cols(), m.rows());
    if (r == 0) return g;
    // g = right(:,0..r) * diag(1/sigma) * left(:,0..r)^H
    for (std::size_t i = 0; i < m.cols(); ++i) {
        for (std::size_t j = 0; j < m.rows(); ++j) {
            Complex sum{0.0, 0.0};
            for (std::size_t k = 0; k < r; ++k) {
                sum += s.right(i, k) * std::conj(s.left(j, k)) / s.singular_values[k];
            }
            g(i, j) = sum;
        }
    }
    return g;
}

inline PenroseReport penrose_check(const ComplexMatrix& t, const ComplexMatrix& g,
                                   const Tolerance& tol = {}) {
    if (g.rows() != t.cols() || g.cols() != t.rows()) {
        throw dimension_error("penrose_check: candidate " + g.shape_string() +
                              " does not transpose " + t.shape_string());
    }
    const ComplexMatrix tg = t * g;
    const ComplexMatrix gt = g * t;
    PenroseReport report;
    report.residuals[0] = distance(tg * t, t);
    report.residuals[1] = distance(gt * g, g);
    report.residuals[2] = distance(adjoint(tg), tg);
    report.residuals[3] = distance(adjoint(gt), gt);
    const double scale = std::max({1.0, frobenius_norm(t), frobenius_norm(g)});
    report.eq1_holds = report.residuals[0] <= tol.eq_tol * scale;
    report.eq2_holds = report.residuals[1] <= tol.eq_tol * scale;
    report.eq3_holds = report.residuals[2] <= tol.eq_tol * scale;
    report.eq4_holds = report.residuals[3] <= tol.eq_tol * scale;
    return report;
}

/// Closed form for rank-1 matrices: T^+ = T^H / trace(T^H T).
inline ComplexMatrix pinv_rank1(const ComplexMatrix& m, const Tolerance& tol = {}) {
    if (rank(m, tol) != 1) {
        throw rank_error("pinv_rank1 requires a rank-1 matrix");
    }
    const ComplexMatrix mh = adjoint(m);
    const Complex alpha = trace(mh * m);
    return (Complex{1.0, 0.0} / alpha) * mh;
}

/// Orthogonal projector onto R(M), computed as M * M^+.
inline ComplexMatrix range_projector(const ComplexMatrix& m, const Tolerance& tol = {}) {
    return m * pinv(m, tol);
}

/// Orthogonal projector onto R(M^H), computed as M^+ * M.
inline ComplexMatrix corange_projector(const ComplexMatrix& m, const Tolerance& tol = {}) {
    return pinv(m, tol) * m;
}

}  // namespace eplab
