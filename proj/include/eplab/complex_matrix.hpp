#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eplab/errors.hpp"

namespace eplab {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Values are immutable in spirit: every
/// operation below returns a fresh matrix, nothing mutates shared state,
/// so concurrent use from multiple threads is safe.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw dimension_error("entry count " + std::to_string(entries_.size()) +
                                  " does not match " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
        }
        check_finite();
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw dimension_error("ragged initializer list");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return entries_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }

    ComplexMatrix column(std::size_t j) const {
        ComplexMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    /// Columns [first, last) as a new matrix.
    ComplexMatrix columns(std::size_t first, std::size_t last) const {
        ComplexMatrix c(rows_, last - first);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = first; j < last; ++j) c(i, j - first) = (*this)(i, j);
        return c;
    }

    bool same_shape(const ComplexMatrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    void check_finite() const {
        for (const Complex& z : entries_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("matrix entries must be finite");
            }
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Equality threshold bundle. eq_tol drives the hybrid Frobenius test in
/// approx_eq; rank_tol_factor scales the singular-value cutoff (0 means
/// the default max(m,n)*machine-epsilon).
struct Tolerance {
    double eq_tol = 1e-9;
    double rank_tol_factor = 0.0;

    double rank_cutoff(std::size_t rows, std::size_t cols, double sigma_max) const {
        const double factor =
            rank_tol_factor > 0.0
                ? rank_tol_factor
                : static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
        return factor * sigma_max;
    }
};

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw dimension_error("matmul: " + a.shape_string() + " * " + b.shape_string());
    }
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
    return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& m) { return Complex{s, 0.0} * m; }

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) {
        throw dimension_error("add: " + a.shape_string() + " + " + b.shape_string());
    }
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) {
        throw dimension_error("sub: " + a.shape_string() + " - " + b.shape_string());
    }
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline double frobenius_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (const Complex& z : m.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

/// Frobenius distance ||a - b||_F; operands must share a shape.
inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) {
        throw dimension_error("distance: " + a.shape_string() + " vs " + b.shape_string());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) sum += std::norm(a(i, j) - b(i, j));
    return std::sqrt(sum);
}

/// Hybrid absolute/relative matrix equality:
/// ||a - b||_F <= eq_tol * max(1, ||a||_F, ||b||_F).
inline bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol = {}) {
    if (tol.eq_tol <= 0.0) throw std::invalid_argument("eq_tol must be positive");
    const double scale = std::max({1.0, frobenius_norm(a), frobenius_norm(b)});
    return distance(a, b) <= tol.eq_tol * scale;
}

inline Complex trace(const ComplexMatrix& m) {
    if (!m.is_square()) throw dimension_error("trace of non-square " + m.shape_string());
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

/// Columns of a stacked side by side with columns of b.
inline ComplexMatrix hconcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) {
        throw dimension_error("hconcat: " + a.shape_string() + " | " + b.shape_string());
    }
    ComplexMatrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

}  // namespace eplab
