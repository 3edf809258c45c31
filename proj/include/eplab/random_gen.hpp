#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "eplab/complex_matrix.hpp"
#include "eplab/svd.hpp"

namespace eplab {

/// SplitMix64 stream with a hand-rolled Box-Muller gaussian. Self-contained
/// so that seeded runs reproduce bit-for-bit regardless of the standard
/// library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) { next(); }

    /// Independent stream for trial `index` of a seeded suite.
    static Rng for_trial(std::uint64_t suite_seed, std::uint64_t index) {
        Rng r(suite_seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex{re, im};
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

inline ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

inline ComplexMatrix random_real_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
    return m;
}

/// Haar-distributed unitary: modified Gram-Schmidt QR of a gaussian matrix.
/// MGS leaves the R diagonal real positive, which fixes the phases.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix q = random_matrix(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            // essentially impossible for gaussian input; restart the column
            for (std::size_t i = 0; i < n; ++i) q(i, j) = rng.complex_gaussian();
            --j;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

/// Invertible gaussian block: redraw until well-conditioned enough.
inline ComplexMatrix random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        ComplexMatrix b = random_matrix(rng, n, n);
        const SvdResult s = svd(b);
        if (!s.singular_values.empty() &&
            s.singular_values.back() > 0.05 * std::max(1.0, s.sigma_max())) {
            return b;
        }
    }
}

/// Diagonal with entries of modulus in [0.5, 2] and uniform phase.
inline ComplexMatrix random_invertible_diagonal(Rng& rng, std::size_t n) {
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = rng.uniform(0.5, 2.0);
        const double arg = rng.uniform(0.0, 2.0 * std::numbers::pi);
        d(i, i) = Complex{mag * std::cos(arg), mag * std::sin(arg)};
    }
    return d;
}

/// Q * diag(B, 0) * Q^H for a Haar unitary Q and an invertible r x r block
/// B (diagonal when make_normal). Always EP: range and corange both equal
/// the span of the first r columns of Q.
inline ComplexMatrix random_ep(std::size_t n, std::size_t r, std::uint64_t seed,
                               bool make_normal = false) {
    if (r > n) throw std::invalid_argument("random_ep: rank exceeds dimension");
    Rng rng(seed);
    if (r == 0) return ComplexMatrix::zero(n, n);
    const ComplexMatrix q = random_unitary(rng, n);
    const ComplexMatrix b =
        make_normal ? random_invertible_diagonal(rng, r) : random_invertible(rng, r);
    ComplexMatrix core(n, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) core(i, j) = b(i, j);
    return q * core * adjoint(q);
}

/// Random polynomial c0 + c1 B + c2 B^2 with gaussian coefficients.
inline ComplexMatrix random_polynomial_in(Rng& rng, const ComplexMatrix& b) {
    const Complex c0 = rng.complex_gaussian();
    const Complex c1 = rng.complex_gaussian();
    const Complex c2 = rng.complex_gaussian();
    const ComplexMatrix b2 = b * b;
    ComplexMatrix p = c0 * ComplexMatrix::identity(b.rows()) + c1 * b + c2 * b2;
    return p;
}

struct CommutingPair {
    ComplexMatrix t;  // EP with prescribed rank
    ComplexMatrix a;  // satisfies a * t = t * a
};

/// T = Q diag(B, 0) Q^H and A = Q diag(p(B), D) Q^H share the invertible
/// block up to a polynomial, so they commute exactly while A stays
/// unstructured on the kernel.
inline CommutingPair random_commuting_pair(std::size_t n, std::size_t r, std::uint64_t seed) {
    if (r > n) throw std::invalid_argument("random_commuting_pair: rank exceeds dimension");
    Rng rng(seed);
    const ComplexMatrix q = random_unitary(rng, n);
    const ComplexMatrix b = r > 0 ? random_invertible(rng, r) : ComplexMatrix(0, 0);
    ComplexMatrix core_t(n, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) core_t(i, j) = b(i, j);

    ComplexMatrix core_a(n, n);
    if (r > 0) {
        const ComplexMatrix p = random_polynomial_in(rng, b);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) core_a(i, j) = p(i, j);
    }
    const ComplexMatrix d = random_matrix(rng, n - r, n - r);
    for (std::size_t i = 0; i < n - r; ++i)
        for (std::size_t j = 0; j < n - r; ++j) core_a(r + i, r + j) = d(i, j);

    const ComplexMatrix qh = adjoint(q);
    return CommutingPair{q * core_t * qh, q * core_a * qh};
}

/// Random normal matrix Q D Q^H with diagonal D; optionally rank-deficient.
inline ComplexMatrix random_normal_matrix(Rng& rng, std::size_t n, std::size_t rank_limit) {
    const ComplexMatrix q = random_unitary(rng, n);
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < rank_limit; ++i) {
        const double mag = rng.uniform(0.5, 2.0);
        const double arg = rng.uniform(0.0, 2.0 * std::numbers::pi);
        d(i, i) = Complex{mag * std::cos(arg), mag * std::sin(arg)};
    }
    return q * d * adjoint(q);
}

}  // namespace eplab
