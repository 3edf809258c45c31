#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "eplab/catalog.hpp"
#include "eplab/complex_matrix.hpp"
#include "eplab/ep.hpp"
#include "eplab/fuglede.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/random_gen.hpp"
#include "eplab/subspace.hpp"
#include "eplab/svd.hpp"

namespace eplab {

struct SuiteConfig {
    int trials = 200;
    int max_dim = 12;
    std::uint64_t seed = 42;
    Tolerance tol{};
};

struct SuiteResult {
    std::string name;
    int trials = 0;
    int violations = 0;
    double max_residual = 0.0;
    std::string note;

    bool passed() const { return violations == 0; }
};

namespace detail {

inline std::uint64_t suite_salt(const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline Rng trial_rng(const SuiteConfig& cfg, const std::string& suite, int trial) {
    return Rng::for_trial(cfg.seed ^ suite_salt(suite), static_cast<std::uint64_t>(trial));
}

inline std::size_t pick_dim(Rng& rng, const SuiteConfig& cfg, std::size_t lo = 2) {
    const std::size_t hi = static_cast<std::size_t>(cfg.max_dim);
    return lo + rng.index(hi - lo + 1);
}

inline ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

// left * diag(x, y) * right^H
inline ComplexMatrix sandwich(const ComplexMatrix& left, const ComplexMatrix& x,
                              const ComplexMatrix& y, const ComplexMatrix& right) {
    return left * block_diag(x, y) * adjoint(right);
}

// Normal invertible block: V D V^H with diagonal D of moduli in [0.5, 2].
inline ComplexMatrix random_normal_invertible(Rng& rng, std::size_t n) {
    const ComplexMatrix v = random_unitary(rng, n);
    return v * random_invertible_diagonal(rng, n) * adjoint(v);
}

// Diagonal whose entries vanish with probability ~0.35, otherwise moduli
// in [0.5, 2]; the building block for normal rank-deficient factors.
inline ComplexMatrix random_diag_with_zeros(Rng& rng, std::size_t n) {
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform() < 0.35) continue;
        const double mag = rng.uniform(0.5, 2.0);
        const double arg = rng.uniform(0.0, 2.0 * 3.141592653589793);
        d(i, i) = Complex{mag * std::cos(arg), mag * std::sin(arg)};
    }
    return d;
}

using VerdictGenerator = std::function<TheoremVerdict(Rng&, std::size_t)>;

inline double max_conclusion_residual(const TheoremVerdict& v) {
    double r = 0.0;
    for (const Condition& c : v.conclusions) r = std::max(r, c.residual);
    return r;
}

// Hypothesis-satisfying sweep: every trial must land with all hypotheses
// and all conclusions holding; anything else is a violation (a conclusion
// failure would contradict the theorem, a hypothesis failure means the
// generator broke its contract).
inline SuiteResult soundness_sweep(const std::string& name, const SuiteConfig& cfg,
                                   const VerdictGenerator& gen) {
    SuiteResult result;
    result.name = name;
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = trial_rng(cfg, name, trial);
        const std::size_t dim = pick_dim(rng, cfg);
        const TheoremVerdict v = gen(rng, dim);
        result.max_residual = std::max(result.max_residual, max_conclusion_residual(v));
        if (!v.hypotheses_all_hold()) {
            ++result.violations;
            if (result.note.empty()) result.note = "generator failed hypotheses at trial " +
                                                   std::to_string(trial);
        } else if (!v.conclusions_all_hold()) {
            ++result.violations;
            if (result.note.empty()) result.note = "conclusion failed at trial " +
                                                   std::to_string(trial);
        }
    }
    return result;
}

// Fully random sweep: no structure is imposed, so no checker may ever
// report an inconsistency (that would claim a counterexample to a
// published theorem).
inline SuiteResult consistency_sweep(const std::string& name, const SuiteConfig& cfg,
                                     const VerdictGenerator& gen) {
    SuiteResult result;
    result.name = name;
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = trial_rng(cfg, name, trial);
        const std::size_t dim = pick_dim(rng, cfg);
        const TheoremVerdict v = gen(rng, dim);
        result.max_residual = std::max(result.max_residual, max_conclusion_residual(v));
        if (!v.consistent) {
            ++result.violations;
            if (result.note.empty()) result.note = "inconsistent verdict at trial " +
                                                   std::to_string(trial);
        }
    }
    return result;
}

// T = Q diag(B, 0) Q^H with invertible block B; A = Q diag(p(B), D) Q^H.
struct EpCommutingFamily {
    ComplexMatrix t;
    ComplexMatrix a;
};

inline EpCommutingFamily ep_commuting_instance(Rng& rng, std::size_t n, bool normal_block) {
    const std::size_t r = 1 + rng.index(n);
    const ComplexMatrix q = random_unitary(rng, n);
    const ComplexMatrix b =
        normal_block ? random_normal_invertible(rng, r) : random_invertible(rng, r);
    const ComplexMatrix d = random_matrix(rng, n - r, n - r);
    return {sandwich(q, b, ComplexMatrix::zero(n - r, n - r), q),
            sandwich(q, random_polynomial_in(rng, b), d, q)};
}

// T = Q diag(B, 0) Q^H and S = R diag(B, 0) R^H share the invertible block;
// A = R diag(p(B), Y) Q^H intertwines them: AT = SA.
struct EpIntertwinedFamily {
    ComplexMatrix t;
    ComplexMatrix s;
    ComplexMatrix a;
    ComplexMatrix q;
    ComplexMatrix r_factor;
    ComplexMatrix block;
    ComplexMatrix poly;
};

inline EpIntertwinedFamily ep_intertwined_instance(Rng& rng, std::size_t n, bool normal_block) {
    const std::size_t r = 1 + rng.index(n);
    const ComplexMatrix q = random_unitary(rng, n);
    const ComplexMatrix u = random_unitary(rng, n);
    const ComplexMatrix b =
        normal_block ? random_normal_invertible(rng, r) : random_invertible(rng, r);
    const ComplexMatrix zeros = ComplexMatrix::zero(n - r, n - r);
    const ComplexMatrix p = random_polynomial_in(rng, b);
    EpIntertwinedFamily fam;
    fam.t = sandwich(q, b, zeros, q);
    fam.s = sandwich(u, b, zeros, u);
    fam.a = sandwich(u, p, random_matrix(rng, n - r, n - r), q);
    fam.q = q;
    fam.r_factor = u;
    fam.block = b;
    fam.poly = p;
    return fam;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Structural suites
// ---------------------------------------------------------------------------

/// adjoint(adjoint(M)) = M exactly; adjoint reverses products; rank is
/// adjoint-invariant.
inline SuiteResult suite_adjoint_properties(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "core.adjoint";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t m = detail::pick_dim(rng, cfg, 1);
        const std::size_t n = detail::pick_dim(rng, cfg, 1);
        const ComplexMatrix a = random_matrix(rng, m, n);
        const ComplexMatrix b = random_matrix(rng, n, detail::pick_dim(rng, cfg, 1));
        bool ok = distance(adjoint(adjoint(a)), a) == 0.0;
        const double prod_res = distance(adjoint(a * b), adjoint(b) * adjoint(a));
        result.max_residual = std::max(result.max_residual, prod_res);
        ok = ok && prod_res <= cfg.tol.eq_tol * std::max(1.0, frobenius_norm(a * b));
        ok = ok && rank(a, cfg.tol) == rank(adjoint(a), cfg.tol);
        if (!ok) ++result.violations;
    }
    return result;
}

/// (AB)C = A(BC) within the hybrid tolerance on random conforming triples.
inline SuiteResult suite_matmul_associativity(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "core.matmul_associative";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t m = detail::pick_dim(rng, cfg, 1);
        const std::size_t n = detail::pick_dim(rng, cfg, 1);
        const std::size_t k = detail::pick_dim(rng, cfg, 1);
        const std::size_t l = detail::pick_dim(rng, cfg, 1);
        const ComplexMatrix a = random_matrix(rng, m, n);
        const ComplexMatrix b = random_matrix(rng, n, k);
        const ComplexMatrix c = random_matrix(rng, k, l);
        const ComplexMatrix left = (a * b) * c;
        const ComplexMatrix right = a * (b * c);
        result.max_residual = std::max(result.max_residual, distance(left, right));
        if (!approx_eq(left, right, cfg.tol)) ++result.violations;
    }
    return result;
}

/// Reconstruction and unitarity residuals of the factorization, measured
/// against the 1e-10-scaled gates from the SvdResult contract.
inline SuiteResult suite_svd_quality(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "core.svd_quality";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t m = detail::pick_dim(rng, cfg, 1);
        const std::size_t n = detail::pick_dim(rng, cfg, 1);
        ComplexMatrix a = random_matrix(rng, m, n);
        if (trial % 4 == 1) {
            // rank-deficient inputs keep the null-space handling honest
            const std::size_t r = rng.index(std::min(m, n));
            a = random_matrix(rng, m, r) * random_matrix(rng, r, n);
        }
        const SvdResult s = svd(a);
        const double recon = distance(s.reconstruct(), a);
        const double unit_left =
            distance(adjoint(s.left) * s.left, ComplexMatrix::identity(m));
        const double unit_right =
            distance(adjoint(s.right) * s.right, ComplexMatrix::identity(n));
        bool sorted = true;
        for (std::size_t i = 0; i + 1 < s.singular_values.size(); ++i)
            sorted = sorted && s.singular_values[i] >= s.singular_values[i + 1];
        bool nonneg = true;
        for (double sv : s.singular_values) nonneg = nonneg && sv >= 0.0;
        const double recon_gate = 1e-10 * std::max(1.0, frobenius_norm(a));
        result.max_residual = std::max(result.max_residual, recon);
        const bool ok = recon <= recon_gate && unit_left <= 1e-10 * static_cast<double>(m) &&
                        unit_right <= 1e-10 * static_cast<double>(n) && sorted && nonneg;
        if (!ok) ++result.violations;
    }
    return result;
}

/// pinv output satisfies all four Penrose equations; pinv is an involution
/// and commutes with the adjoint; rank-1 closed form agrees.
inline SuiteResult suite_pinv_properties(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "pinv.properties";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t m = detail::pick_dim(rng, cfg, 1);
        const std::size_t n = detail::pick_dim(rng, cfg, 1);
        ComplexMatrix a = random_matrix(rng, m, n);
        if (trial % 3 == 1) {
            const std::size_t r = 1 + rng.index(std::min(m, n));
            a = random_matrix(rng, m, r) * random_matrix(rng, r, n);
        }
        const ComplexMatrix g = pinv(a, cfg.tol);
        bool ok = penrose_check(a, g, cfg.tol).all_hold();

        const double invol = distance(pinv(g, cfg.tol), a);
        result.max_residual = std::max(result.max_residual, invol);
        ok = ok && invol <= cfg.tol.eq_tol * std::max(1.0, frobenius_norm(a));
        ok = ok && approx_eq(pinv(adjoint(a), cfg.tol), adjoint(g), cfg.tol);

        const ComplexMatrix p = range_projector(a, cfg.tol);
        const ComplexMatrix q = corange_projector(a, cfg.tol);
        ok = ok && approx_eq(p, adjoint(p), cfg.tol) && approx_eq(p * p, p, cfg.tol);
        ok = ok && approx_eq(q, adjoint(q), cfg.tol) && approx_eq(q * q, q, cfg.tol);

        const ComplexMatrix r1 =
            random_matrix(rng, m, 1) * random_matrix(rng, 1, n);
        ok = ok && approx_eq(pinv_rank1(r1), pinv(r1, cfg.tol), cfg.tol);
        if (!ok) ++result.violations;
    }
    return result;
}

/// Complement/sum/intersect dimension identities and the constraint-form
/// round trip on random subspaces.
inline SuiteResult suite_subspace_properties(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "subspace.properties";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const std::size_t d1 = rng.index(n + 1);
        const std::size_t d2 = rng.index(n + 1);
        const Subspace s1 = from_columns(random_matrix(rng, n, d1), cfg.tol);
        const Subspace s2 = from_columns(random_matrix(rng, n, d2), cfg.tol);

        bool ok = complement(s1).dim() == n - s1.dim();
        const double dbl = subspace_distance(complement(complement(s1)), s1);
        result.max_residual = std::max(result.max_residual, dbl);
        ok = ok && dbl <= cfg.tol.eq_tol;

        const Subspace s_sum = sum(s1, s2, cfg.tol);
        const Subspace s_cap = intersect(s1, s2, cfg.tol);
        ok = ok && s1.dim() + s2.dim() == s_sum.dim() + s_cap.dim();

        const ComplexMatrix proj_sum = s_sum.projector();
        ok = ok && approx_eq(proj_sum * s1.projector(), s1.projector(), cfg.tol);

        if (s1.dim() >= 1) {
            const ConstraintSpec spec = to_constraint_form(s1, cfg.tol);
            ok = ok && subspaces_equal(from_constraint_form(spec, cfg.tol), s1, cfg.tol);
        }
        if (!ok) ++result.violations;
    }
    return result;
}

// ---------------------------------------------------------------------------
// EP suites
// ---------------------------------------------------------------------------

/// The five characterizations agree on a mixed population: gaussian,
/// constructed EP, normal rank-deficient, and unitary inputs.
inline SuiteResult suite_characterization_unanimity(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "ep.unanimity";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        ComplexMatrix t;
        switch (trial % 4) {
            case 0: t = random_matrix(rng, n, n); break;
            case 1: t = random_ep(n, rng.index(n + 1), rng.next()); break;
            case 2: {
                Rng inner(rng.next());
                t = random_normal_matrix(inner, n, 1 + inner.index(n));
                break;
            }
            default: t = random_unitary(rng, n); break;
        }
        const EPReport report = is_ep(t, cfg.tol);
        if (!report.unanimous) {
            ++result.violations;
            if (result.note.empty()) result.note = "characterizations split at trial " +
                                                   std::to_string(trial);
        }
    }
    return result;
}

/// Construction postcondition on random constraint specs: output is EP and
/// its range is the presented subspace.
inline SuiteResult suite_ep_construct(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "ep.construct";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = 2 + rng.index(std::min<std::size_t>(cfg.max_dim, 10) - 1);
        const std::size_t d = 1 + rng.index(n);
        std::vector<std::size_t> indices(n);
        for (std::size_t i = 0; i < n; ++i) indices[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(indices[i - 1], indices[rng.index(i)]);
        ConstraintSpec spec;
        spec.ambient_dim = n;
        spec.free_indices.assign(indices.begin(), indices.begin() + d);
        spec.constrained_indices.assign(indices.begin() + d, indices.end());
        std::sort(spec.free_indices.begin(), spec.free_indices.end());
        std::sort(spec.constrained_indices.begin(), spec.constrained_indices.end());
        for (std::size_t c = 0; c < spec.constrained_indices.size(); ++c) {
            std::vector<Complex> coeff(d);
            for (auto& z : coeff) z = rng.complex_gaussian();
            spec.coefficients.push_back(std::move(coeff));
        }
        try {
            const ComplexMatrix t = ep_construct(spec, random_invertible(rng, d), cfg.tol);
            const Subspace target = from_constraint_form(spec, cfg.tol);
            const double dist = subspace_distance(from_columns(t, cfg.tol), target);
            result.max_residual = std::max(result.max_residual, dist);
        } catch (const internal_error&) {
            ++result.violations;
        }
    }
    return result;
}

/// Complex rank-1 EP matrices (c u u^H) are normal.
inline SuiteResult suite_rank1_complex_normal(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "ep.rank1_complex_normal";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const ComplexMatrix u = random_matrix(rng, n, 1);
        const ComplexMatrix t = rng.complex_gaussian() * (u * adjoint(u));
        const Rank1Report report = check_rank1_remarks(t, cfg.tol);
        const double res = normality_residual(t);
        result.max_residual = std::max(result.max_residual, res);
        if (!(report.is_rank1 && report.is_ep && res <= 1e-9)) ++result.violations;
    }
    return result;
}

/// Real rank-1 EP matrices (c u u^T, everything real) are symmetric.
inline SuiteResult suite_rank1_real_symmetric(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "ep.rank1_real_symmetric";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const ComplexMatrix u = random_real_matrix(rng, n, 1);
        const ComplexMatrix t = Complex{rng.gaussian(), 0.0} * (u * transpose(u));
        const Rank1Report report = check_rank1_remarks(t, cfg.tol);
        const double res = distance(t, transpose(t));
        result.max_residual = std::max(result.max_residual, res);
        if (!(report.is_rank1 && report.is_ep && report.is_real && res <= 1e-9))
            ++result.violations;
    }
    return result;
}

/// Randomized search over unstructured rank-1 matrices: any that happen to
/// be EP must come out normal (complex) / symmetric (real). Expected to
/// find few or none; the point is zero violations among those found.
inline SuiteResult suite_rank1_search(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "ep.rank1_search";
    result.trials = cfg.trials;
    int found = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const bool real = trial % 2 == 0;
        const ComplexMatrix u = real ? random_real_matrix(rng, n, 1) : random_matrix(rng, n, 1);
        const ComplexMatrix v = real ? random_real_matrix(rng, n, 1) : random_matrix(rng, n, 1);
        const ComplexMatrix t = u * adjoint(v);
        const Rank1Report report = check_rank1_remarks(t, cfg.tol);
        if (!report.is_ep) continue;
        ++found;
        if (!report.is_normal) ++result.violations;
        if (report.is_real && !report.is_symmetric) ++result.violations;
    }
    result.note = std::to_string(found) + " EP instances among random rank-1 samples";
    return result;
}

/// EP-ness is invariant under unitary similarity.
inline SuiteResult suite_unitary_similarity(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "ep.unitary_similarity";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const ComplexMatrix t =
            trial % 2 == 0 ? random_matrix(rng, n, n) : random_ep(n, rng.index(n + 1), rng.next());
        const ComplexMatrix q = random_unitary(rng, n);
        const bool before = is_ep(t, cfg.tol).verdict;
        const bool after = is_ep(q * t * adjoint(q), cfg.tol).verdict;
        if (before != after) ++result.violations;
    }
    return result;
}

/// Polar factors: U unitary, P Hermitian with nonnegative spectrum, UP = S.
inline SuiteResult suite_polar_properties(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "polar.properties";
    result.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        ComplexMatrix s = random_matrix(rng, n, n);
        if (trial % 3 == 1) {
            const std::size_t r = rng.index(n);
            s = random_matrix(rng, n, r) * random_matrix(rng, r, n);
        }
        const auto [u, p] = polar_decompose(s);
        bool ok = distance(adjoint(u) * u, ComplexMatrix::identity(n)) <=
                  cfg.tol.eq_tol * static_cast<double>(n);
        ok = ok && approx_eq(p, adjoint(p), cfg.tol);
        const double recon = distance(u * p, s);
        result.max_residual = std::max(result.max_residual, recon);
        ok = ok && recon <= cfg.tol.eq_tol * std::max(1.0, frobenius_norm(s));
        // Hermitian p: singular vectors are eigenvectors, so Rayleigh
        // quotients of the left factor recover the spectrum with signs.
        const SvdResult ps = svd(p);
        for (std::size_t j = 0; j < n; ++j) {
            Complex quad{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                Complex row{0.0, 0.0};
                for (std::size_t k = 0; k < n; ++k) row += p(i, k) * ps.left(k, j);
                quad += std::conj(ps.left(i, j)) * row;
            }
            ok = ok && quad.real() >= -cfg.tol.eq_tol;
        }
        if (!ok) ++result.violations;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Theorem soundness sweeps (hypothesis-satisfying generators)
// ---------------------------------------------------------------------------

inline SuiteResult suite_soundness_fuglede_classic(const SuiteConfig& cfg) {
    return detail::soundness_sweep(
        "soundness.fuglede-classic", cfg, [&](Rng& rng, std::size_t n) {
            const ComplexMatrix q = random_unitary(rng, n);
            const ComplexMatrix d = detail::random_diag_with_zeros(rng, n);
            const ComplexMatrix nrm = q * d * adjoint(q);
            const ComplexMatrix a = rng.uniform() < 0.5
                                        ? random_polynomial_in(rng, nrm)
                                        : q * detail::random_diag_with_zeros(rng, n) * adjoint(q);
            return check_fuglede_classic(a, nrm, cfg.tol);
        });
}

inline SuiteResult suite_soundness_fuglede_mp(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.fuglede-mp", cfg, [&](Rng& rng, std::size_t n) {
        const CommutingPair pair = random_commuting_pair(n, 1 + rng.index(n), rng.next());
        return check_fuglede_mp(pair.a, pair.t, cfg.tol);
    });
}

inline SuiteResult suite_soundness_fuglede_star(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.fuglede-star", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_commuting_instance(rng, n, /*normal_block=*/true);
        return check_fuglede_adjoint(fam.a, fam.t, AdjointVariant::star_product, cfg.tol);
    });
}

inline SuiteResult suite_soundness_fuglede_mp_star(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.fuglede-mp-star", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_commuting_instance(rng, n, /*normal_block=*/true);
        return check_fuglede_adjoint(fam.a, fam.t, AdjointVariant::mp_star, cfg.tol);
    });
}

inline SuiteResult suite_soundness_putnam_classic(const SuiteConfig& cfg) {
    return detail::soundness_sweep(
        "soundness.putnam-classic", cfg, [&](Rng& rng, std::size_t n) {
            const ComplexMatrix q = random_unitary(rng, n);
            const ComplexMatrix r = random_unitary(rng, n);
            const ComplexMatrix d = detail::random_diag_with_zeros(rng, n);
            const ComplexMatrix x = detail::random_diag_with_zeros(rng, n);
            const ComplexMatrix nrm = q * d * adjoint(q);
            const ComplexMatrix mrm = r * d * adjoint(r);
            const ComplexMatrix a = r * x * adjoint(q);
            return check_putnam_classic(a, nrm, mrm, cfg.tol);
        });
}

inline SuiteResult suite_soundness_putnam_mp(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.putnam-mp", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_intertwined_instance(rng, n, /*normal_block=*/false);
        return check_putnam_mp(fam.a, fam.t, fam.s, cfg.tol);
    });
}

inline SuiteResult suite_soundness_putnam_star(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.putnam-star", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_intertwined_instance(rng, n, /*normal_block=*/true);
        return check_putnam_adjoint(fam.a, fam.t, fam.s, AdjointVariant::star_product, cfg.tol);
    });
}

inline SuiteResult suite_soundness_putnam_mp_star(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.putnam-mp-star", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_intertwined_instance(rng, n, /*normal_block=*/true);
        return check_putnam_adjoint(fam.a, fam.t, fam.s, AdjointVariant::mp_star, cfg.tol);
    });
}

inline SuiteResult suite_soundness_squares(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.squares", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_intertwined_instance(rng, n, /*normal_block=*/false);
        const std::size_t k = fam.block.rows();
        const ComplexMatrix b_op = detail::sandwich(
            fam.r_factor, fam.poly, random_matrix(rng, n - k, n - k), fam.q);
        return check_squares(fam.a, b_op, fam.t, fam.s, cfg.tol);
    });
}

inline SuiteResult suite_soundness_two_sided(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.two-sided", cfg, [&](Rng& rng, std::size_t n) {
        const std::size_t r = 1 + rng.index(n);
        const ComplexMatrix q = random_unitary(rng, n);
        const ComplexMatrix b = random_invertible(rng, r);
        const ComplexMatrix zeros = ComplexMatrix::zero(n - r, n - r);
        const ComplexMatrix t = detail::sandwich(q, b, zeros, q);
        const ComplexMatrix c = random_polynomial_in(rng, b);
        const ComplexMatrix a = detail::sandwich(q, c, random_matrix(rng, n - r, n - r), q);
        const ComplexMatrix b_op = detail::sandwich(q, c, random_matrix(rng, n - r, n - r), q);
        return check_two_sided(a, b_op, t, std::nullopt, cfg.tol);
    });
}

inline SuiteResult suite_soundness_two_sided_pair(const SuiteConfig& cfg) {
    return detail::soundness_sweep("soundness.two-sided-pair", cfg, [&](Rng& rng, std::size_t n) {
        const auto fam = detail::ep_intertwined_instance(rng, n, /*normal_block=*/false);
        const std::size_t k = fam.block.rows();
        const ComplexMatrix b_op = detail::sandwich(
            fam.r_factor, fam.poly, random_matrix(rng, n - k, n - k), fam.q);
        return check_two_sided(fam.a, b_op, fam.t, fam.s, cfg.tol);
    });
}

/// Forward direction of the product criterion: simultaneously diagonalized
/// EP factors satisfy the reverse-order law and both commutation
/// conditions, so both products must be EP. The factors share their kernel
/// support so the product's singular values stay well separated from the
/// roundoff floor; the rank cutoff is widened accordingly.
inline SuiteResult suite_soundness_product_forward(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "soundness.product-ep-forward";
    result.trials = cfg.trials;
    const Tolerance tol{cfg.tol.eq_tol, 1e-10};
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const ComplexMatrix q = random_unitary(rng, n);
        ComplexMatrix ds(n, n), dt(n, n);
        bool any_support = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.uniform() < 0.35 && !(i + 1 == n && !any_support)) continue;
            any_support = true;
            for (ComplexMatrix* d : {&ds, &dt}) {
                const double mag = rng.uniform(0.5, 2.0);
                const double arg = rng.uniform(0.0, 2.0 * 3.141592653589793);
                (*d)(i, i) = Complex{mag * std::cos(arg), mag * std::sin(arg)};
            }
        }
        const ComplexMatrix s = q * ds * adjoint(q);
        const ComplexMatrix t = q * dt * adjoint(q);
        const TheoremVerdict v = check_product_ep(s, t, tol);
        const Condition* rol = v.find("(st)+_eq_t+s+");
        const Condition* pre = v.find("s+st_eq_tss+");
        const Condition* post = v.find("stt+_eq_t+ts");
        const Condition* st_ep = v.find("st_ep");
        const Condition* ts_ep = v.find("ts_ep");
        const bool generated_ok = rol->holds && pre->holds && post->holds;
        const bool concluded = st_ep->holds && ts_ep->holds;
        if (!generated_ok || !concluded || !v.consistent) {
            ++result.violations;
            if (result.note.empty()) result.note = "forward criterion failed at trial " +
                                                   std::to_string(trial);
        }
        result.max_residual = std::max(result.max_residual, rol->residual);
    }
    return result;
}

/// Backward/contrapositive direction: with a unitary left factor the
/// reverse-order law always holds, so EP products and the commutation
/// conditions must agree whichever way they fall.
inline SuiteResult suite_soundness_product_backward(const SuiteConfig& cfg) {
    SuiteResult result;
    result.name = "soundness.product-ep-backward";
    result.trials = cfg.trials;
    int criterion_negative = 0;
    const Tolerance tol{cfg.tol.eq_tol, 1e-10};
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = detail::trial_rng(cfg, result.name, trial);
        const std::size_t n = detail::pick_dim(rng, cfg);
        const ComplexMatrix s = random_unitary(rng, n);
        const ComplexMatrix t = random_ep(n, 1 + rng.index(n), rng.next());
        const TheoremVerdict v = check_product_ep(s, t, tol);
        const Condition* rol = v.find("(st)+_eq_t+s+");
        const Condition* pre = v.find("s+st_eq_tss+");
        const Condition* post = v.find("stt+_eq_t+ts");
        const Condition* st_ep = v.find("st_ep");
        const Condition* ts_ep = v.find("ts_ep");
        if (!rol->holds || !v.consistent ||
            (st_ep->holds && ts_ep->holds) != (pre->holds && post->holds)) {
            ++result.violations;
        }
        if (!(pre->holds && post->holds)) ++criterion_negative;
        result.max_residual = std::max(result.max_residual, rol->residual);
    }
    result.note = std::to_string(criterion_negative) + " trials exercised the negative branch";
    return result;
}

inline SuiteResult suite_soundness_polar_corollary(const SuiteConfig& cfg) {
    const Tolerance tol{cfg.tol.eq_tol, 1e-10};
    return detail::soundness_sweep(
        "soundness.polar-corollary", cfg, [&, tol](Rng& rng, std::size_t n) {
            const ComplexMatrix q = random_unitary(rng, n);
            const ComplexMatrix s = q * random_invertible_diagonal(rng, n) * adjoint(q);
            ComplexMatrix dt = detail::random_diag_with_zeros(rng, n);
            if (frobenius_norm(dt) == 0.0) dt(0, 0) = 1.0;  // keep ST away from the noise floor
            const ComplexMatrix t = q * dt * adjoint(q);
            return check_polar_corollary(s, t, tol);
        });
}

// ---------------------------------------------------------------------------
// Consistency sweeps (unstructured random inputs)
// ---------------------------------------------------------------------------

namespace detail {

// Mixed population: fully random operands, commuting-but-non-EP pairs, and
// EP operators with unrelated companions.
inline ComplexMatrix consistency_operand(Rng& rng, std::size_t n, int flavour) {
    switch (flavour % 3) {
        case 0: return random_matrix(rng, n, n);
        case 1: return random_ep(n, rng.index(n + 1), rng.next());
        default: {
            const ComplexMatrix g = random_matrix(rng, n, n);
            return random_polynomial_in(rng, g);
        }
    }
}

}  // namespace detail

inline std::vector<SuiteResult> consistency_suites(const SuiteConfig& cfg) {
    std::vector<SuiteResult> results;
    const auto operand = [](Rng& rng, std::size_t n) {
        return detail::consistency_operand(rng, n, static_cast<int>(rng.index(3)));
    };
    results.push_back(detail::consistency_sweep(
        "consistency.fuglede-classic", cfg, [&](Rng& rng, std::size_t n) {
            return check_fuglede_classic(operand(rng, n), operand(rng, n), cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.fuglede-mp", cfg, [&](Rng& rng, std::size_t n) {
            if (rng.uniform() < 0.3) {
                // commuting pair around a non-EP core
                const ComplexMatrix t = random_matrix(rng, n, n);
                return check_fuglede_mp(random_polynomial_in(rng, t), t, cfg.tol);
            }
            return check_fuglede_mp(operand(rng, n), operand(rng, n), cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.fuglede-star", cfg, [&](Rng& rng, std::size_t n) {
            return check_fuglede_adjoint(operand(rng, n), operand(rng, n),
                                         AdjointVariant::star_product, cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.fuglede-mp-star", cfg, [&](Rng& rng, std::size_t n) {
            return check_fuglede_adjoint(operand(rng, n), operand(rng, n),
                                         AdjointVariant::mp_star, cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.putnam-classic", cfg, [&](Rng& rng, std::size_t n) {
            return check_putnam_classic(operand(rng, n), operand(rng, n), operand(rng, n),
                                        cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.putnam-mp", cfg, [&](Rng& rng, std::size_t n) {
            return check_putnam_mp(operand(rng, n), operand(rng, n), operand(rng, n), cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.putnam-star", cfg, [&](Rng& rng, std::size_t n) {
            return check_putnam_adjoint(operand(rng, n), operand(rng, n), operand(rng, n),
                                        AdjointVariant::star_product, cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.putnam-mp-star", cfg, [&](Rng& rng, std::size_t n) {
            return check_putnam_adjoint(operand(rng, n), operand(rng, n), operand(rng, n),
                                        AdjointVariant::mp_star, cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.squares", cfg, [&](Rng& rng, std::size_t n) {
            return check_squares(operand(rng, n), operand(rng, n), operand(rng, n),
                                 operand(rng, n), cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.two-sided", cfg, [&](Rng& rng, std::size_t n) {
            if (rng.uniform() < 0.5) {
                return check_two_sided(operand(rng, n), operand(rng, n), operand(rng, n),
                                       std::nullopt, cfg.tol);
            }
            return check_two_sided(operand(rng, n), operand(rng, n), operand(rng, n),
                                   operand(rng, n), cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.product-ep", cfg, [&](Rng& rng, std::size_t n) {
            if (rng.uniform() < 0.4) {
                // pairs that are genuinely EP but otherwise unrelated
                return check_product_ep(random_ep(n, 1 + rng.index(n), rng.next()),
                                        random_ep(n, 1 + rng.index(n), rng.next()), cfg.tol);
            }
            return check_product_ep(operand(rng, n), operand(rng, n), cfg.tol);
        }));
    results.push_back(detail::consistency_sweep(
        "consistency.polar-corollary", cfg, [&](Rng& rng, std::size_t n) {
            return check_polar_corollary(operand(rng, n), operand(rng, n), cfg.tol);
        }));
    return results;
}

inline std::vector<SuiteResult> soundness_suites(const SuiteConfig& cfg) {
    return {suite_soundness_fuglede_classic(cfg), suite_soundness_fuglede_mp(cfg),
            suite_soundness_fuglede_star(cfg),    suite_soundness_fuglede_mp_star(cfg),
            suite_soundness_putnam_classic(cfg),  suite_soundness_putnam_mp(cfg),
            suite_soundness_putnam_star(cfg),     suite_soundness_putnam_mp_star(cfg),
            suite_soundness_squares(cfg),         suite_soundness_two_sided(cfg),
            suite_soundness_two_sided_pair(cfg),  suite_soundness_product_forward(cfg),
            suite_soundness_product_backward(cfg), suite_soundness_polar_corollary(cfg)};
}

inline std::vector<SuiteResult> structural_suites(const SuiteConfig& cfg) {
    return {suite_adjoint_properties(cfg),
            suite_matmul_associativity(cfg),
            suite_svd_quality(cfg),
            suite_pinv_properties(cfg),
            suite_subspace_properties(cfg),
            suite_characterization_unanimity(cfg),
            suite_ep_construct(cfg),
            suite_rank1_complex_normal(cfg),
            suite_rank1_real_symmetric(cfg),
            suite_rank1_search(cfg),
            suite_unitary_similarity(cfg),
            suite_polar_properties(cfg)};
}

/// Everything the random-suite command runs, in a fixed deterministic order.
inline std::vector<SuiteResult> run_property_suites(const SuiteConfig& cfg) {
    std::vector<SuiteResult> all = structural_suites(cfg);
    for (auto& r : soundness_suites(cfg)) all.push_back(std::move(r));
    for (auto& r : consistency_suites(cfg)) all.push_back(std::move(r));
    return all;
}

}  // namespace eplab
