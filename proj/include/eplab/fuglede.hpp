#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eplab/complex_matrix.hpp"
#include "eplab/ep.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/subspace.hpp"
#include "eplab/svd.hpp"

namespace eplab {

/// One named measurement inside a verdict: whether it holds and the raw
/// Frobenius residual behind the decision.
struct Condition {
    std::string name;
    bool holds = false;
    double residual = 0.0;
};

/// Uniform record for a theorem check. `consistent` is false only when
/// every hypothesis holds and some conclusion fails, i.e. when the input
/// witnesses a violation of the cited statement. Observations are
/// informational measurements that are neither hypotheses nor conclusions
/// (used by the product checker).
struct TheoremVerdict {
    std::string theorem_id;
    std::vector<Condition> hypotheses;
    std::vector<Condition> conclusions;
    std::vector<Condition> observations;
    bool consistent = true;

    bool hypotheses_all_hold() const {
        for (const Condition& c : hypotheses)
            if (!c.holds) return false;
        return true;
    }

    bool conclusions_all_hold() const {
        for (const Condition& c : conclusions)
            if (!c.holds) return false;
        return true;
    }

    const Condition* find(const std::string& name) const {
        for (const auto* list : {&hypotheses, &conclusions, &observations})
            for (const Condition& c : *list)
                if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline Condition equality_condition(std::string name, const ComplexMatrix& x,
                                    const ComplexMatrix& y, const Tolerance& tol) {
    return Condition{std::move(name), approx_eq(x, y, tol), distance(x, y)};
}

inline Condition ep_condition(std::string name, const ComplexMatrix& t, const Tolerance& tol) {
    const EPReport r = is_ep(t, tol);
    return Condition{std::move(name), r.verdict, r.residuals[1]};
}

inline Condition normal_condition(std::string name, const ComplexMatrix& n, const Tolerance& tol) {
    return Condition{std::move(name), is_normal(n, tol), normality_residual(n)};
}

inline void require_square_same(std::initializer_list<const ComplexMatrix*> ms) {
    const ComplexMatrix* first = *ms.begin();
    for (const ComplexMatrix* m : ms) {
        if (!m->is_square() || m->rows() != first->rows()) {
            throw dimension_error("checker operands must be square and of equal order");
        }
    }
}

inline TheoremVerdict finish(TheoremVerdict v) {
    v.consistent = !(v.hypotheses_all_hold() && !v.conclusions_all_hold());
    return v;
}

}  // namespace detail

/// Fuglede: N normal and AN = NA imply AN^H = N^H A.
inline TheoremVerdict check_fuglede_classic(const ComplexMatrix& a, const ComplexMatrix& n,
                                            const Tolerance& tol = {}) {
    detail::require_square_same({&a, &n});
    TheoremVerdict v;
    v.theorem_id = "fuglede-classic";
    v.hypotheses.push_back(detail::normal_condition("n_normal", n, tol));
    v.hypotheses.push_back(detail::equality_condition("an_eq_na", a * n, n * a, tol));
    const ComplexMatrix nh = adjoint(n);
    v.conclusions.push_back(detail::equality_condition("an*_eq_n*a", a * nh, nh * a, tol));
    return detail::finish(std::move(v));
}

/// Moore-Penrose replacement of the adjoint: T EP and AT = TA imply
/// A T^+ = T^+ A.
inline TheoremVerdict check_fuglede_mp(const ComplexMatrix& a, const ComplexMatrix& t,
                                       const Tolerance& tol = {}) {
    detail::require_square_same({&a, &t});
    TheoremVerdict v;
    v.theorem_id = "fuglede-mp";
    v.hypotheses.push_back(detail::ep_condition("t_ep", t, tol));
    v.hypotheses.push_back(detail::equality_condition("at_eq_ta", a * t, t * a, tol));
    const ComplexMatrix tp = pinv(t, tol);
    v.conclusions.push_back(detail::equality_condition("at+_eq_t+a", a * tp, tp * a, tol));
    return detail::finish(std::move(v));
}

enum class AdjointVariant {
    star_product,  // extra condition A T^H T = T^H T A
    mp_star,       // extra condition A T^+ T^H = T^+ T^H A
};

/// Conditional Fuglede for EP operators: with AT = TA and the variant
/// condition, the adjoint itself commutes.
inline TheoremVerdict check_fuglede_adjoint(const ComplexMatrix& a, const ComplexMatrix& t,
                                            AdjointVariant variant, const Tolerance& tol = {}) {
    detail::require_square_same({&a, &t});
    TheoremVerdict v;
    v.theorem_id = variant == AdjointVariant::star_product ? "fuglede-star" : "fuglede-mp-star";
    v.hypotheses.push_back(detail::ep_condition("t_ep", t, tol));
    v.hypotheses.push_back(detail::equality_condition("at_eq_ta", a * t, t * a, tol));
    const ComplexMatrix th = adjoint(t);
    if (variant == AdjointVariant::star_product) {
        const ComplexMatrix tht = th * t;
        v.hypotheses.push_back(detail::equality_condition("at*t_eq_t*ta", a * tht, tht * a, tol));
    } else {
        const ComplexMatrix tpth = pinv(t, tol) * th;
        v.hypotheses.push_back(detail::equality_condition("at+t*_eq_t+t*a", a * tpth, tpth * a, tol));
    }
    v.conclusions.push_back(detail::equality_condition("at*_eq_t*a", a * th, th * a, tol));
    return detail::finish(std::move(v));
}

/// Putnam: N, M normal and AN = MA imply AN^H = M^H A.
inline TheoremVerdict check_putnam_classic(const ComplexMatrix& a, const ComplexMatrix& n,
                                           const ComplexMatrix& m, const Tolerance& tol = {}) {
    detail::require_square_same({&a, &n, &m});
    TheoremVerdict v;
    v.theorem_id = "putnam-classic";
    v.hypotheses.push_back(detail::normal_condition("n_normal", n, tol));
    v.hypotheses.push_back(detail::normal_condition("m_normal", m, tol));
    v.hypotheses.push_back(detail::equality_condition("an_eq_ma", a * n, m * a, tol));
    v.conclusions.push_back(
        detail::equality_condition("an*_eq_m*a", a * adjoint(n), adjoint(m) * a, tol));
    return detail::finish(std::move(v));
}

/// Two-operator Moore-Penrose version: T, S EP and AT = SA imply
/// A T^+ = S^+ A.
inline TheoremVerdict check_putnam_mp(const ComplexMatrix& a, const ComplexMatrix& t,
                                      const ComplexMatrix& s, const Tolerance& tol = {}) {
    detail::require_square_same({&a, &t, &s});
    TheoremVerdict v;
    v.theorem_id = "putnam-mp";
    v.hypotheses.push_back(detail::ep_condition("t_ep", t, tol));
    v.hypotheses.push_back(detail::ep_condition("s_ep", s, tol));
    v.hypotheses.push_back(detail::equality_condition("at_eq_sa", a * t, s * a, tol));
    v.conclusions.push_back(
        detail::equality_condition("at+_eq_s+a", a * pinv(t, tol), pinv(s, tol) * a, tol));
    return detail::finish(std::move(v));
}

/// Two-operator conditional adjoint version.
inline TheoremVerdict check_putnam_adjoint(const ComplexMatrix& a, const ComplexMatrix& t,
                                           const ComplexMatrix& s, AdjointVariant variant,
                                           const Tolerance& tol = {}) {
    detail::require_square_same({&a, &t, &s});
    TheoremVerdict v;
    v.theorem_id = variant == AdjointVariant::star_product ? "putnam-star" : "putnam-mp-star";
    v.hypotheses.push_back(detail::ep_condition("t_ep", t, tol));
    v.hypotheses.push_back(detail::ep_condition("s_ep", s, tol));
    v.hypotheses.push_back(detail::equality_condition("at_eq_sa", a * t, s * a, tol));
    const ComplexMatrix th = adjoint(t);
    const ComplexMatrix sh = adjoint(s);
    if (variant == AdjointVariant::star_product) {
        v.hypotheses.push_back(
            detail::equality_condition("at*t_eq_s*sa", a * (th * t), (sh * s) * a, tol));
    } else {
        v.hypotheses.push_back(detail::equality_condition(
            "at+t*_eq_s+s*a", a * (pinv(t, tol) * th), (pinv(s, tol) * sh) * a, tol));
    }
    v.conclusions.push_back(detail::equality_condition("at*_eq_s*a", a * th, sh * a, tol));
    return detail::finish(std::move(v));
}

/// Squared-intertwining version: T, S EP, AT = SB and AT^2 = S^2 B imply
/// A T^+ = S^+ B.
inline TheoremVerdict check_squares(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const ComplexMatrix& t, const ComplexMatrix& s,
                                    const Tolerance& tol = {}) {
    detail::require_square_same({&a, &b, &t, &s});
    TheoremVerdict v;
    v.theorem_id = "squares";
    v.hypotheses.push_back(detail::ep_condition("t_ep", t, tol));
    v.hypotheses.push_back(detail::ep_condition("s_ep", s, tol));
    v.hypotheses.push_back(detail::equality_condition("at_eq_sb", a * t, s * b, tol));
    v.hypotheses.push_back(detail::equality_condition("at2_eq_s2b", a * (t * t), (s * s) * b, tol));
    v.conclusions.push_back(
        detail::equality_condition("at+_eq_s+b", a * pinv(t, tol), pinv(s, tol) * b, tol));
    return detail::finish(std::move(v));
}

/// Two-sided version: with AT = SB and BT = SA (S defaulting to T), both
/// A T^+ = S^+ B and B T^+ = S^+ A follow.
inline TheoremVerdict check_two_sided(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const ComplexMatrix& t,
                                      const std::optional<ComplexMatrix>& s_opt = std::nullopt,
                                      const Tolerance& tol = {}) {
    const ComplexMatrix& s = s_opt ? *s_opt : t;
    detail::require_square_same({&a, &b, &t, &s});
    TheoremVerdict v;
    v.theorem_id = s_opt ? "two-sided-pair" : "two-sided";
    v.hypotheses.push_back(detail::ep_condition("t_ep", t, tol));
    if (s_opt) v.hypotheses.push_back(detail::ep_condition("s_ep", s, tol));
    v.hypotheses.push_back(detail::equality_condition("at_eq_sb", a * t, s * b, tol));
    v.hypotheses.push_back(detail::equality_condition("bt_eq_sa", b * t, s * a, tol));
    const ComplexMatrix tp = pinv(t, tol);
    const ComplexMatrix sp = s_opt ? pinv(s, tol) : tp;
    v.conclusions.push_back(detail::equality_condition("at+_eq_s+b", a * tp, sp * b, tol));
    v.conclusions.push_back(detail::equality_condition("bt+_eq_s+a", b * tp, sp * a, tol));
    return detail::finish(std::move(v));
}

/// S = U P with U unitary and P positive semidefinite Hermitian, fixed by
/// the deterministic SVD: U = W V^H, P = V Sigma V^H.
inline std::pair<ComplexMatrix, ComplexMatrix> polar_decompose(const ComplexMatrix& s) {
    if (!s.is_square()) throw dimension_error("polar_decompose requires a square matrix");
    const SvdResult f = svd(s);
    ComplexMatrix sigma(s.rows(), s.rows());
    for (std::size_t i = 0; i < f.singular_values.size(); ++i) sigma(i, i) = f.singular_values[i];
    const ComplexMatrix u = f.left * adjoint(f.right);
    const ComplexMatrix p = f.right * sigma * adjoint(f.right);
    return {u, p};
}

/// Joint report on the product of two EP operators: EP-ness of ST and TS,
/// the range/kernel factorization conditions, the reverse-order law, and
/// the two commutation conditions. Conclusions are the consistency of the
/// two cited equivalences; raw facts are reported as observations.
inline TheoremVerdict check_product_ep(const ComplexMatrix& s, const ComplexMatrix& t,
                                       const Tolerance& tol = {}) {
    detail::require_square_same({&s, &t});
    TheoremVerdict v;
    v.theorem_id = "product-ep";
    const Condition s_ep = detail::ep_condition("s_ep", s, tol);
    const Condition t_ep = detail::ep_condition("t_ep", t, tol);
    v.hypotheses.push_back(s_ep);
    v.hypotheses.push_back(t_ep);

    const ComplexMatrix st = s * t;
    const ComplexMatrix ts = t * s;
    const Condition st_ep = detail::ep_condition("st_ep", st, tol);
    const Condition ts_ep = detail::ep_condition("ts_ep", ts, tol);

    const Subspace range_st = from_columns(st, tol);
    const Subspace range_cap = intersect(from_columns(s, tol), from_columns(t, tol), tol);
    const Condition range_cond{"range_st_eq_range_s_cap_range_t",
                               subspaces_equal(range_st, range_cap, tol),
                               subspace_distance(range_st, range_cap)};

    const Subspace null_st = nullspace(st, tol);
    const Subspace null_sum = sum(nullspace(s, tol), nullspace(t, tol), tol);
    const Condition null_cond{"null_st_eq_null_s_plus_null_t",
                              subspaces_equal(null_st, null_sum, tol),
                              subspace_distance(null_st, null_sum)};

    const ComplexMatrix sp = pinv(s, tol);
    const ComplexMatrix tp = pinv(t, tol);
    const Condition rol = detail::equality_condition("(st)+_eq_t+s+", pinv(st, tol), tp * sp, tol);
    const Condition commute_pre =
        detail::equality_condition("s+st_eq_tss+", sp * (s * t), (t * s) * sp, tol);
    const Condition commute_post =
        detail::equality_condition("stt+_eq_t+ts", (s * t) * tp, tp * (t * s), tol);

    v.observations = {st_ep, ts_ep, range_cond, null_cond, rol, commute_pre, commute_post};

    // Equivalence (given S, T EP): ST EP <=> range and kernel conditions.
    const bool djordjevic_applies = s_ep.holds && t_ep.holds;
    const bool djordjevic_ok =
        !djordjevic_applies || (st_ep.holds == (range_cond.holds && null_cond.holds));
    v.conclusions.push_back(Condition{"range_kernel_criterion_consistent", djordjevic_ok, 0.0});

    // Equivalence (given the reverse-order law): ST and TS EP <=> both
    // commutation conditions.
    const bool criterion_ok =
        !rol.holds ||
        ((st_ep.holds && ts_ep.holds) == (commute_pre.holds && commute_post.holds));
    v.conclusions.push_back(Condition{"commutation_criterion_consistent", criterion_ok, 0.0});

    // The conclusions already embed their own gating, so consistency is
    // simply their conjunction.
    v.consistent = djordjevic_ok && criterion_ok;
    return v;
}

/// Polar corollary: with (ST)^+ = T^+ S^+, TU EP and PTU = TUP for the
/// polar factors S = UP, both ST and TS are EP.
inline TheoremVerdict check_polar_corollary(const ComplexMatrix& s, const ComplexMatrix& t,
                                            const Tolerance& tol = {}) {
    detail::require_square_same({&s, &t});
    TheoremVerdict v;
    v.theorem_id = "polar-corollary";
    const auto [u, p] = polar_decompose(s);
    const ComplexMatrix st = s * t;
    const ComplexMatrix ts = t * s;
    const ComplexMatrix tu = t * u;
    v.hypotheses.push_back(detail::equality_condition(
        "(st)+_eq_t+s+", pinv(st, tol), pinv(t, tol) * pinv(s, tol), tol));
    v.hypotheses.push_back(detail::ep_condition("tu_ep", tu, tol));
    v.hypotheses.push_back(detail::equality_condition("ptu_eq_tup", p * tu, tu * p, tol));
    v.conclusions.push_back(detail::ep_condition("st_ep", st, tol));
    v.conclusions.push_back(detail::ep_condition("ts_ep", ts, tol));
    return detail::finish(std::move(v));
}

}  // namespace eplab
