#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eplab/complex_matrix.hpp"
#include "eplab/ep.hpp"
#include "eplab/fuglede.hpp"
#include "eplab/subspace.hpp"

namespace eplab {

/// Operands for a named rule; which slots must be present depends on the
/// rule (see run_rule).
struct OperandSet {
    std::optional<ComplexMatrix> a;
    std::optional<ComplexMatrix> b;
    std::optional<ComplexMatrix> t;
    std::optional<ComplexMatrix> s;
};

namespace detail {

inline const ComplexMatrix& require_operand(const std::optional<ComplexMatrix>& m,
                                            const char* slot, const std::string& rule) {
    if (!m) {
        throw std::invalid_argument("rule '" + rule + "' needs operand --" + std::string(slot));
    }
    return *m;
}

}  // namespace detail

inline const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names = {
        "fuglede-classic", "fuglede-mp",      "fuglede-star", "fuglede-mp-star",
        "putnam-classic",  "putnam-mp",       "putnam-star",  "putnam-mp-star",
        "squares",         "two-sided",       "product-ep",   "polar-corollary"};
    return names;
}

/// Dispatches a rule id onto the matching checker. Operand conventions:
/// single-operator rules read (A, T); two-operator rules read (A, T, S)
/// with T on the left of the intertwining; squares and two-sided add B;
/// product rules read (S, T).
inline TheoremVerdict run_rule(const std::string& rule, const OperandSet& ops,
                               const Tolerance& tol = {}) {
    using detail::require_operand;
    if (rule == "fuglede-classic") {
        return check_fuglede_classic(require_operand(ops.a, "A", rule),
                                     require_operand(ops.t, "T", rule), tol);
    }
    if (rule == "fuglede-mp") {
        return check_fuglede_mp(require_operand(ops.a, "A", rule),
                                require_operand(ops.t, "T", rule), tol);
    }
    if (rule == "fuglede-star") {
        return check_fuglede_adjoint(require_operand(ops.a, "A", rule),
                                     require_operand(ops.t, "T", rule),
                                     AdjointVariant::star_product, tol);
    }
    if (rule == "fuglede-mp-star") {
        return check_fuglede_adjoint(require_operand(ops.a, "A", rule),
                                     require_operand(ops.t, "T", rule), AdjointVariant::mp_star,
                                     tol);
    }
    if (rule == "putnam-classic") {
        return check_putnam_classic(require_operand(ops.a, "A", rule),
                                    require_operand(ops.t, "T", rule),
                                    require_operand(ops.s, "S", rule), tol);
    }
    if (rule == "putnam-mp") {
        return check_putnam_mp(require_operand(ops.a, "A", rule),
                               require_operand(ops.t, "T", rule),
                               require_operand(ops.s, "S", rule), tol);
    }
    if (rule == "putnam-star") {
        return check_putnam_adjoint(require_operand(ops.a, "A", rule),
                                    require_operand(ops.t, "T", rule),
                                    require_operand(ops.s, "S", rule),
                                    AdjointVariant::star_product, tol);
    }
    if (rule == "putnam-mp-star") {
        return check_putnam_adjoint(require_operand(ops.a, "A", rule),
                                    require_operand(ops.t, "T", rule),
                                    require_operand(ops.s, "S", rule), AdjointVariant::mp_star,
                                    tol);
    }
    if (rule == "squares") {
        return check_squares(require_operand(ops.a, "A", rule), require_operand(ops.b, "B", rule),
                             require_operand(ops.t, "T", rule), require_operand(ops.s, "S", rule),
                             tol);
    }
    if (rule == "two-sided") {
        return check_two_sided(require_operand(ops.a, "A", rule),
                               require_operand(ops.b, "B", rule),
                               require_operand(ops.t, "T", rule), ops.s, tol);
    }
    if (rule == "product-ep") {
        return check_product_ep(require_operand(ops.s, "S", rule),
                                require_operand(ops.t, "T", rule), tol);
    }
    if (rule == "polar-corollary") {
        return check_polar_corollary(require_operand(ops.s, "S", rule),
                                     require_operand(ops.t, "T", rule), tol);
    }
    throw std::invalid_argument("unknown rule '" + rule + "'");
}

struct CatalogExpectation {
    std::string condition;
    bool expected;
};

struct CatalogCheck {
    std::string rule;  // a run_rule id, or "check-ep" / "construct"
    std::vector<CatalogExpectation> expect;
};

/// One finite-block case: operators that act as the identity beyond the
/// leading block, so the block carries all the structure. `source`
/// records the defining formulas.
struct CounterexampleCase {
    std::string case_id;
    std::string source;
    std::size_t block_dim = 0;
    OperandSet blocks;
    std::optional<ConstraintSpec> spec;
    std::optional<ComplexMatrix> free_coords;
    std::optional<ComplexMatrix> expected_output;
    std::vector<CatalogCheck> checks;
};

inline std::vector<CounterexampleCase> catalog() {
    std::vector<CounterexampleCase> cases;
    const Complex i1{0.0, 1.0};

    {
        CounterexampleCase c;
        c.case_id = "ep-not-normal";
        c.source = "T(x) = (x1+x2, 2x1+x2+x3, -x1-x3, x4, ...) on l2; EP with one-dimensional "
                   "kernel span{(1,-1,-1)} yet not normal";
        c.block_dim = 3;
        c.blocks.t = ComplexMatrix{{1, 1, 0}, {2, 1, 1}, {-1, 0, -1}};
        c.checks.push_back({"check-ep", {{"is_ep", true}, {"is_normal", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "construct-from-subspace";
        c.source = "range-prescribed construction for W = {(x1, x1+x2, x2)} in C^3 with basis "
                   "free coordinates (1, i) and (1, -1)";
        c.block_dim = 3;
        ConstraintSpec spec;
        spec.ambient_dim = 3;
        spec.free_indices = {0, 2};
        spec.constrained_indices = {1};
        spec.coefficients = {{Complex{1, 0}, Complex{1, 0}}};
        c.spec = spec;
        c.free_coords = ComplexMatrix{{Complex{1, 0}, i1}, {Complex{1, 0}, Complex{-1, 0}}};
        c.expected_output = ComplexMatrix{{Complex{1, 0}, Complex{2, 0}, Complex{1, 0}},
                                          {Complex{1, 1}, Complex{1, 1}, Complex{0, 0}},
                                          {i1, Complex{-1, 1}, Complex{-1, 0}}};
        c.checks.push_back({"construct",
                            {{"output_matches", true},
                             {"is_ep", true},
                             {"is_normal", false},
                             {"range_eq_target", true}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "fuglede-fails-for-ep";
        c.source = "T(x) = (x1-x2, x1+x3, 2x1-x2+x3, x4, ...) EP non-normal; "
                   "A(x) = (x2, -x1+x2-x3, -2x1+x2, x4, ...); A commutes with T but with "
                   "neither T^* nor T^+T^*";
        c.block_dim = 3;
        c.blocks.t = ComplexMatrix{{1, -1, 0}, {1, 0, 1}, {2, -1, 1}};
        c.blocks.a = ComplexMatrix{{0, 1, 0}, {-1, 1, -1}, {-2, 1, 0}};
        c.checks.push_back({"fuglede-classic",
                            {{"n_normal", false}, {"an_eq_na", true}, {"an*_eq_n*a", false}}});
        c.checks.push_back(
            {"fuglede-mp", {{"t_ep", true}, {"at_eq_ta", true}, {"at+_eq_t+a", true}}});
        c.checks.push_back({"fuglede-mp-star",
                            {{"t_ep", true},
                             {"at_eq_ta", true},
                             {"at+t*_eq_t+t*a", false},
                             {"at*_eq_t*a", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "mp-commute-needs-ep";
        c.source = "A = T with T(x) = (x1+x2, 2x1+2x2, x3, ...); rank-1 non-EP block where "
                   "T^+ fails to commute with T";
        c.block_dim = 2;
        c.blocks.t = ComplexMatrix{{1, 1}, {2, 2}};
        c.blocks.a = ComplexMatrix{{1, 1}, {2, 2}};
        c.checks.push_back(
            {"fuglede-mp", {{"t_ep", false}, {"at_eq_ta", true}, {"at+_eq_t+a", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "star-product-condition-needed";
        c.source = "T(x) = (x1+x3, 0, x3, x4, ...), A(x) = (x1+2x3, -x2, x3, x4, ...); "
                   "AT = TA holds but A T^*T != T^*T A and the adjoint does not commute";
        c.block_dim = 3;
        c.blocks.t = ComplexMatrix{{1, 0, 1}, {0, 0, 0}, {0, 0, 1}};
        c.blocks.a = ComplexMatrix{{1, 0, 2}, {0, -1, 0}, {0, 0, 1}};
        c.checks.push_back({"fuglede-star",
                            {{"t_ep", true},
                             {"at_eq_ta", true},
                             {"at*t_eq_t*ta", false},
                             {"at*_eq_t*a", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "putnam-adjoint-fails";
        c.source = "T(x) = (x1+x3, 0, x3, x4, ...), S(x) = (x1+x2, x2, 0, x4, ...) [reading the "
                    "published 'x_2,,0' as (x2, 0)], A(x) = (x1-x3, x3, 2x2, x4, ...); AT = SA "
                    "but no adjoint intertwining";
        c.block_dim = 3;
        c.blocks.t = ComplexMatrix{{1, 0, 1}, {0, 0, 0}, {0, 0, 1}};
        c.blocks.s = ComplexMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 0}};
        c.blocks.a = ComplexMatrix{{1, 0, -1}, {0, 0, 1}, {0, 2, 0}};
        c.checks.push_back({"putnam-classic",
                            {{"n_normal", false},
                             {"m_normal", false},
                             {"an_eq_ma", true},
                             {"an*_eq_m*a", false}}});
        c.checks.push_back({"putnam-mp",
                            {{"t_ep", true},
                             {"s_ep", true},
                             {"at_eq_sa", true},
                             {"at+_eq_s+a", true}}});
        c.checks.push_back({"putnam-star",
                            {{"t_ep", true},
                             {"s_ep", true},
                             {"at_eq_sa", true},
                             {"at*t_eq_s*sa", false},
                             {"at*_eq_s*a", false}}});
        c.checks.push_back({"putnam-mp-star",
                            {{"t_ep", true},
                             {"s_ep", true},
                             {"at_eq_sa", true},
                             {"at+t*_eq_s+s*a", false},
                             {"at*_eq_s*a", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "putnam-mp-needs-both-ep";
        c.source = "EP T(x) = (x1+x3, 0, x3, x4, ...) against non-EP S(x) = (x1+x2, 0, 0, x4, "
                   "...), A(x) = (x2+2x3, -x2, -x2, x4, ...); AT = SA but A T^+ != S^+ A";
        c.block_dim = 3;
        c.blocks.t = ComplexMatrix{{1, 0, 1}, {0, 0, 0}, {0, 0, 1}};
        c.blocks.s = ComplexMatrix{{1, 1, 0}, {0, 0, 0}, {0, 0, 0}};
        c.blocks.a = ComplexMatrix{{0, 1, 2}, {0, -1, 0}, {0, -1, 0}};
        c.checks.push_back({"putnam-mp",
                            {{"t_ep", true},
                             {"s_ep", false},
                             {"at_eq_sa", true},
                             {"at+_eq_s+a", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "squares-needs-ep";
        c.source = "row swap A, B = I, T(x) = (x1+x2, -x1-x2, x3, ...), S = -T; AT = SB and "
                   "AT^2 = S^2B = 0 yet A T^+ != S^+ B because neither T nor S is EP";
        c.block_dim = 2;
        c.blocks.a = ComplexMatrix{{0, 1}, {1, 0}};
        c.blocks.b = ComplexMatrix::identity(2);
        c.blocks.t = ComplexMatrix{{1, 1}, {-1, -1}};
        c.blocks.s = ComplexMatrix{{-1, -1}, {1, 1}};
        c.checks.push_back({"squares",
                            {{"t_ep", false},
                             {"s_ep", false},
                             {"at_eq_sb", true},
                             {"at2_eq_s2b", true},
                             {"at+_eq_s+b", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "squares-needs-second-condition";
        c.source = "EP pair T(x) = (x1-x2, x1+x3, 2x1-x2+x3, x4, ...), S(x) = (x1+x2, x2, x3, "
                   "...) with A(x) = (x1+2x2-x3, -x1-x2+x3, 2x1+2x2-2x3, x4, ...) and B(x) = "
                   "(x1+x3, 0, x1+x2, x4, ...). Direct evaluation gives (AT)x = (x1+x3, 0, 0) "
                   "while (SB)x = (x1+x3, 0, x1+x2), so AT = SB fails on the third coordinate "
                   "despite the published claim; AT^2 != S^2B and A T^+ != S^+ B as published";
        c.block_dim = 3;
        c.blocks.t = ComplexMatrix{{1, -1, 0}, {1, 0, 1}, {2, -1, 1}};
        c.blocks.s = ComplexMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
        c.blocks.a = ComplexMatrix{{1, 2, -1}, {-1, -1, 1}, {2, 2, -2}};
        c.blocks.b = ComplexMatrix{{1, 0, 1}, {0, 0, 0}, {1, 1, 0}};
        c.checks.push_back({"squares",
                            {{"t_ep", true},
                             {"s_ep", true},
                             {"at_eq_sb", false},
                             {"at2_eq_s2b", false},
                             {"at+_eq_s+b", false}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "product-not-ep";
        c.source = "S(x) = (x1+x2, x1+x2, x3, ...), T(x) = (0, x2, x3, ...); both EP but ST is "
                   "not, and the range/kernel factorization conditions fail with it";
        c.block_dim = 2;
        c.blocks.s = ComplexMatrix{{1, 1}, {1, 1}};
        c.blocks.t = ComplexMatrix{{0, 0}, {0, 1}};
        c.checks.push_back({"product-ep",
                            {{"s_ep", true},
                             {"t_ep", true},
                             {"st_ep", false},
                             {"ts_ep", false},
                             {"range_st_eq_range_s_cap_range_t", false},
                             {"null_st_eq_null_s_plus_null_t", false},
                             {"range_kernel_criterion_consistent", true},
                             {"commutation_criterion_consistent", true}}});
        cases.push_back(std::move(c));
    }
    {
        CounterexampleCase c;
        c.case_id = "product-ep-asymmetry";
        c.source = "S(x) = (x1+x2, x2, x3, ...), T(x) = (x1, 0, x3, ...); ST is EP while TS is "
                   "not";
        c.block_dim = 2;
        c.blocks.s = ComplexMatrix{{1, 1}, {0, 1}};
        c.blocks.t = ComplexMatrix{{1, 0}, {0, 0}};
        c.checks.push_back({"product-ep",
                            {{"s_ep", true},
                             {"t_ep", true},
                             {"st_ep", true},
                             {"ts_ep", false},
                             {"range_kernel_criterion_consistent", true},
                             {"commutation_criterion_consistent", true}}});
        cases.push_back(std::move(c));
    }
    return cases;
}

struct CheckResult {
    std::string rule;
    TheoremVerdict verdict;
    std::vector<std::string> mismatches;  // "condition: expected X, got Y"
    bool ok = true;
};

struct CaseResult {
    std::string case_id;
    bool ok = true;
    std::vector<CheckResult> checks;
};

struct CatalogReport {
    std::vector<CaseResult> cases;
    bool all_ok = true;
};

namespace detail {

inline TheoremVerdict run_check_ep_case(const CounterexampleCase& c, const Tolerance& tol) {
    const ComplexMatrix& t = *c.blocks.t;
    const EPReport r = is_ep(t, tol);
    TheoremVerdict v;
    v.theorem_id = "check-ep";
    v.conclusions.push_back({"is_ep", r.verdict, r.residuals[1]});
    v.conclusions.push_back({"is_normal", is_normal(t, tol), normality_residual(t)});
    v.consistent = r.unanimous;
    return v;
}

inline TheoremVerdict run_construct_case(const CounterexampleCase& c, const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "construct";
    try {
        const ComplexMatrix t = ep_construct(*c.spec, *c.free_coords, tol);
        double max_abs = 0.0;
        if (c.expected_output) {
            for (std::size_t i = 0; i < t.rows(); ++i)
                for (std::size_t j = 0; j < t.cols(); ++j)
                    max_abs = std::max(max_abs, std::abs(t(i, j) - (*c.expected_output)(i, j)));
        }
        v.conclusions.push_back({"output_matches", c.expected_output && max_abs <= 1e-12, max_abs});
        const EPReport r = is_ep(t, tol);
        v.conclusions.push_back({"is_ep", r.verdict, r.residuals[1]});
        v.conclusions.push_back({"is_normal", is_normal(t, tol), normality_residual(t)});
        const Subspace target = from_constraint_form(*c.spec, tol);
        const Subspace range = from_columns(t, tol);
        v.conclusions.push_back(
            {"range_eq_target", subspaces_equal(range, target, tol), subspace_distance(range, target)});
        v.consistent = true;
    } catch (const internal_error&) {
        v.conclusions.push_back({"output_matches", false, 0.0});
        v.consistent = false;
    }
    return v;
}

}  // namespace detail

/// Runs every catalog case and compares each recorded expectation with the
/// computed condition. A missing condition name or a flipped boolean is a
/// mismatch; so is an inconsistent verdict.
inline CatalogReport run_catalog(const Tolerance& tol = {}) {
    CatalogReport report;
    for (const CounterexampleCase& c : catalog()) {
        CaseResult cr;
        cr.case_id = c.case_id;
        for (const CatalogCheck& check : c.checks) {
            CheckResult res;
            res.rule = check.rule;
            if (check.rule == "check-ep") {
                res.verdict = detail::run_check_ep_case(c, tol);
            } else if (check.rule == "construct") {
                res.verdict = detail::run_construct_case(c, tol);
            } else {
                res.verdict = run_rule(check.rule, c.blocks, tol);
            }
            for (const CatalogExpectation& e : check.expect) {
                const Condition* cond = res.verdict.find(e.condition);
                if (cond == nullptr) {
                    res.mismatches.push_back(e.condition + ": condition not reported");
                } else if (cond->holds != e.expected) {
                    res.mismatches.push_back(e.condition + ": expected " +
                                             (e.expected ? "true" : "false") + ", got " +
                                             (cond->holds ? "true" : "false"));
                }
            }
            if (!res.verdict.consistent) {
                res.mismatches.push_back("verdict not consistent with the cited statement");
            }
            res.ok = res.mismatches.empty();
            cr.ok = cr.ok && res.ok;
            cr.checks.push_back(std::move(res));
        }
        report.all_ok = report.all_ok && cr.ok;
        report.cases.push_back(std::move(cr));
    }
    return report;
}

}  // namespace eplab
