// Acceptance suite: every release gate in one binary, one line per
// criterion. Exit code 0 only if all gates hold.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "eplab/catalog.hpp"
#include "eplab/cli.hpp"
#include "eplab/ep.hpp"
#include "eplab/fuglede.hpp"
#include "eplab/property_suite.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/random_gen.hpp"
#include "eplab/subspace.hpp"

using namespace eplab;

namespace {

int failures = 0;

void report(int index, const std::string& label, bool ok, const std::string& detail = "") {
    std::printf("%-4s [%2d] %s%s%s\n", ok ? "PASS" : "FAIL", index, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double ms_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void criterion_1_pinv_ground_truth() {
    const ComplexMatrix t{{1, 1}, {2, 2}};
    const ComplexMatrix expected{{0.1, 0.2}, {0.1, 0.2}};
    pinv(t);  // warm-up outside the timed window
    const auto start = std::chrono::steady_clock::now();
    const ComplexMatrix via_svd = pinv(t);
    const double elapsed = ms_since(start);
    const ComplexMatrix via_rank1 = pinv_rank1(t);
    double max_svd = 0.0, max_rank1 = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            max_svd = std::max(max_svd, std::abs(via_svd(i, j) - expected(i, j)));
            max_rank1 = std::max(max_rank1, std::abs(via_rank1(i, j) - expected(i, j)));
        }
    }
    std::ostringstream detail;
    detail << "svd err " << max_svd << ", closed-form err " << max_rank1 << ", " << elapsed
           << " ms";
    report(1, "pinv ground truth (svd route and rank-1 closed form, < 1 ms)",
           max_svd <= 1e-12 && max_rank1 <= 1e-12 && elapsed < 1.0, detail.str());
}

void criterion_2_ep_block() {
    const ComplexMatrix t{{1, 1, 0}, {2, 1, 1}, {-1, 0, -1}};
    const EPReport r = is_ep(t);
    const bool all_five = r.char_ranges_equal && r.char_mp_commute && r.char_nullperp_is_range &&
                          r.char_null_equal && r.char_witness_bijective && r.unanimous;
    ComplexMatrix gen(3, 1);
    gen(0, 0) = 1.0;
    gen(1, 0) = -1.0;
    gen(2, 0) = -1.0;
    const Subspace line = from_columns(gen);
    const double null_dist = subspace_distance(nullspace(t), line);
    const double null_star_dist = subspace_distance(nullspace(adjoint(t)), line);
    std::ostringstream detail;
    detail << "kernel projector distances " << null_dist << ", " << null_star_dist;
    report(2, "3x3 EP block: five characterizations, non-normal, kernel = span{(1,-1,-1)}",
           all_five && !is_normal(t) && null_dist <= 1e-9 && null_star_dist <= 1e-9,
           detail.str());
}

void criterion_3_construction() {
    ConstraintSpec spec;
    spec.ambient_dim = 3;
    spec.free_indices = {0, 2};
    spec.constrained_indices = {1};
    spec.coefficients = {{Complex{1, 0}, Complex{1, 0}}};
    const ComplexMatrix x{{Complex{1, 0}, Complex{0, 1}}, {Complex{1, 0}, Complex{-1, 0}}};
    bool ok = false;
    std::string detail;
    try {
        const ComplexMatrix t = ep_construct(spec, x);
        const ComplexMatrix expected{{Complex{1, 0}, Complex{2, 0}, Complex{1, 0}},
                                     {Complex{1, 1}, Complex{1, 1}, Complex{0, 0}},
                                     {Complex{0, 1}, Complex{-1, 1}, Complex{-1, 0}}};
        double max_abs = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                max_abs = std::max(max_abs, std::abs(t(i, j) - expected(i, j)));
        const bool range_ok = subspaces_equal(from_columns(t), from_constraint_form(spec));
        ok = max_abs <= 1e-12 && is_ep(t).verdict && !is_normal(t) && range_ok;
        std::ostringstream d;
        d << "max entry error " << max_abs;
        detail = d.str();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(3, "range-prescribed construction reproduces the 3x3 target exactly", ok, detail);
}

void criterion_4_catalog() {
    const auto start = std::chrono::steady_clock::now();
    const CatalogReport report_data = run_catalog();
    const double elapsed = ms_since(start);

    // spot residuals demanded alongside the catalog booleans
    const ComplexMatrix t1{{1, -1, 0}, {1, 0, 1}, {2, -1, 1}};
    const ComplexMatrix a1{{0, 1, 0}, {-1, 1, -1}, {-2, 1, 0}};
    const bool ex1_comm = approx_eq(a1 * t1, t1 * a1);
    const double ex1_star = distance(a1 * adjoint(t1), adjoint(t1) * a1);
    const double ex1_mp = distance(a1 * pinv(t1), pinv(t1) * a1);

    const ComplexMatrix t2{{1, 0, 1}, {0, 0, 0}, {0, 0, 1}};
    const ComplexMatrix s2{{1, 1, 0}, {0, 1, 0}, {0, 0, 0}};
    const ComplexMatrix a2{{1, 0, -1}, {0, 0, 1}, {0, 2, 0}};
    const bool ex214_comm = approx_eq(a2 * t2, s2 * a2);
    const bool ex214_star = approx_eq(a2 * adjoint(t2), adjoint(s2) * a2);
    const double ex214_mp = distance(a2 * pinv(t2), pinv(s2) * a2);

    const ComplexMatrix t3{{1, 1}, {2, 2}};
    const double non_ep_mp = distance(t3 * pinv(t3), pinv(t3) * t3);

    const bool ok = report_data.all_ok && ex1_comm && ex1_star > 0.5 && ex1_mp <= 1e-9 &&
                    ex214_comm && !ex214_star && ex214_mp <= 1e-9 && non_ep_mp > 0.01 &&
                    elapsed < 1000.0;
    std::ostringstream detail;
    detail << report_data.cases.size() << " cases, " << elapsed << " ms";
    report(4, "counterexample catalog reproduces with the pinned residual margins", ok,
           detail.str());
}

void criterion_5_soundness() {
    SuiteConfig cfg;
    cfg.trials = 200;
    cfg.max_dim = 12;
    cfg.seed = 42;
    const auto start = std::chrono::steady_clock::now();
    const std::vector<SuiteResult> results = soundness_suites(cfg);
    const double elapsed = ms_since(start);
    int violations = 0;
    std::string first;
    for (const SuiteResult& r : results) {
        violations += r.violations;
        if (r.violations && first.empty()) first = r.name + ": " + r.note;
    }
    std::ostringstream detail;
    detail << results.size() << " theorems x 200 trials, " << violations << " violations, "
           << elapsed / 1000.0 << " s";
    if (!first.empty()) detail << " [" << first << "]";
    report(5, "soundness sweep: hypothesis-satisfying generators never break a conclusion",
           violations == 0 && elapsed < 30000.0, detail.str());
}

void criterion_6_consistency() {
    SuiteConfig cfg;
    cfg.trials = 200;
    cfg.max_dim = 12;
    cfg.seed = 42;
    const std::vector<SuiteResult> results = consistency_suites(cfg);
    int violations = 0;
    for (const SuiteResult& r : results) violations += r.violations;
    std::ostringstream detail;
    detail << results.size() << " checkers x 200 random trials, " << violations << " violations";
    report(6, "consistency sweep: no checker fabricates a theorem violation", violations == 0,
           detail.str());
}

void criterion_7_unanimity() {
    SuiteConfig cfg;
    cfg.trials = 500;
    cfg.max_dim = 16;
    cfg.seed = 42;
    const SuiteResult r = suite_characterization_unanimity(cfg);
    report(7, "500 mixed random matrices: the five EP characterizations never split",
           r.violations == 0, r.note);
}

void criterion_8_svd_quality() {
    SuiteConfig cfg;
    cfg.trials = 500;
    cfg.max_dim = 32;
    cfg.seed = 42;
    const SuiteResult r = suite_svd_quality(cfg);
    std::ostringstream detail;
    detail << "max reconstruction residual " << r.max_residual;
    report(8, "SVD gates on 500 random matrices up to 32x32", r.violations == 0, detail.str());
}

void criterion_9_rank1_remarks() {
    SuiteConfig cfg;
    cfg.trials = 200;
    cfg.max_dim = 12;
    cfg.seed = 42;
    const SuiteResult complex_case = suite_rank1_complex_normal(cfg);
    const SuiteResult real_case = suite_rank1_real_symmetric(cfg);
    std::ostringstream detail;
    detail << "normality residual " << complex_case.max_residual << ", symmetry residual "
           << real_case.max_residual;
    report(9, "rank-1 EP implications: complex => normal, real => symmetric",
           complex_case.violations == 0 && real_case.violations == 0, detail.str());
}

void criterion_10_determinism() {
    const std::vector<std::string> args = {"random-suite", "--trials", "200",
                                           "--seed", "42", "--json"};
    std::ostringstream out1, err1, out2, err2;
    const int code1 = run_cli(args, out1, err1);
    const int code2 = run_cli(args, out2, err2);
    const bool ok = code1 == 0 && code2 == 0 && out1.str() == out2.str() && !out1.str().empty();
    std::ostringstream detail;
    detail << out1.str().size() << " bytes per report";
    report(10, "random-suite --trials 200 --seed 42 twice gives byte-identical JSON", ok,
           detail.str());
}

}  // namespace

int main() {
    criterion_1_pinv_ground_truth();
    criterion_2_ep_block();
    criterion_3_construction();
    criterion_4_catalog();
    criterion_5_soundness();
    criterion_6_consistency();
    criterion_7_unanimity();
    criterion_8_svd_quality();
    criterion_9_rank1_remarks();
    criterion_10_determinism();
    std::printf("%s: %d/10 criteria pass\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                10 - failures);
    return failures == 0 ? 0 : 1;
}
