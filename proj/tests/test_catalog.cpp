#include <catch2/catch_amalgamated.hpp>

#include "eplab/catalog.hpp"

using namespace eplab;

TEST_CASE("catalog enumerates eleven cases") {
    const auto cases = catalog();
    CHECK(cases.size() == 11);
    for (const CounterexampleCase& c : cases) {
        INFO(c.case_id);
        CHECK_FALSE(c.case_id.empty());
        CHECK_FALSE(c.source.empty());
        CHECK(c.block_dim >= 2);
        CHECK_FALSE(c.checks.empty());
        for (const CatalogCheck& check : c.checks) CHECK_FALSE(check.expect.empty());
    }
}

TEST_CASE("every case reproduces at the default tolerance") {
    const CatalogReport report = run_catalog();
    CHECK(report.cases.size() == 11);
    for (const CaseResult& c : report.cases) {
        INFO(c.case_id);
        CHECK(c.ok);
        for (const CheckResult& ch : c.checks) {
            INFO(ch.rule);
            for (const std::string& m : ch.mismatches) INFO(m);
            CHECK(ch.ok);
            CHECK(ch.verdict.consistent);
        }
    }
    CHECK(report.all_ok);
}

TEST_CASE("every case still reproduces with eq_tol tightened to 1e-14") {
    // all catalog arithmetic is exact small integers, so the margin is wide
    const CatalogReport report = run_catalog(Tolerance{1e-14, 0.0});
    CHECK(report.all_ok);
}

TEST_CASE("an absurd tolerance is detected and named") {
    // at eq_tol = 100 the expected-false equalities flip to true, so the
    // report must name the offending cases and fields instead of passing
    const CatalogReport report = run_catalog(Tolerance{100.0, 0.0});
    CHECK_FALSE(report.all_ok);
    bool found_named_mismatch = false;
    for (const CaseResult& c : report.cases) {
        for (const CheckResult& ch : c.checks) {
            for (const std::string& m : ch.mismatches) {
                if (!c.case_id.empty() && !m.empty()) found_named_mismatch = true;
            }
        }
    }
    CHECK(found_named_mismatch);
}

TEST_CASE("run_rule rejects unknown rules and missing operands") {
    CHECK_THROWS_AS(run_rule("no-such-rule", OperandSet{}), std::invalid_argument);
    CHECK_THROWS_AS(run_rule("fuglede-mp", OperandSet{}), std::invalid_argument);
    OperandSet ops;
    ops.a = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(run_rule("fuglede-mp", ops), std::invalid_argument);
    ops.t = ComplexMatrix::identity(2);
    CHECK_NOTHROW(run_rule("fuglede-mp", ops));
}
