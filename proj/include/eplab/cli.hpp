#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eplab/catalog.hpp"
#include "eplab/complex_matrix.hpp"
#include "eplab/ep.hpp"
#include "eplab/fuglede.hpp"
#include "eplab/json_io.hpp"
#include "eplab/property_suite.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/version.hpp"

namespace eplab {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitPass = 0,
    kExitCatalogMismatch = 1,
    kExitIoError = 2,
    kExitPredicateNegative = 3,
    kExitInternalError = 4,
    kExitTheoremViolation = 5,
};

namespace cli_detail {

inline std::string format_residual(double r) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << r;
    return os.str();
}

inline void render_conditions(std::ostream& out, const std::string& heading,
                              const std::vector<Condition>& conditions) {
    if (conditions.empty()) return;
    out << heading << ":\n";
    for (const Condition& c : conditions) {
        out << "  " << std::left << std::setw(34) << c.name << (c.holds ? "yes" : "no ") << "  "
            << format_residual(c.residual) << "\n";
    }
}

inline void render_verdict(std::ostream& out, const TheoremVerdict& v, double eq_tol) {
    out << "rule: " << v.theorem_id << "   (eq_tol " << format_residual(eq_tol) << ")\n";
    render_conditions(out, "hypotheses", v.hypotheses);
    render_conditions(out, "conclusions", v.conclusions);
    render_conditions(out, "observations", v.observations);
    out << "consistent: " << (v.consistent ? "yes" : "no") << "\n";
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("EPLAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw std::invalid_argument("EPLAB_SEED must be an unsigned integer");
        }
        return static_cast<std::uint64_t>(v);
    }
    return 42;
}

inline void emit_matrix(const ComplexMatrix& m, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << matrix_to_json(m).dump(2) << "\n";
    } else {
        save_matrix(out_path, m);
    }
}

inline int cmd_verify_paper(const Tolerance& tol, bool as_json, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const CatalogReport report = run_catalog(tol);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (as_json) {
        json j = catalog_report_to_json(report);
        j["version"] = kVersion;
        j["tolerance"] = json{{"eq_tol", tol.eq_tol}};
        j["elapsed_ms"] = elapsed_ms;
        out << j.dump(2) << "\n";
    } else {
        int passed = 0;
        for (const CaseResult& c : report.cases) {
            out << std::left << std::setw(36) << c.case_id << (c.ok ? "PASS" : "FAIL") << "\n";
            if (c.ok) ++passed;
            for (const CheckResult& ch : c.checks) {
                for (const std::string& msg : ch.mismatches) {
                    out << "    [" << ch.rule << "] " << msg << "\n";
                }
            }
        }
        out << passed << "/" << report.cases.size() << " cases pass  ("
            << format_residual(elapsed_ms) << " ms)\n";
    }
    return report.all_ok ? kExitPass : kExitCatalogMismatch;
}

inline int cmd_check_ep(const std::string& file, const Tolerance& tol, bool as_json,
                        std::ostream& out) {
    const ComplexMatrix t = load_matrix(file);
    const EPReport report = is_ep(t, tol);
    const bool normal = is_normal(t, tol);
    if (as_json) {
        json j = ep_report_to_json(report);
        j["is_normal"] = normal;
        out << j.dump(2) << "\n";
    } else {
        const char* names[5] = {"ranges_equal", "mp_commute", "nullperp_is_range", "null_equal",
                                "witness_bijective"};
        const auto flags = report.flags();
        for (int i = 0; i < 5; ++i) {
            out << "  " << std::left << std::setw(32) << names[i] << (flags[i] ? "yes" : "no ")
                << "  " << format_residual(report.residuals[i]) << "\n";
        }
        out << "EP: " << (report.verdict ? "yes" : "no") << ", normal: " << (normal ? "yes" : "no")
            << "\n";
    }
    if (!report.unanimous) return kExitInternalError;
    return report.verdict ? kExitPass : kExitPredicateNegative;
}

inline int cmd_pinv(const std::string& file, const Tolerance& tol, bool verify, bool as_json,
                    const std::string& out_path, std::ostream& out, std::ostream& err) {
    const ComplexMatrix t = load_matrix(file);
    const ComplexMatrix g = pinv(t, tol);
    emit_matrix(g, out_path, out);
    if (verify) {
        const PenroseReport report = penrose_check(t, g, tol);
        if (as_json) {
            err << penrose_to_json(report).dump(2) << "\n";
        } else {
            const char* names[4] = {"TGT=T", "GTG=G", "(TG)*=TG", "(GT)*=GT"};
            const bool holds[4] = {report.eq1_holds, report.eq2_holds, report.eq3_holds,
                                   report.eq4_holds};
            for (int i = 0; i < 4; ++i) {
                err << "  " << std::left << std::setw(12) << names[i]
                    << (holds[i] ? "yes" : "no ") << "  " << format_residual(report.residuals[i])
                    << "\n";
            }
        }
        if (!report.all_hold()) return kExitInternalError;
    }
    return kExitPass;
}

inline int cmd_construct(const std::string& file, const Tolerance& tol, bool check_only,
                         const std::string& out_path, std::ostream& out, std::ostream& err) {
    const ConstructInput input = load_construct_input(file);
    const ComplexMatrix t = ep_construct(input.spec, input.free_coords, tol);
    if (!check_only) {
        emit_matrix(t, out_path, out);
    } else {
        err << "constructed " << t.shape_string()
            << " matrix: EP, range matches the requested subspace\n";
    }
    return kExitPass;
}

inline int cmd_fuglede(const std::string& rule, const OperandSet& ops, const Tolerance& tol,
                       bool as_json, std::ostream& out) {
    const TheoremVerdict v = run_rule(rule, ops, tol);
    if (as_json) {
        out << verdict_to_json(v).dump(2) << "\n";
    } else {
        render_verdict(out, v, tol.eq_tol);
        const Condition* st_ep = v.find("st_ep");
        const Condition* ts_ep = v.find("ts_ep");
        if (st_ep && ts_ep) {
            out << "ST EP: " << (st_ep->holds ? "yes" : "no") << ", TS EP: "
                << (ts_ep->holds ? "yes" : "no") << "\n";
        }
    }
    return v.consistent ? kExitPass : kExitTheoremViolation;
}

inline int cmd_random_suite(const SuiteConfig& cfg, bool as_json, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<SuiteResult> results = run_property_suites(cfg);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    int violations = 0;
    for (const SuiteResult& r : results) violations += r.violations;
    if (as_json) {
        // deliberately no timing field: identical flags must give identical bytes
        json j = suite_results_to_json(results);
        j["version"] = kVersion;
        j["tolerance"] = json{{"eq_tol", cfg.tol.eq_tol}};
        j["seed"] = cfg.seed;
        j["trials"] = cfg.trials;
        j["max_dim"] = cfg.max_dim;
        out << j.dump(2) << "\n";
    } else {
        for (const SuiteResult& r : results) {
            out << std::left << std::setw(36) << r.name << std::right << std::setw(6) << r.trials
                << " trials  " << std::setw(3) << r.violations << " violations  max residual "
                << format_residual(r.max_residual);
            if (!r.note.empty()) out << "  (" << r.note << ")";
            out << "\n";
        }
        out << results.size() << " suites, " << violations << " total violations  ("
            << format_residual(elapsed_ms) << " ms)\n";
    }
    return violations == 0 ? kExitPass : kExitTheoremViolation;
}

}  // namespace cli_detail

/// Full command-line front end; returns the process exit code. Arguments
/// exclude the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"EP-operator laboratory: Moore-Penrose pseudoinverses, EP checks, and "
                 "commutativity-theorem verification"};
    app.set_version_flag("--version", kVersion);

    double eq_tol = 1e-9;
    bool as_json = false;
    std::string out_path;
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--eq-tol", eq_tol, "matrix equality tolerance")->check(CLI::PositiveNumber);
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");
    app.add_option("--out", out_path, "write the result matrix to this file");
    app.add_option("--seed", seed_flag, "random seed (defaults to EPLAB_SEED or 42)");

    auto* verify = app.add_subcommand("verify-paper", "run the built-in counterexample catalog");
    verify->fallthrough();

    auto* check = app.add_subcommand("check-ep", "evaluate the five EP characterizations");
    check->fallthrough();
    std::string check_file;
    check->add_option("matrix", check_file, "matrix document (JSON)")->required();

    auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose inverse of a matrix document");
    pinv_cmd->fallthrough();
    std::string pinv_file;
    bool pinv_verify = false;
    pinv_cmd->add_option("matrix", pinv_file, "matrix document (JSON)")->required();
    pinv_cmd->add_flag("--verify", pinv_verify, "also report the four defining equations");

    auto* construct = app.add_subcommand("construct", "EP matrix with prescribed range");
    construct->fallthrough();
    std::string construct_file;
    bool check_only = false;
    construct->add_option("spec", construct_file, "constraint-spec document (JSON)")->required();
    construct->add_flag("--check-only", check_only, "verify the construction, emit nothing");

    auto* fuglede = app.add_subcommand("fuglede", "run one commutativity-theorem checker");
    fuglede->fallthrough();
    std::string rule;
    std::string file_a, file_b, file_t, file_s;
    fuglede->add_option("--rule", rule, "checker id")
        ->required()
        ->check(CLI::IsMember(rule_names()));
    fuglede->add_option("--A", file_a, "operand A (matrix document)");
    fuglede->add_option("--B", file_b, "operand B (matrix document)");
    fuglede->add_option("--T", file_t, "operand T (matrix document)");
    fuglede->add_option("--S", file_s, "operand S (matrix document)");

    auto* random_suite = app.add_subcommand("random-suite", "seeded property sweeps");
    random_suite->fallthrough();
    int trials = 200;
    int max_dim = 12;
    random_suite->add_option("--trials", trials, "trials per suite")
        ->check(CLI::Range(1, 1000000));
    random_suite->add_option("--max-dim", max_dim, "largest matrix order")
        ->check(CLI::Range(2, 64));

    app.require_subcommand(1);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    }

    try {
        const Tolerance tol{eq_tol, 0.0};
        if (verify->parsed()) {
            return cli_detail::cmd_verify_paper(tol, as_json, out);
        }
        if (check->parsed()) {
            return cli_detail::cmd_check_ep(check_file, tol, as_json, out);
        }
        if (pinv_cmd->parsed()) {
            return cli_detail::cmd_pinv(pinv_file, tol, pinv_verify, as_json, out_path, out, err);
        }
        if (construct->parsed()) {
            return cli_detail::cmd_construct(construct_file, tol, check_only, out_path, out, err);
        }
        if (fuglede->parsed()) {
            OperandSet ops;
            if (!file_a.empty()) ops.a = load_matrix(file_a);
            if (!file_b.empty()) ops.b = load_matrix(file_b);
            if (!file_t.empty()) ops.t = load_matrix(file_t);
            if (!file_s.empty()) ops.s = load_matrix(file_s);
            return cli_detail::cmd_fuglede(rule, ops, tol, as_json, out);
        }
        if (random_suite->parsed()) {
            SuiteConfig cfg;
            cfg.trials = trials;
            cfg.max_dim = max_dim;
            cfg.seed = seed_flag ? *seed_flag : cli_detail::default_seed();
            cfg.tol = tol;
            return cli_detail::cmd_random_suite(cfg, as_json, out);
        }
        err << "error: no subcommand selected\n";
        return kExitIoError;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    }
}

}  // namespace eplab
