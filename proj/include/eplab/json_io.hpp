#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eplab/catalog.hpp"
#include "eplab/complex_matrix.hpp"
#include "eplab/ep.hpp"
#include "eplab/fuglede.hpp"
#include "eplab/property_suite.hpp"
#include "eplab/pseudoinverse.hpp"
#include "eplab/subspace.hpp"

namespace eplab {

using nlohmann::json;

/// Matrix document format: {"rows": R, "cols": C, "data": [[[re, im], ...], ...]}
/// with one inner array per row and one [re, im] pair per entry.
inline ComplexMatrix matrix_from_json(const json& doc) {
    try {
        const auto rows = doc.at("rows").get<std::size_t>();
        const auto cols = doc.at("cols").get<std::size_t>();
        const json& data = doc.at("data");
        if (!data.is_array() || data.size() != rows) {
            throw parse_error("data must hold exactly 'rows' rows");
        }
        std::vector<Complex> entries;
        entries.reserve(rows * cols);
        for (const json& row : data) {
            if (!row.is_array() || row.size() != cols) {
                throw parse_error("each row must hold exactly 'cols' entries");
            }
            for (const json& entry : row) {
                if (!entry.is_array() || entry.size() != 2) {
                    throw parse_error("entries must be [re, im] pairs");
                }
                entries.emplace_back(entry[0].get<double>(), entry[1].get<double>());
            }
        }
        return ComplexMatrix(rows, cols, std::move(entries));
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed matrix document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("malformed matrix document: ") + e.what());
    }
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        data.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error("cannot parse '" + path + "': " + e.what());
    }
}

inline ComplexMatrix load_matrix(const std::string& path) {
    return matrix_from_json(parse_json_file(path));
}

inline void save_matrix(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write '" + path + "'");
    out << matrix_to_json(m).dump(2) << "\n";
}

struct ConstructInput {
    ConstraintSpec spec;
    ComplexMatrix free_coords;
};

/// Constraint-spec document: ambient_dim, free_indices and
/// constrained_indices (1-based), coefficients keyed by the 1-based
/// constrained index, basis_free_coords as a d x d matrix document.
inline ConstructInput construct_input_from_json(const json& doc) {
    try {
        ConstructInput input;
        input.spec.ambient_dim = doc.at("ambient_dim").get<std::size_t>();
        for (const json& idx : doc.at("free_indices")) {
            const auto v = idx.get<std::size_t>();
            if (v == 0) throw parse_error("indices are 1-based");
            input.spec.free_indices.push_back(v - 1);
        }
        for (const json& idx : doc.at("constrained_indices")) {
            const auto v = idx.get<std::size_t>();
            if (v == 0) throw parse_error("indices are 1-based");
            input.spec.constrained_indices.push_back(v - 1);
        }
        const json& coeffs = doc.at("coefficients");
        for (std::size_t c : input.spec.constrained_indices) {
            const std::string key = std::to_string(c + 1);
            if (!coeffs.contains(key)) {
                throw parse_error("missing coefficients for constrained index " + key);
            }
            std::vector<Complex> vec;
            for (const json& entry : coeffs.at(key)) {
                if (!entry.is_array() || entry.size() != 2) {
                    throw parse_error("coefficient entries must be [re, im] pairs");
                }
                vec.emplace_back(entry[0].get<double>(), entry[1].get<double>());
            }
            input.spec.coefficients.push_back(std::move(vec));
        }
        input.free_coords = matrix_from_json(doc.at("basis_free_coords"));
        input.spec.validate();
        return input;
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed constraint spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("malformed constraint spec: ") + e.what());
    }
}

inline ConstructInput load_construct_input(const std::string& path) {
    return construct_input_from_json(parse_json_file(path));
}

inline json condition_to_json(const Condition& c) {
    return json{{"name", c.name}, {"holds", c.holds}, {"residual", c.residual}};
}

inline json verdict_to_json(const TheoremVerdict& v) {
    json hyp = json::array();
    for (const Condition& c : v.hypotheses) hyp.push_back(condition_to_json(c));
    json concl = json::array();
    for (const Condition& c : v.conclusions) concl.push_back(condition_to_json(c));
    json j{{"theorem_id", v.theorem_id},
           {"hypotheses", std::move(hyp)},
           {"conclusions", std::move(concl)},
           {"consistent", v.consistent}};
    if (!v.observations.empty()) {
        json obs = json::array();
        for (const Condition& c : v.observations) obs.push_back(condition_to_json(c));
        j["observations"] = std::move(obs);
    }
    return j;
}

inline json ep_report_to_json(const EPReport& r) {
    const char* names[5] = {"ranges_equal", "mp_commute", "nullperp_is_range", "null_equal",
                            "witness_bijective"};
    const auto flags = r.flags();
    json chars = json::object();
    for (int i = 0; i < 5; ++i) {
        chars[names[i]] = json{{"holds", flags[i]}, {"residual", r.residuals[i]}};
    }
    return json{{"characterizations", std::move(chars)},
                {"verdict", r.verdict},
                {"unanimous", r.unanimous}};
}

inline json penrose_to_json(const PenroseReport& r) {
    return json{{"eq1", json{{"holds", r.eq1_holds}, {"residual", r.residuals[0]}}},
                {"eq2", json{{"holds", r.eq2_holds}, {"residual", r.residuals[1]}}},
                {"eq3", json{{"holds", r.eq3_holds}, {"residual", r.residuals[2]}}},
                {"eq4", json{{"holds", r.eq4_holds}, {"residual", r.residuals[3]}}},
                {"all_hold", r.all_hold()}};
}

inline json catalog_report_to_json(const CatalogReport& report) {
    json cases = json::array();
    for (const CaseResult& c : report.cases) {
        json checks = json::array();
        for (const CheckResult& ch : c.checks) {
            checks.push_back(json{{"rule", ch.rule},
                                  {"ok", ch.ok},
                                  {"mismatches", ch.mismatches},
                                  {"verdict", verdict_to_json(ch.verdict)}});
        }
        cases.push_back(json{{"case_id", c.case_id}, {"ok", c.ok}, {"checks", std::move(checks)}});
    }
    return json{{"cases", std::move(cases)}, {"all_ok", report.all_ok}};
}

inline json suite_results_to_json(const std::vector<SuiteResult>& results) {
    json suites = json::array();
    bool pass = true;
    for (const SuiteResult& r : results) {
        pass = pass && r.passed();
        suites.push_back(json{{"name", r.name},
                              {"trials", r.trials},
                              {"violations", r.violations},
                              {"max_residual", r.max_residual},
                              {"note", r.note}});
    }
    return json{{"suites", std::move(suites)}, {"overall_pass", pass}};
}

}  // namespace eplab
