#pragma once

#include "cover/extclass.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cover {

/// Malformed document: missing keys, wrong types, wrong dimensions.
struct SchemaError : std::runtime_error {
    std::vector<std::string> issues;
    explicit SchemaError(std::vector<std::string> iss);
};

/// Structurally well-formed document violating a mathematical invariant.
struct SemanticError : std::runtime_error {
    std::vector<std::string> issues;
    explicit SemanticError(std::vector<std::string> iss);
};

/// A parsed and validated scenario: building data, Picard model, rho
/// image, cohomology model, and the optional fundamental-group section.
struct Scenario {
    BuildingData bd;
    PicardModel pic;
    RhoImage rho;
    CohomologyModel coh;
    std::optional<Int> pi1_cyclic;
    std::optional<IntMatrix> restriction;  // H2 ⊗ K -> K/nK, canonical coordinates
};

/// Parses and validates a scenario document. Throws SchemaError or
/// SemanticError with per-field issue lists.
Scenario parse_input(const std::string& document);
Scenario parse_input(const nlohmann::json& document);

struct Report {
    std::string human;
    std::string json;  // canonical machine output, format_version 1
    bool ok = true;    // command-level verdict (only `validate` can clear it)
};

/// Dispatches one CLI command on a parsed scenario.
/// cmd in {validate, kernel, gtilde, decompose, class, icf, realize}.
Report run_command(const std::string& cmd, const Scenario& scenario);

/// Runs the bundled corpus and the congruence-oracle suite; returns the
/// report and a pass/fail flag.
Report run_selftest();

/// Bundled scenario documents (also shipped under scenarios/).
const std::string& corpus_remark_case_a();
const std::string& corpus_remark_case_b();
const std::string& corpus_bidouble();

}  // namespace cover
