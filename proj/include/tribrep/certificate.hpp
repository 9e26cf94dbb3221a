#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tribrep/equation.hpp"

namespace tribrep {

struct PipelineConfig {
    unsigned precision = 200;  // decimal digits, >= 50
    unsigned jobs = 1;
    std::optional<unsigned long> nmax_override;  // widen the search only
    std::string out_dir = "certificates";
    bool write_file = true;
};

struct PipelineResult {
    EquationId eq = EquationId::Eq1;
    bool expected_outcome = false;  // empty search for the four equations,
                                    // exactly (8,1,2,4) for bgl
    unsigned long n_max = 0;        // n range actually searched
    std::string certificate_json;   // canonical serialization, sorted keys
    std::string certificate_path;   // empty when write_file is false
    std::string summary;            // one line for the run table
};

// Full chain for one equation: constants -> caps/tables -> Matveev
// bound -> two-stage reduction -> exhaustive search, emitted as one
// JSON certificate.  bgl runs constants + search only.
PipelineResult run_pipeline(EquationId eq, const PipelineConfig& config);

struct RunAllResult {
    std::vector<PipelineResult> results;
    bool all_expected = false;
    std::string table;  // printable per-equation summary
};

RunAllResult run_all(const PipelineConfig& config);

} // namespace tribrep
