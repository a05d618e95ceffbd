#pragma once

#include "proofforge/config.hpp"
#include "proofforge/llm.hpp"
#include "proofforge/plan.hpp"
#include "proofforge/verifier.hpp"

#include <string>
#include <variant>
#include <vector>

namespace proofforge::refactor {

// Removes every proof-only construct while preserving signatures,
// contracts, spec functions, and executable statements: invariant
// clauses, assert statements, lemma declarations and their bare call
// statements, and decreases hints on loops and methods. Idempotent.
// Throws parse_error on input that does not scan.
[[nodiscard]] std::string strip_annotations(const std::string& program_text);

struct rejection {
    std::string reason;
};

using consistency_result = std::variant<decomposition_plan, rejection>;

// Builds a plan from LLM-proposed decomposed code. Validates mechanically:
// candidate scans, outer method keeps the original signature and contract
// verbatim, every lifted method contains at most one loop, and parameter
// flow obeys the strategy. Retries generation up to t times on violations.
// Throws error on t exhausted.
[[nodiscard]] decomposition_plan decompose_code(const std::string& program_text,
                                                const std::string& method_name,
                                                sharing_strategy strategy, llm::gateway& llm,
                                                const run_config& config);

// Mechanical syntax/resolution gate first (one verifier run), then the
// LLM consistency verdict. A rejection carries the stated reason.
[[nodiscard]] consistency_result check_decomposition_consistency(const decomposition_plan& plan,
                                                                 llm::gateway& llm,
                                                                 verifier::client& verify,
                                                                 const run_config& config);

// decompose_code + consistency gate with regeneration, up to t rounds.
// Throws error when every round is rejected (callers fall back to the
// original shape).
[[nodiscard]] decomposition_plan plan_decomposition(const std::string& program_text,
                                                    const std::string& method_name,
                                                    sharing_strategy strategy, llm::gateway& llm,
                                                    verifier::client& verify,
                                                    const run_config& config);

struct restore_result {
    std::string program_text; // restored single-method program, or the modular form
    bool restored = false;    // false: restoration incomplete, modular artifact returned
    mapping_report report;
};

// Merges verified sub-methods back into the original structure. The
// output must keep the original executable statements token-for-token
// (annotations aside), carry the migrated proof, and pass the verifier.
// Identity when the plan never lifted anything. After t failed feedback
// rounds returns the verified modular form with restored=false.
[[nodiscard]] restore_result restore_code(const std::string& original_program,
                                          const std::string& verified_program,
                                          const decomposition_plan& plan, llm::gateway& llm,
                                          verifier::client& verify, const run_config& config);

} // namespace proofforge::refactor
