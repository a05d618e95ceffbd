#include "proofforge/diagnostic.hpp"

#include "proofforge/errors.hpp"

namespace proofforge {

std::string to_string(diagnostic_kind kind) {
    switch (kind) {
        case diagnostic_kind::syntax_error: return "SyntaxError";
        case diagnostic_kind::resolution_error: return "ResolutionError";
        case diagnostic_kind::assertion_failure: return "AssertionFailure";
        case diagnostic_kind::invariant_on_entry: return "InvariantOnEntry";
        case diagnostic_kind::invariant_maintenance: return "InvariantMaintenance";
        case diagnostic_kind::postcondition_failure: return "PostconditionFailure";
        case diagnostic_kind::precondition_call_failure: return "PreconditionCallFailure";
        case diagnostic_kind::timeout: return "Timeout";
        case diagnostic_kind::unknown: return "Unknown";
    }
    return "Unknown";
}

diagnostic_kind diagnostic_kind_from_string(const std::string& name) {
    if (name == "SyntaxError") return diagnostic_kind::syntax_error;
    if (name == "ResolutionError") return diagnostic_kind::resolution_error;
    if (name == "AssertionFailure") return diagnostic_kind::assertion_failure;
    if (name == "InvariantOnEntry") return diagnostic_kind::invariant_on_entry;
    if (name == "InvariantMaintenance") return diagnostic_kind::invariant_maintenance;
    if (name == "PostconditionFailure") return diagnostic_kind::postcondition_failure;
    if (name == "PreconditionCallFailure") return diagnostic_kind::precondition_call_failure;
    if (name == "Timeout") return diagnostic_kind::timeout;
    if (name == "Unknown") return diagnostic_kind::unknown;
    throw usage_error("unknown diagnostic kind: " + name);
}

std::string to_string(verifier_status status) {
    switch (status) {
        case verifier_status::verified: return "Verified";
        case verifier_status::failed: return "Failed";
        case verifier_status::timeout: return "Timeout";
        case verifier_status::crash_or_unusable: return "CrashOrUnusable";
    }
    return "CrashOrUnusable";
}

std::vector<diagnostic> verifier_report::diagnostics_of(diagnostic_kind kind) const {
    std::vector<diagnostic> matching;
    for (const auto& diag : diagnostics) {
        if (diag.kind == kind) matching.push_back(diag);
    }
    return matching;
}

} // namespace proofforge
