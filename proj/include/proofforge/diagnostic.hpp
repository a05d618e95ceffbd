#pragma once

#include <string>
#include <vector>

namespace proofforge {

enum class diagnostic_kind {
    syntax_error,
    resolution_error,
    assertion_failure,
    invariant_on_entry,
    invariant_maintenance,
    postcondition_failure,
    precondition_call_failure,
    timeout,
    unknown,
};

[[nodiscard]] std::string to_string(diagnostic_kind kind);
[[nodiscard]] diagnostic_kind diagnostic_kind_from_string(const std::string& name);

// One classified verifier finding. line/column are -1 when the verifier
// did not report a location (timeouts, whole-run errors). `message` is the
// verbatim verifier text for that finding.
struct diagnostic {
    diagnostic_kind kind = diagnostic_kind::unknown;
    std::string file;
    int line = -1;
    int column = -1;
    std::string message;
};

enum class verifier_status { verified, failed, timeout, crash_or_unusable };

[[nodiscard]] std::string to_string(verifier_status status);

struct verifier_report {
    verifier_status status = verifier_status::crash_or_unusable;
    std::vector<diagnostic> diagnostics;
    double wall_time_seconds = 0.0;
    std::string raw_output;

    [[nodiscard]] bool verified() const { return status == verifier_status::verified; }

    [[nodiscard]] std::vector<diagnostic> diagnostics_of(diagnostic_kind kind) const;
};

} // namespace proofforge
