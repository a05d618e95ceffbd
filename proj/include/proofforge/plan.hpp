#pragma once

#include "proofforge/signature.hpp"

#include <string>
#include <vector>

namespace proofforge {

// Half-open character span into a source text, with the original text
// kept so restoration can be checked without re-reading files.
struct source_span {
    int start_line = 0;
    int start_column = 0;
    int end_line = 0;
    int end_column = 0;
    std::size_t begin_offset = 0;
    std::size_t end_offset = 0;
    std::string original_text;
};

enum class sharing_strategy { full_sharing, decoupled, fully_decoupled };

[[nodiscard]] std::string to_string(sharing_strategy strategy);
[[nodiscard]] sharing_strategy strategy_from_string(const std::string& name);

struct lifted_method {
    method_signature signature;
    std::string body_text;     // full definition text, head included
    source_span original_span; // the loop in the original method it replaces
};

struct call_site {
    source_span outer_span;
    std::string lifted_name;
};

// Result of loop-level decomposition. Invariants enforced by the
// refactor engine: every lifted method contains at most one loop, and the
// outer method's signature and contract match the original verbatim.
struct decomposition_plan {
    sharing_strategy strategy = sharing_strategy::decoupled;
    method_signature outer_signature;
    std::string outer_body_text; // full definition text of the rewritten outer method
    std::vector<lifted_method> lifted;
    std::vector<call_site> call_sites;
    std::string program_text; // the whole decomposed program

    [[nodiscard]] bool single_method() const { return lifted.empty(); }
};

// Span <-> method pairs plus any renamings, emitted alongside restoration
// so a user can finish a partial restore by hand.
struct mapping_report {
    struct entry {
        std::string lifted_name;
        source_span original_span;
        std::vector<std::string> renamed_parameters;
    };
    std::vector<entry> entries;
    bool restoration_complete = true;

    [[nodiscard]] std::string to_json() const;
};

} // namespace proofforge
