#pragma once

#include "proofforge/config.hpp"
#include "proofforge/plan.hpp"

#include <optional>
#include <string>

namespace proofforge {

// One verification job: the program (contract included in its text), an
// optional natural-language proof outline passed verbatim into prompts,
// and the run configuration.
struct verification_task {
    std::string id;
    std::string program_text;
    std::string outline;
    run_config config;

    // When set, code-level decomposition runs first with this strategy.
    std::optional<sharing_strategy> decompose;
    // Method to decompose; defaults to the first method in the program.
    std::string target_method;
};

} // namespace proofforge
