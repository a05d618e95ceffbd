#include "proofforge/plan.hpp"

#include "proofforge/errors.hpp"

#include <nlohmann/json.hpp>

namespace proofforge {

std::string to_string(sharing_strategy strategy) {
    switch (strategy) {
        case sharing_strategy::full_sharing: return "full-sharing";
        case sharing_strategy::decoupled: return "decoupled";
        case sharing_strategy::fully_decoupled: return "fully-decoupled";
    }
    return "decoupled";
}

sharing_strategy strategy_from_string(const std::string& name) {
    if (name == "full-sharing" || name == "full_sharing") return sharing_strategy::full_sharing;
    if (name == "decoupled") return sharing_strategy::decoupled;
    if (name == "fully-decoupled" || name == "fully_decoupled") {
        return sharing_strategy::fully_decoupled;
    }
    throw usage_error("unknown decomposition strategy: " + name +
                      " (expected full-sharing, decoupled, or fully-decoupled)");
}

std::string mapping_report::to_json() const {
    nlohmann::json entries_json = nlohmann::json::array();
    for (const auto& e : entries) {
        entries_json.push_back({
            {"lifted_method", e.lifted_name},
            {"original_span",
             {
                 {"start_line", e.original_span.start_line},
                 {"start_column", e.original_span.start_column},
                 {"end_line", e.original_span.end_line},
                 {"end_column", e.original_span.end_column},
             }},
            {"renamed_parameters", e.renamed_parameters},
        });
    }
    nlohmann::json doc = {
        {"restoration_complete", restoration_complete},
        {"mappings", std::move(entries_json)},
    };
    return doc.dump(2) + "\n";
}

} // namespace proofforge
