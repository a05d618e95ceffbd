#pragma once

#include <string>

namespace proofforge {

// Knobs for one verification run. The defaults are the configuration the
// whole pipeline was tuned with; anything can be overridden from a config
// file or CLI flags.
struct run_config {
    int max_generation_attempts = 10; // t: candidate generations per node visit
    int retry_budget = 2;             // s: full visits of a node
    double temperature_step = 0.3;    // subtracted per retry
    double initial_temperature = 0.5;
    int max_tokens = 4028;
    int verifier_timeout_seconds = 20;
    int global_timeout_seconds = 500;
    int verify_at_k = 5; // independent end-to-end attempts

    // Throws usage_error if any integer is < 1 or a temperature value is
    // outside [0,1].
    void validate() const;
};

// Temperature for the given 0-based retry index: initial − index·step,
// clamped at zero. Throws out_of_budget_error when the index is at or past
// the retry budget.
[[nodiscard]] double temperature_schedule(const run_config& config, int retry_index);

// Parses a JSON config file; missing keys keep their defaults.
[[nodiscard]] run_config load_config_file(const std::string& path);

} // namespace proofforge
