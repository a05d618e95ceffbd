#pragma once

#include "proofforge/config.hpp"
#include "proofforge/metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace proofforge::bench {

// One corpus task directory: program.dfy plus optional outline.md,
// cassette.json, verifier.json, and an `expected` marker file.
struct task_descriptor {
    std::string name;
    std::string directory;
    std::string program_path;
    std::optional<std::string> outline_path;
    std::optional<std::string> cassette_path;
    std::optional<std::string> verifier_script_path;
    std::optional<std::string> expected; // "verifiable" or "known-hard"
};

struct task_record {
    std::string name;
    bool succeeded = false;
    int attempts = 0;
    double wall_time_seconds = 0.0; // of the successful attempt
    int lemma_count = 0;            // of the successful attempt
    std::string final_status;
};

struct bench_report {
    std::vector<task_record> records;
    success_rate rate;
    int k = 0;
    double mean_success_wall_time = 0.0;
    double mean_success_lemmas = 0.0;

    [[nodiscard]] std::string to_json() const;
};

// Scans a corpus directory (one subdirectory per task). Throws
// usage_error when empty.
[[nodiscard]] std::vector<task_descriptor> scan_corpus(const std::string& corpus_dir);

struct bench_options {
    run_config config;
    int k = 5;
    int jobs = 1;
    std::string mode = "replay"; // replay | record | live
    std::optional<int> global_timeout_override;
};

// Runs every task up to k attempts each, possibly `jobs` tasks in
// parallel. Each task's engine stays single-threaded.
[[nodiscard]] bench_report run_bench(const std::vector<task_descriptor>& tasks,
                                     const bench_options& options);

} // namespace proofforge::bench
