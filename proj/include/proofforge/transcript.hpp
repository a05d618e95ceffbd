#pragma once

#include "proofforge/diagnostic.hpp"
#include "proofforge/proof_tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace proofforge {

enum class run_status { verified, failed, aborted };

[[nodiscard]] std::string to_string(run_status status);

enum class event_kind {
    node_created,
    llm_call,
    verifier_run,
    repair_applied,
    rollback,
    restored,
    final_result,
};

[[nodiscard]] std::string to_string(event_kind kind);

// One transcript event. Fields beyond the discriminant are populated per
// kind; unused ones stay at their defaults and serialize as null/absent.
struct transcript_event {
    std::uint64_t sequence = 0;
    event_kind kind = event_kind::final_result;

    std::optional<node_id> node;   // owning node for attributed events
    int visit_index = -1;          // 0-based visit of that node, where attributed

    // node_created
    std::string goal_name;
    double temperature = 0.0;

    // llm_call
    std::string template_id;
    std::string digest;
    bool counted_generation = false; // consumed one of the node's t attempts
    int transport_retries = 0;

    // verifier_run
    std::string verifier_status_text;
    double seconds = 0.0;
    std::vector<std::string> verifier_argv;

    // repair_applied
    std::string repair_kind;
    int repair_line = -1;
    std::string new_lemma_name;

    // rollback
    std::optional<node_id> rollback_from;
    std::optional<node_id> rollback_to;
    double new_temperature = 0.0;

    // final_result
    std::string final_status_text;
};

// Ordered event log for one engine run. Sequence numbers are strictly
// increasing and final_result appears exactly once, last.
class run_transcript {
public:
    explicit run_transcript(std::string task_id) : _task_id(std::move(task_id)) {}

    transcript_event& append(event_kind kind);

    void record_totals(int attempts, int verifier_runs, double wall_time_seconds);

    [[nodiscard]] const std::vector<transcript_event>& events() const { return _events; }
    [[nodiscard]] const std::string& task_id() const { return _task_id; }
    [[nodiscard]] bool finalized() const { return _finalized; }

    [[nodiscard]] int total_attempts() const { return _total_attempts; }
    [[nodiscard]] int total_verifier_runs() const { return _total_verifier_runs; }
    [[nodiscard]] double total_wall_time_seconds() const { return _total_wall_time; }

    // Full JSON document, schema documented in the README.
    [[nodiscard]] std::string to_json() const;

    // Same document with wall-clock totals dropped, so two replays of the
    // same cassette compare byte-identical.
    [[nodiscard]] std::string to_canonical_json() const;

    // Well-formedness: monotone sequence numbers, exactly one final_result
    // as the last event once finalized.
    [[nodiscard]] bool check_monotone() const;

private:
    std::string _task_id;
    std::vector<transcript_event> _events;
    std::uint64_t _next_sequence = 0;
    bool _finalized = false;
    int _total_attempts = 0;
    int _total_verifier_runs = 0;
    double _total_wall_time = 0.0;
};

} // namespace proofforge
