#include "proofforge/transcript.hpp"

#include "proofforge/errors.hpp"

#include <nlohmann/json.hpp>

namespace proofforge {

std::string to_string(run_status status) {
    switch (status) {
        case run_status::verified: return "verified";
        case run_status::failed: return "failed";
        case run_status::aborted: return "aborted";
    }
    return "failed";
}

std::string to_string(event_kind kind) {
    switch (kind) {
        case event_kind::node_created: return "NodeCreated";
        case event_kind::llm_call: return "LlmCall";
        case event_kind::verifier_run: return "VerifierRun";
        case event_kind::repair_applied: return "RepairApplied";
        case event_kind::rollback: return "Rollback";
        case event_kind::restored: return "Restored";
        case event_kind::final_result: return "FinalResult";
    }
    return "FinalResult";
}

transcript_event& run_transcript::append(event_kind kind) {
    if (_finalized) {
        throw error("transcript already carries its FinalResult; no further events allowed");
    }
    transcript_event event;
    event.sequence = _next_sequence++;
    event.kind = kind;
    if (kind == event_kind::final_result) {
        _finalized = true;
    }
    _events.push_back(std::move(event));
    return _events.back();
}

void run_transcript::record_totals(int attempts, int verifier_runs, double wall_time_seconds) {
    _total_attempts = attempts;
    _total_verifier_runs = verifier_runs;
    _total_wall_time = wall_time_seconds;
}

bool run_transcript::check_monotone() const {
    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < _events.size(); ++i) {
        if (_events[i].sequence != expected++) return false;
        bool is_final = _events[i].kind == event_kind::final_result;
        bool is_last = i + 1 == _events.size();
        if (is_final != (is_last && _finalized)) return false;
    }
    return true;
}

namespace {

nlohmann::json event_to_json(const transcript_event& event) {
    nlohmann::json doc;
    doc["seq"] = event.sequence;
    doc["kind"] = to_string(event.kind);
    if (event.node) doc["node"] = *event.node;
    if (event.visit_index >= 0) doc["visit"] = event.visit_index;
    switch (event.kind) {
        case event_kind::node_created:
            doc["goal"] = event.goal_name;
            doc["temperature"] = event.temperature;
            break;
        case event_kind::llm_call:
            doc["template_id"] = event.template_id;
            doc["digest"] = event.digest;
            doc["temperature"] = event.temperature;
            doc["counted_generation"] = event.counted_generation;
            if (event.transport_retries > 0) doc["transport_retries"] = event.transport_retries;
            break;
        case event_kind::verifier_run:
            doc["status"] = event.verifier_status_text;
            doc["seconds"] = event.seconds;
            if (!event.verifier_argv.empty()) doc["argv"] = event.verifier_argv;
            break;
        case event_kind::repair_applied:
            doc["repair_kind"] = event.repair_kind;
            doc["line"] = event.repair_line;
            doc["new_lemma"] = event.new_lemma_name;
            break;
        case event_kind::rollback:
            if (event.rollback_from) doc["from"] = *event.rollback_from;
            if (event.rollback_to) doc["to"] = *event.rollback_to;
            doc["new_temperature"] = event.new_temperature;
            break;
        case event_kind::restored:
            break;
        case event_kind::final_result:
            doc["status"] = event.final_status_text;
            break;
    }
    return doc;
}

nlohmann::json transcript_to_json(const run_transcript& transcript, bool include_wall_time) {
    nlohmann::json doc;
    doc["task_id"] = transcript.task_id();
    nlohmann::json events = nlohmann::json::array();
    for (const auto& event : transcript.events()) {
        events.push_back(event_to_json(event));
    }
    doc["events"] = std::move(events);
    doc["totals"] = {
        {"attempts", transcript.total_attempts()},
        {"verifier_runs", transcript.total_verifier_runs()},
    };
    if (include_wall_time) {
        doc["totals"]["wall_time_seconds"] = transcript.total_wall_time_seconds();
    }
    return doc;
}

} // namespace

std::string run_transcript::to_json() const {
    return transcript_to_json(*this, true).dump(2) + "\n";
}

std::string run_transcript::to_canonical_json() const {
    return transcript_to_json(*this, false).dump(2) + "\n";
}

} // namespace proofforge
