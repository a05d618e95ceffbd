#pragma once

#include <string>
#include <utility>
#include <vector>

namespace proofforge {

enum class exchange_source { live, cassette, scripted };

[[nodiscard]] std::string to_string(exchange_source source);

using substitution_list = std::vector<std::pair<std::string, std::string>>;

// Stable 64-bit FNV-1a hex digest of raw bytes. Not cryptographic.
[[nodiscard]] std::string fnv1a_hex(const std::string& bytes);

// Deterministic digest of (template_id, substitutions, temperature).
// max_tokens is deliberately excluded: it is an operational knob, and
// including it would invalidate recorded cassettes on config tweaks.
// Identical inputs produce identical digests across platforms and runs.
[[nodiscard]] std::string request_digest(const std::string& template_id,
                                         const substitution_list& substitutions,
                                         double temperature);

// One prompt/response pair, as recorded into transcripts and cassettes.
struct llm_exchange {
    std::string template_id;
    substitution_list substitutions;
    double temperature = 0.0;
    int max_tokens = 0;
    std::string response_text;
    exchange_source source = exchange_source::scripted;
    std::string digest;
    bool truncated = false;   // response was cut at max_tokens
    int transport_retries = 0; // live backend retries before this response

    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] static llm_exchange from_json(const std::string& json_text);
};

} // namespace proofforge
