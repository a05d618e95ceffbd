#pragma once

#include "proofforge/exchange.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace proofforge::llm {

enum class response_shape { boolean_verdict, code_block, signature_block, free_text };

// A prompt with named {{placeholder}} slots. Constructing one validates
// that every placeholder used in the body is declared.
class prompt_template {
public:
    prompt_template(std::string id, std::string role_preamble, std::string body,
                    std::vector<std::string> placeholders, response_shape shape);

    [[nodiscard]] const std::string& id() const { return _id; }
    [[nodiscard]] const std::vector<std::string>& placeholders() const { return _placeholders; }
    [[nodiscard]] response_shape shape() const { return _shape; }

    // Deterministic rendering with normalized line endings. Throws
    // render_error listing any placeholder the map does not cover.
    [[nodiscard]] std::string render(const substitution_list& substitutions) const;

private:
    std::string _id;
    std::string _role_preamble;
    std::string _body;
    std::vector<std::string> _placeholders;
    response_shape _shape;
};

// One template per pipeline step.
class template_library {
public:
    template_library();

    [[nodiscard]] const prompt_template& get(const std::string& id) const;
    [[nodiscard]] std::vector<std::string> ids() const;

private:
    std::map<std::string, prompt_template> _templates;
};

struct completion_request {
    std::string template_id;
    substitution_list substitutions;
    double temperature = 0.0;
    int max_tokens = 0;
    std::string rendered_prompt;
};

class client {
public:
    virtual ~client() = default;
    virtual llm_exchange complete(const completion_request& request) = 0;
    [[nodiscard]] virtual std::string flavor() const = 0;
};

// Test double driven by a handler function.
class scripted final : public client {
public:
    using handler = std::function<std::string(const completion_request&)>;

    explicit scripted(handler h) : _handler(std::move(h)) {}

    llm_exchange complete(const completion_request& request) override;
    [[nodiscard]] std::string flavor() const override { return "scripted"; }

private:
    handler _handler;
};

// HTTP chat-completion backend. Endpoint, model, and key come from
// PF_LLM_ENDPOINT / PF_LLM_MODEL / PF_LLM_API_KEY unless set explicitly.
// Transient transport failures are retried up to 3 times with exponential
// backoff; the retry count lands in the exchange.
class http_client final : public client {
public:
    struct options {
        std::string endpoint;
        std::string model;
        std::string api_key;
        int request_timeout_seconds = 20;
        int max_transport_retries = 3;
    };

    explicit http_client(options opts);

    // Reads the PF_LLM_* environment; throws environment_error when the
    // endpoint or model is missing.
    static http_client from_environment();

    llm_exchange complete(const completion_request& request) override;
    [[nodiscard]] std::string flavor() const override { return "live-http"; }

private:
    options _opts;
};

enum class cassette_mode { record, replay };

// Record/replay store for exchanges, keyed by request digest. Replay
// misses are hard errors; record-mode duplicate digests overwrite the
// stored entry with a warning.
class cassette {
public:
    struct entry {
        std::string digest;
        std::string template_id;
        double temperature = 0.0;
        std::string response;
        std::string recorded_at;
    };

    cassette() = default;

    [[nodiscard]] static cassette load_file(const std::string& path);
    [[nodiscard]] static cassette from_json(const std::string& json_text);
    void save_file(const std::string& path) const;
    [[nodiscard]] std::string to_json() const;

    // Record-mode insert. Returns false when an existing digest was
    // overwritten (the caller may want to surface the warning).
    bool record(const entry& e);

    [[nodiscard]] std::optional<std::string> lookup(const std::string& digest) const;
    [[nodiscard]] std::size_t size() const { return _entries.size(); }
    [[nodiscard]] const std::vector<entry>& entries() const { return _entries; }

    // Fixed timestamp used for newly recorded entries; keeps regenerated
    // cassettes byte-reproducible. Defaults to the wall clock.
    void pin_timestamp(std::string iso8601) { _pinned_timestamp = std::move(iso8601); }
    [[nodiscard]] std::string timestamp() const;

private:
    std::vector<entry> _entries;
    std::map<std::string, std::size_t> _index;
    std::optional<std::string> _pinned_timestamp;
};

// The uniform front the engine talks to: renders templates, computes
// digests, dispatches to the configured backend, and applies cassette
// record/replay. Shareable across tasks; cassette writes are serialized.
class gateway {
public:
    // Pass-through (live or scripted backend).
    explicit gateway(std::shared_ptr<client> backend);
    // Record through `backend` into `tape`.
    gateway(std::shared_ptr<client> backend, std::shared_ptr<cassette> tape);
    // Replay-only.
    explicit gateway(std::shared_ptr<cassette> tape);

    [[nodiscard]] llm_exchange complete(const std::string& template_id,
                                        const substitution_list& substitutions, double temperature,
                                        int max_tokens);

    [[nodiscard]] const template_library& templates() const { return _templates; }
    [[nodiscard]] cassette* tape() { return _tape.get(); }
    [[nodiscard]] bool replay_only() const { return _backend == nullptr; }

private:
    template_library _templates;
    std::shared_ptr<client> _backend; // null in replay mode
    std::shared_ptr<cassette> _tape;  // null in pass-through mode
    std::mutex _mutex;
};

// Case-insensitive scan for the first isolated yes/no token. Throws
// parse_error when neither appears.
[[nodiscard]] bool parse_verdict(const std::string& response_text);

struct extracted_code {
    std::string text;
    bool low_confidence = false; // no fence found; whole response returned
};

// First fenced code block, or the whole response flagged low-confidence.
// Throws parse_error on an empty response.
[[nodiscard]] extracted_code extract_code_block(const std::string& response_text);

} // namespace proofforge::llm
