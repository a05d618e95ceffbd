// Live HTTP chat-completion backend, isolated here so the heavy httplib
// include stays out of every other translation unit.

#ifdef PROOFFORGE_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "proofforge/errors.hpp"
#include "proofforge/llm.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <thread>

namespace proofforge::llm {

namespace {

struct split_url {
    std::string base; // scheme://host[:port]
    std::string path; // /v1/chat/completions
};

split_url split_endpoint(const std::string& endpoint) {
    std::size_t scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw environment_error("PF_LLM_ENDPOINT must be a full URL, got: " + endpoint);
    }
    std::size_t path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {endpoint, "/v1/chat/completions"};
    }
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

} // namespace

llm_exchange http_client::complete(const completion_request& request) {
    split_url url = split_endpoint(_opts.endpoint);

    nlohmann::json body = {
        {"model", _opts.model},
        {"messages", nlohmann::json::array({nlohmann::json{
                         {"role", "user"}, {"content", request.rendered_prompt}}})},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
    };
    std::string payload = body.dump();

    llm_exchange exchange;
    exchange.template_id = request.template_id;
    exchange.substitutions = request.substitutions;
    exchange.temperature = request.temperature;
    exchange.max_tokens = request.max_tokens;
    exchange.source = exchange_source::live;
    exchange.digest =
        request_digest(request.template_id, request.substitutions, request.temperature);

    std::string last_failure;
    for (int attempt = 0; attempt <= _opts.max_transport_retries; ++attempt) {
        if (attempt > 0) {
            auto backoff = std::chrono::milliseconds(500 << (attempt - 1));
            std::this_thread::sleep_for(backoff);
            exchange.transport_retries = attempt;
        }

        httplib::Client http(url.base);
        http.set_connection_timeout(_opts.request_timeout_seconds, 0);
        http.set_read_timeout(_opts.request_timeout_seconds, 0);
        http.set_write_timeout(_opts.request_timeout_seconds, 0);
        httplib::Headers headers;
        if (!_opts.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + _opts.api_key);
        }

        auto result = http.Post(url.path, headers, payload, "application/json");
        if (!result) {
            last_failure = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status >= 500) {
            last_failure = "server returned status " + std::to_string(result->status);
            continue;
        }
        if (result->status != 200) {
            throw environment_error("LLM provider rejected the request (status " +
                                    std::to_string(result->status) + "): " + result->body);
        }

        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::exception& e) {
            throw environment_error(std::string("LLM provider returned malformed JSON: ") +
                                    e.what());
        }
        try {
            const auto& choice = doc.at("choices").at(0);
            exchange.response_text = choice.at("message").at("content").get<std::string>();
            exchange.truncated = choice.value("finish_reason", "") == "length";
        } catch (const nlohmann::json::exception& e) {
            throw environment_error(std::string("LLM response missing expected fields: ") +
                                    e.what());
        }
        return exchange;
    }
    throw environment_error("LLM transport failed after " +
                            std::to_string(_opts.max_transport_retries) +
                            " retries: " + last_failure);
}

} // namespace proofforge::llm
