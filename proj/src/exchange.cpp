#include "proofforge/exchange.hpp"

#include "proofforge/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>

namespace proofforge {

std::string to_string(exchange_source source) {
    switch (source) {
        case exchange_source::live: return "live";
        case exchange_source::cassette: return "cassette";
        case exchange_source::scripted: return "scripted";
    }
    return "unknown";
}

namespace {

exchange_source source_from_string(const std::string& name) {
    if (name == "live") return exchange_source::live;
    if (name == "cassette") return exchange_source::cassette;
    if (name == "scripted") return exchange_source::scripted;
    throw usage_error("unknown exchange source: " + name);
}

// 64-bit FNV-1a over a length-prefixed field stream. Not cryptographic;
// only needs to be stable across platforms and runs.
class fnv_hasher {
public:
    void feed(const std::string& field) {
        feed_raw(std::to_string(field.size()));
        feed_raw(field);
        mix(0x1e);
    }

    [[nodiscard]] std::string hex() const {
        char buffer[17];
        std::snprintf(buffer, sizeof(buffer), "%016llx",
                      static_cast<unsigned long long>(_state));
        return buffer;
    }

private:
    void feed_raw(const std::string& bytes) {
        for (unsigned char c : bytes) mix(c);
    }
    void mix(unsigned char byte) {
        _state ^= byte;
        _state *= 0x100000001b3ULL;
    }
    std::uint64_t _state = 0xcbf29ce484222325ULL;
};

std::string canonical_temperature(double temperature) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", temperature);
    return buffer;
}

} // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t state = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        state ^= c;
        state *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(state));
    return buffer;
}

std::string request_digest(const std::string& template_id, const substitution_list& substitutions,
                           double temperature) {
    fnv_hasher hash;
    hash.feed(template_id);
    for (const auto& [key, value] : substitutions) {
        hash.feed(key);
        hash.feed(value);
    }
    hash.feed(canonical_temperature(temperature));
    return hash.hex();
}

std::string llm_exchange::to_json() const {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& [key, value] : substitutions) {
        subs.push_back({{"key", key}, {"value", value}});
    }
    nlohmann::json doc = {
        {"template_id", template_id},
        {"substitutions", std::move(subs)},
        {"temperature", temperature},
        {"max_tokens", max_tokens},
        {"response_text", response_text},
        {"source", to_string(source)},
        {"digest", digest},
        {"truncated", truncated},
        {"transport_retries", transport_retries},
    };
    return doc.dump(2);
}

llm_exchange llm_exchange::from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("exchange JSON malformed: ") + e.what());
    }
    llm_exchange exchange;
    exchange.template_id = doc.at("template_id").get<std::string>();
    for (const auto& pair : doc.at("substitutions")) {
        exchange.substitutions.emplace_back(pair.at("key").get<std::string>(),
                                            pair.at("value").get<std::string>());
    }
    exchange.temperature = doc.at("temperature").get<double>();
    exchange.max_tokens = doc.at("max_tokens").get<int>();
    exchange.response_text = doc.at("response_text").get<std::string>();
    exchange.source = source_from_string(doc.at("source").get<std::string>());
    exchange.digest = doc.at("digest").get<std::string>();
    exchange.truncated = doc.value("truncated", false);
    exchange.transport_retries = doc.value("transport_retries", 0);
    return exchange;
}

} // namespace proofforge
