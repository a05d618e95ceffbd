#include "proofforge/config.hpp"

#include "proofforge/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace proofforge {

void run_config::validate() const {
    auto positive = [](int value, const char* name) {
        if (value < 1) {
            throw usage_error(std::string("config: ") + name + " must be >= 1");
        }
    };
    positive(max_generation_attempts, "max_generation_attempts");
    positive(retry_budget, "retry_budget");
    positive(max_tokens, "max_tokens");
    positive(verifier_timeout_seconds, "verifier_timeout_seconds");
    positive(global_timeout_seconds, "global_timeout_seconds");
    positive(verify_at_k, "verify_at_k");
    if (initial_temperature < 0.0 || initial_temperature > 1.0) {
        throw usage_error("config: initial_temperature must be in [0,1]");
    }
    if (temperature_step < 0.0 || temperature_step > 1.0) {
        throw usage_error("config: temperature_step must be in [0,1]");
    }
}

double temperature_schedule(const run_config& config, int retry_index) {
    if (retry_index < 0 || retry_index >= config.retry_budget) {
        std::ostringstream msg;
        msg << "temperature_schedule: retry index " << retry_index << " is outside the budget of "
            << config.retry_budget << " visits";
        throw out_of_budget_error(msg.str());
    }
    double value = config.initial_temperature - retry_index * config.temperature_step;
    return std::max(0.0, value);
}

run_config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw usage_error("config file not found: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw usage_error("config file " + path + " is not valid JSON: " + e.what());
    }

    run_config config;
    auto load_int = [&](const char* key, int& field) {
        if (doc.contains(key)) field = doc.at(key).get<int>();
    };
    auto load_double = [&](const char* key, double& field) {
        if (doc.contains(key)) field = doc.at(key).get<double>();
    };
    load_int("max_generation_attempts", config.max_generation_attempts);
    load_int("retry_budget", config.retry_budget);
    load_double("temperature_step", config.temperature_step);
    load_double("initial_temperature", config.initial_temperature);
    load_int("max_tokens", config.max_tokens);
    load_int("verifier_timeout_seconds", config.verifier_timeout_seconds);
    load_int("global_timeout_seconds", config.global_timeout_seconds);
    load_int("verify_at_k", config.verify_at_k);
    config.validate();
    return config;
}

} // namespace proofforge
