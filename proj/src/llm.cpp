#include "proofforge/llm.hpp"

#include "proofforge/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace proofforge::llm {

// ---------------------------------------------------------------------------
// Templates.

prompt_template::prompt_template(std::string id, std::string role_preamble, std::string body,
                                 std::vector<std::string> placeholders, response_shape shape)
    : _id(std::move(id)),
      _role_preamble(std::move(role_preamble)),
      _body(std::move(body)),
      _placeholders(std::move(placeholders)),
      _shape(shape) {
    // Every placeholder used in the body must be declared.
    std::set<std::string> declared(_placeholders.begin(), _placeholders.end());
    std::size_t pos = 0;
    while ((pos = _body.find("{{", pos)) != std::string::npos) {
        std::size_t close = _body.find("}}", pos);
        if (close == std::string::npos) {
            throw error("template '" + _id + "': unterminated placeholder");
        }
        std::string name = _body.substr(pos + 2, close - pos - 2);
        if (declared.count(name) == 0) {
            throw error("template '" + _id + "': undeclared placeholder '" + name + "'");
        }
        pos = close + 2;
    }
}

namespace {

std::string normalize_newlines(std::string text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') continue;
            out += '\n';
        } else {
            out += text[i];
        }
    }
    return out;
}

} // namespace

std::string prompt_template::render(const substitution_list& substitutions) const {
    std::vector<std::string> missing;
    auto find_value = [&](const std::string& key) -> const std::string* {
        for (const auto& [k, v] : substitutions) {
            if (k == key) return &v;
        }
        return nullptr;
    };
    for (const auto& placeholder : _placeholders) {
        if (find_value(placeholder) == nullptr) missing.push_back(placeholder);
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "template '" << _id << "': missing substitution(s):";
        for (const auto& name : missing) msg << " " << name;
        throw render_error(msg.str());
    }

    std::string text = _role_preamble.empty() ? _body : _role_preamble + "\n\n" + _body;
    std::size_t pos = 0;
    std::string rendered;
    rendered.reserve(text.size());
    while (pos < text.size()) {
        std::size_t open = text.find("{{", pos);
        if (open == std::string::npos) {
            rendered.append(text, pos, text.size() - pos);
            break;
        }
        rendered.append(text, pos, open - pos);
        std::size_t close = text.find("}}", open);
        std::string name = text.substr(open + 2, close - open - 2);
        const std::string* value = find_value(name);
        rendered.append(value != nullptr ? *value : "");
        pos = close + 2;
    }
    return normalize_newlines(rendered);
}

namespace {

const char* dafny_engineer_preamble =
    "You are an expert Dafny verification engineer. You write minimal, "
    "correct annotations and never change executable statements unless "
    "explicitly asked.";

std::vector<prompt_template> build_templates() {
    std::vector<prompt_template> templates;

    templates.emplace_back(
        "decompose-code", dafny_engineer_preamble,
        "Refactor the Dafny method `{{method}}` below at loop-level modularity: extract "
        "auxiliary sub-methods so that every method contains at most one loop, and rewrite "
        "`{{method}}` to call them. Keep the signature, requires, and ensures of `{{method}}` "
        "exactly as written. Give each new sub-method a contract strong enough to re-prove the "
        "call site.\n\n"
        "Parameter-passing rule for this refactoring: {{strategy_rules}}\n\n"
        "Program:\n```dafny\n{{program}}\n```\n\n"
        "Reply with one fenced ```dafny``` block containing the complete rewritten program "
        "(all original functions and predicates included, unchanged).",
        {"method", "strategy_rules", "program"}, response_shape::code_block);

    templates.emplace_back(
        "decomposition-consistency-check", dafny_engineer_preamble,
        "Below is a loop-lifting refactoring of `{{method}}`. Judge whether it is consistent: "
        "each method should be verifiable on its own, and the sub-method contracts must be "
        "strong enough to restore and re-prove the original method from the call sites.\n\n"
        "```dafny\n{{program}}\n```\n\n"
        "Answer strictly `yes` or `no` on the first line. If `no`, state the reason on the "
        "next line.",
        {"method", "program"}, response_shape::boolean_verdict);

    templates.emplace_back(
        "verifiability-gate", dafny_engineer_preamble,
        "Before any code is generated, judge the following proof goal at a high level.\n\n"
        "{{judgment_subject}}\n\n"
        "Context program:\n```dafny\n{{context_code}}\n```\n"
        "{{proof_outline_section}}\n"
        "Is this goal logically correct and plausibly verifiable in Dafny? Answer strictly "
        "`yes` or `no` on the first line; a short justification may follow.",
        {"judgment_subject", "context_code", "proof_outline_section"},
        response_shape::boolean_verdict);

    templates.emplace_back(
        "generate-body-and-annotations", dafny_engineer_preamble,
        "Write a complete body for this Dafny declaration, including every assertion, "
        "invariant, and helper needed to verify it:\n\n"
        "```dafny\n{{signature}}\n```\n\n"
        "It must verify inside this program (generation attempt {{attempt}}):\n"
        "```dafny\n{{context_code}}\n```\n"
        "{{proof_outline_section}}{{reusable_lemmas_section}}\n"
        "Reply with one fenced ```dafny``` block containing only the full definition "
        "(signature plus body).",
        {"signature", "context_code", "proof_outline_section", "reusable_lemmas_section",
         "attempt"},
        response_shape::code_block);

    templates.emplace_back(
        "augment-annotations", dafny_engineer_preamble,
        "The Dafny definition below has a fixed executable body but is missing verification "
        "annotations. Add the loop invariants, assertions, and lemma calls needed for it to "
        "verify. Do not change any executable statement, parameter, or contract clause.\n\n"
        "```dafny\n{{definition}}\n```\n\n"
        "It must verify inside this program (generation attempt {{attempt}}):\n"
        "```dafny\n{{context_code}}\n```\n"
        "{{proof_outline_section}}{{reusable_lemmas_section}}\n"
        "Reply with one fenced ```dafny``` block containing only the full annotated "
        "definition.",
        {"definition", "context_code", "proof_outline_section", "reusable_lemmas_section",
         "attempt"},
        response_shape::code_block);

    templates.emplace_back(
        "repair-from-diagnostics", dafny_engineer_preamble,
        "The Dafny verifier rejected the definition below. Produce a revised definition that "
        "fixes the reported problems. Keep executable statements and the contract unchanged; "
        "only annotations may differ. Do not repeat the rejected version.\n\n"
        "Current definition:\n```dafny\n{{definition}}\n```\n\n"
        "Verifier output:\n```\n{{diagnostics}}\n```\n\n"
        "{{hint}}\n"
        "Surrounding program (repair attempt {{attempt}}):\n```dafny\n{{context_code}}\n```\n\n"
        "Reply with one fenced ```dafny``` block containing only the full revised definition.",
        {"definition", "diagnostics", "hint", "context_code", "attempt"},
        response_shape::code_block);

    templates.emplace_back(
        "propose-sublemma-for-assertion", dafny_engineer_preamble,
        "Inside `{{owner}}`, this assertion is logically correct but the verifier cannot "
        "discharge it:\n\n"
        "    assert {{assertion}};\n\n"
        "Propose one helper lemma that would discharge it when called at the assertion site. "
        "Give the lemma a precise contract; its body will be proven separately.\n\n"
        "Program:\n```dafny\n{{context_code}}\n```\n\n"
        "Reply with: a fenced ```dafny``` block containing only the lemma signature with its "
        "requires/ensures clauses and no body, then a final line of the form\n"
        "call: LemmaName(args);",
        {"owner", "assertion", "context_code"}, response_shape::signature_block);

    templates.emplace_back(
        "propose-sublemma-for-invariant", dafny_engineer_preamble,
        "Inside `{{owner}}`, this loop invariant is believed correct but the verifier cannot "
        "establish it ({{failure_phase}}):\n\n"
        "    invariant {{invariant}}\n\n"
        "Propose one helper lemma asserting that the invariant holds after one iteration of "
        "the loop, given that it holds before. Parameters must capture the loop state. Its "
        "body will be proven separately.\n\n"
        "Program:\n```dafny\n{{context_code}}\n```\n\n"
        "Reply with: a fenced ```dafny``` block containing only the lemma signature with its "
        "requires/ensures clauses and no body, then a final line of the form\n"
        "call: LemmaName(args);",
        {"owner", "invariant", "failure_phase", "context_code"},
        response_shape::signature_block);

    templates.emplace_back(
        "strengthen-callee-contract", dafny_engineer_preamble,
        "Verifying `{{caller}}` fails because the contract of the called sub-method "
        "`{{callee}}` is too weak to support the caller's proof.\n\n"
        "Verifier output:\n```\n{{diagnostics}}\n```\n\n"
        "Current callee signature:\n```dafny\n{{callee_signature}}\n```\n\n"
        "Program:\n```dafny\n{{context_code}}\n```\n\n"
        "Reply with one fenced ```dafny``` block containing only the strengthened callee "
        "signature (same name, same parameters, stronger ensures; no body).",
        {"caller", "callee", "diagnostics", "callee_signature", "context_code"},
        response_shape::signature_block);

    templates.emplace_back(
        "merge-and-restore", dafny_engineer_preamble,
        "The modular program below is fully verified. Merge the lifted sub-methods back into "
        "`{{method}}` so the result has the original control-flow shape: re-inline each lifted "
        "loop at its call site and migrate all invariants, assertions, and lemma calls onto "
        "the restored loops. Executable statements must match the original program "
        "token-for-token; only annotations may differ. Keep every helper lemma and spec "
        "function.\n\n"
        "Original program:\n```dafny\n{{original_program}}\n```\n\n"
        "Verified modular program:\n```dafny\n{{verified_program}}\n```\n"
        "{{feedback}}\n"
        "Reply with one fenced ```dafny``` block containing the complete restored program "
        "(restore attempt {{attempt}}).",
        {"method", "original_program", "verified_program", "feedback", "attempt"},
        response_shape::code_block);

    return templates;
}

} // namespace

template_library::template_library() {
    for (auto& tmpl : build_templates()) {
        std::string id = tmpl.id();
        _templates.emplace(std::move(id), std::move(tmpl));
    }
}

const prompt_template& template_library::get(const std::string& id) const {
    auto it = _templates.find(id);
    if (it == _templates.end()) {
        throw usage_error("unknown prompt template: " + id);
    }
    return it->second;
}

std::vector<std::string> template_library::ids() const {
    std::vector<std::string> out;
    out.reserve(_templates.size());
    for (const auto& [id, tmpl] : _templates) out.push_back(id);
    return out;
}

// ---------------------------------------------------------------------------
// Backends.

llm_exchange scripted::complete(const completion_request& request) {
    llm_exchange exchange;
    exchange.template_id = request.template_id;
    exchange.substitutions = request.substitutions;
    exchange.temperature = request.temperature;
    exchange.max_tokens = request.max_tokens;
    exchange.response_text = _handler(request);
    exchange.source = exchange_source::scripted;
    exchange.digest =
        request_digest(request.template_id, request.substitutions, request.temperature);
    return exchange;
}

// ---------------------------------------------------------------------------
// Cassette.

cassette cassette::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw usage_error("cassette not found: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

cassette cassette::from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("cassette JSON malformed: ") + e.what());
    }
    if (!doc.is_array()) {
        throw usage_error("cassette JSON must be an array of exchange records");
    }
    cassette tape;
    for (const auto& entry_json : doc) {
        entry e;
        e.digest = entry_json.at("digest").get<std::string>();
        e.template_id = entry_json.at("template_id").get<std::string>();
        e.temperature = entry_json.at("temperature").get<double>();
        e.response = entry_json.at("response").get<std::string>();
        e.recorded_at = entry_json.value("recorded_at", "");
        tape.record(e);
    }
    return tape;
}

void cassette::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw usage_error("cannot write cassette: " + path);
    }
    out << to_json();
}

std::string cassette::to_json() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& e : _entries) {
        doc.push_back({
            {"digest", e.digest},
            {"template_id", e.template_id},
            {"temperature", e.temperature},
            {"response", e.response},
            {"recorded_at", e.recorded_at},
        });
    }
    return doc.dump(2) + "\n";
}

bool cassette::record(const entry& e) {
    auto it = _index.find(e.digest);
    if (it != _index.end()) {
        _entries[it->second] = e;
        return false;
    }
    _index[e.digest] = _entries.size();
    _entries.push_back(e);
    return true;
}

std::optional<std::string> cassette::lookup(const std::string& digest) const {
    auto it = _index.find(digest);
    if (it == _index.end()) return std::nullopt;
    return _entries[it->second].response;
}

std::string cassette::timestamp() const {
    if (_pinned_timestamp) return *_pinned_timestamp;
    std::time_t now = std::time(nullptr);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buffer;
}

// ---------------------------------------------------------------------------
// HTTP client.

http_client::http_client(options opts) : _opts(std::move(opts)) {
    if (_opts.endpoint.empty()) {
        throw environment_error("live LLM backend: endpoint is empty (set PF_LLM_ENDPOINT)");
    }
    if (_opts.model.empty()) {
        throw environment_error("live LLM backend: model is empty (set PF_LLM_MODEL)");
    }
}

http_client http_client::from_environment() {
    auto getenv_or = [](const char* name) {
        const char* value = std::getenv(name);
        return value != nullptr ? std::string(value) : std::string();
    };
    options opts;
    opts.endpoint = getenv_or("PF_LLM_ENDPOINT");
    opts.model = getenv_or("PF_LLM_MODEL");
    opts.api_key = getenv_or("PF_LLM_API_KEY");
    return http_client(std::move(opts));
}

// ---------------------------------------------------------------------------
// Gateway.

gateway::gateway(std::shared_ptr<client> backend) : _backend(std::move(backend)) {}

gateway::gateway(std::shared_ptr<client> backend, std::shared_ptr<cassette> tape)
    : _backend(std::move(backend)), _tape(std::move(tape)) {}

gateway::gateway(std::shared_ptr<cassette> tape) : _tape(std::move(tape)) {}

llm_exchange gateway::complete(const std::string& template_id,
                               const substitution_list& substitutions, double temperature,
                               int max_tokens) {
    if (temperature < 0.0 || temperature > 1.0) {
        throw usage_error("complete: temperature must be in [0,1]");
    }
    const prompt_template& tmpl = _templates.get(template_id);

    completion_request request;
    request.template_id = template_id;
    request.substitutions = substitutions;
    request.temperature = temperature;
    request.max_tokens = max_tokens;
    request.rendered_prompt = tmpl.render(substitutions);
    std::string digest = request_digest(template_id, substitutions, temperature);

    std::lock_guard<std::mutex> lock(_mutex);

    if (_backend == nullptr) { // replay
        auto response = _tape->lookup(digest);
        if (!response) {
            throw cassette_miss_error(digest);
        }
        llm_exchange exchange;
        exchange.template_id = template_id;
        exchange.substitutions = substitutions;
        exchange.temperature = temperature;
        exchange.max_tokens = max_tokens;
        exchange.response_text = *response;
        exchange.source = exchange_source::cassette;
        exchange.digest = digest;
        return exchange;
    }

    llm_exchange exchange = _backend->complete(request);
    exchange.digest = digest;
    if (_tape != nullptr) { // record
        cassette::entry e;
        e.digest = digest;
        e.template_id = template_id;
        e.temperature = temperature;
        e.response = exchange.response_text;
        e.recorded_at = _tape->timestamp();
        if (!_tape->record(e)) {
            std::cerr << "[proofforge] cassette: overwrote duplicate digest " << digest << "\n";
        }
    }
    return exchange;
}

// ---------------------------------------------------------------------------
// Response parsing.

bool parse_verdict(const std::string& response_text) {
    std::string word;
    for (std::size_t i = 0; i <= response_text.size(); ++i) {
        char c = i < response_text.size() ? response_text[i] : ' ';
        if (std::isalpha(static_cast<unsigned char>(c))) {
            word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            if (word == "yes") return true;
            if (word == "no") return false;
            word.clear();
        }
    }
    throw parse_error("verdict response contains neither 'yes' nor 'no': " +
                      response_text.substr(0, 120));
}

extracted_code extract_code_block(const std::string& response_text) {
    if (response_text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw parse_error("empty response where a code block was expected");
    }
    std::size_t open = response_text.find("```");
    if (open == std::string::npos) {
        return {response_text, /*low_confidence=*/true};
    }
    std::size_t content_start = response_text.find('\n', open);
    if (content_start == std::string::npos) {
        return {response_text, /*low_confidence=*/true};
    }
    ++content_start;
    std::size_t close = response_text.find("```", content_start);
    if (close == std::string::npos) {
        return {response_text, /*low_confidence=*/true};
    }
    std::string block = response_text.substr(content_start, close - content_start);
    while (!block.empty() && (block.back() == '\n' || block.back() == '\r')) block.pop_back();
    return {block + "\n", /*low_confidence=*/false};
}

} // namespace proofforge::llm
