#pragma once

#include <string>
#include <vector>

namespace proofforge {

enum class declaration_kind { method, lemma, function, predicate };

[[nodiscard]] std::string to_string(declaration_kind kind);

// One named parameter or return value, with its Dafny type kept as text.
struct typed_name {
    std::string name;
    std::string type_text;
};

// A method/lemma/function/predicate head: everything up to (but not
// including) the body. Rendering one with no body yields a declaration the
// verifier treats as assumed.
struct method_signature {
    declaration_kind kind = declaration_kind::lemma;
    std::string name;
    std::vector<typed_name> parameters;
    std::vector<typed_name> returns;
    std::vector<std::string> requires_clauses;
    std::vector<std::string> ensures_clauses;

    // Multi-line Dafny text for the head alone (no body, no trailing brace).
    [[nodiscard]] std::string render() const;

    // Head followed by an empty line: a body-less declaration.
    [[nodiscard]] std::string render_bodiless() const;

    // Whitespace-insensitive canonical form used for duplicate detection
    // and the reuse pool.
    [[nodiscard]] std::string normalized() const;

    [[nodiscard]] bool operator==(const method_signature& other) const {
        return normalized() == other.normalized();
    }
};

// Parses the head of the first declaration found in `text`. Throws
// parse_error when no declaration is present.
[[nodiscard]] method_signature parse_signature(const std::string& text);

} // namespace proofforge
