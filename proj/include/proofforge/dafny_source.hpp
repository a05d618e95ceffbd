#pragma once

#include "proofforge/signature.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace proofforge::dafny {

// Lexical token. Comments and whitespace are skipped by scan(); offsets
// index the original text so spans can be cut or replaced byte-exactly.
struct token {
    enum class kind { identifier, number, string_literal, punct, end };
    kind k = kind::end;
    std::string text;
    int line = 1;
    int column = 1;
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] bool is(const char* s) const { return text == s; }
};

// Throws parse_error on an unterminated string or comment.
[[nodiscard]] std::vector<token> scan(const std::string& text);

// A spec clause (requires/ensures/invariant/decreases/...): offsets cover
// keyword through end of expression; `text` is the expression alone.
struct clause {
    std::string keyword;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
    int line = 1;
};

struct assert_statement {
    std::size_t begin = 0;
    std::size_t end = 0; // past ';' or past the by-block '}'
    int line = 1;
    int column = 1;
    std::string expression_text;
    bool has_by = false;
    std::size_t by_body_begin = 0; // offset of the by-block '{'
    std::size_t by_body_end = 0;   // past its '}'
};

// A bare `Name(args);` statement. Candidate for lemma-call stripping when
// Name is a lemma in the same program.
struct call_statement {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string callee;
    int line = 1;
};

struct loop_statement {
    std::size_t begin = 0;
    std::size_t end = 0; // past the body '}'
    std::size_t body_begin = 0;
    std::size_t body_end = 0;
    int line = 1;
    int depth = 0; // 0 = not nested inside another loop
    bool is_for = false;
    std::vector<clause> invariants;
    std::vector<clause> decreases_clauses;
};

struct declaration {
    declaration_kind kind = declaration_kind::method;
    bool proof_target = false; // method/lemma/function/predicate
    std::string name;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t head_end = 0; // start of body '{', or == end when bodiless
    bool has_body = false;
    std::size_t body_begin = 0;
    std::size_t body_end = 0;
    int line = 1;
    std::vector<clause> spec_clauses;
    std::vector<loop_statement> loops; // in source order
    std::vector<assert_statement> asserts;
    std::vector<call_statement> calls;
    method_signature signature; // populated for proof targets

    [[nodiscard]] int loop_count() const { return static_cast<int>(loops.size()); }
};

struct program {
    std::string text;
    std::vector<declaration> declarations;

    [[nodiscard]] const declaration* find(const std::string& name) const;
};

// Structural pass over the token stream. Tolerant of constructs it does
// not model (datatypes, consts, modules are scanned through); throws
// parse_error on unbalanced delimiters or an empty program.
[[nodiscard]] program parse_program(const std::string& text);

// Cheap well-formedness gate: scans, parses, requires at least one
// declaration. Returns the failure message instead of throwing.
[[nodiscard]] std::string syntax_check(const std::string& text);

// Byte spans of every annotation construct: invariant clauses, assert
// statements, lemma declarations, bare lemma-call statements, and loop or
// method decreases clauses.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> annotation_spans(
    const program& prog);

// Token texts of the program with every annotation construct removed:
// invariant clauses, assert statements, lemma declarations and bare calls
// to them, loop/method decreases clauses. What remains is the executable
// skeleton plus contracts and spec functions.
[[nodiscard]] std::vector<std::string> executable_tokens(const std::string& text);

[[nodiscard]] bool same_executable_tokens(const std::string& a, const std::string& b);

// Removes the given byte spans from `text`. A span is widened to eat its
// whole line(s) when nothing else is on them.
[[nodiscard]] std::string cut_spans(const std::string& text,
                                    std::vector<std::pair<std::size_t, std::size_t>> spans);

// Replaces one declaration's span with new text, keeping everything else
// byte-identical.
[[nodiscard]] std::string replace_declaration(const program& source, const declaration& decl,
                                              const std::string& replacement);

} // namespace proofforge::dafny
