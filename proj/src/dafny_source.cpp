#include "proofforge/dafny_source.hpp"

#include "proofforge/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace proofforge::dafny {

namespace {

bool is_identifier_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '?';
}

bool is_identifier_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '?';
}

// Longest first so maximal munch works with a simple prefix scan.
constexpr std::array<const char*, 16> multi_char_puncts = {
    "<==>", "==>", "<==", "==", "!=", "<=", ">=", ":=", "::", ":|", "..",
    "&&",   "||",  "=>",  "->", "!!",
};

} // namespace

std::vector<token> scan(const std::string& text) {
    std::vector<token> tokens;
    std::size_t i = 0;
    int line = 1;
    int column = 1;

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        // Line comment.
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        // Block comment; Dafny block comments nest.
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            int start_line = line;
            int depth = 0;
            do {
                if (i + 1 < text.size() && text[i] == '/' && text[i + 1] == '*') {
                    ++depth;
                    advance(2);
                } else if (i + 1 < text.size() && text[i] == '*' && text[i + 1] == '/') {
                    --depth;
                    advance(2);
                } else if (i < text.size()) {
                    advance(1);
                } else {
                    break;
                }
            } while (depth > 0 && i < text.size());
            if (depth > 0) {
                throw parse_error("unterminated block comment starting at line " +
                                  std::to_string(start_line));
            }
            continue;
        }

        token tok;
        tok.line = line;
        tok.column = column;
        tok.begin = i;

        if (is_identifier_start(c)) {
            std::size_t start = i;
            while (i < text.size() && is_identifier_char(text[i])) advance(1);
            tok.k = token::kind::identifier;
            tok.text = text.substr(start, i - start);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            if (c == '0' && i + 1 < text.size() && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
                advance(2);
                while (i < text.size() &&
                       std::isxdigit(static_cast<unsigned char>(text[i]))) {
                    advance(1);
                }
            } else {
                while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) ||
                                           text[i] == '_')) {
                    advance(1);
                }
                if (i + 1 < text.size() && text[i] == '.' &&
                    std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                    advance(1);
                    while (i < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[i]))) {
                        advance(1);
                    }
                }
            }
            tok.k = token::kind::number;
            tok.text = text.substr(start, i - start);
        } else if (c == '"' || (c == '@' && i + 1 < text.size() && text[i + 1] == '"')) {
            std::size_t start = i;
            int start_line = line;
            bool verbatim = c == '@';
            advance(verbatim ? 2 : 1);
            bool closed = false;
            while (i < text.size()) {
                if (verbatim) {
                    if (text[i] == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                        advance(2);
                        continue;
                    }
                    if (text[i] == '"') {
                        advance(1);
                        closed = true;
                        break;
                    }
                } else {
                    if (text[i] == '\\' && i + 1 < text.size()) {
                        advance(2);
                        continue;
                    }
                    if (text[i] == '"') {
                        advance(1);
                        closed = true;
                        break;
                    }
                }
                advance(1);
            }
            if (!closed) {
                throw parse_error("unterminated string literal at line " +
                                  std::to_string(start_line));
            }
            tok.k = token::kind::string_literal;
            tok.text = text.substr(start, i - start);
        } else if (c == '\'') {
            // Character literal; identifiers never start with a prime.
            std::size_t start = i;
            advance(1);
            if (i < text.size() && text[i] == '\\') advance(1);
            if (i < text.size()) advance(1);
            if (i < text.size() && text[i] == '\'') advance(1);
            tok.k = token::kind::string_literal;
            tok.text = text.substr(start, i - start);
        } else {
            const char* matched = nullptr;
            for (const char* punct : multi_char_puncts) {
                std::size_t len = std::char_traits<char>::length(punct);
                if (text.compare(i, len, punct) == 0) {
                    matched = punct;
                    break;
                }
            }
            if (matched) {
                std::size_t len = std::char_traits<char>::length(matched);
                advance(len);
                tok.text = matched;
            } else {
                tok.text = std::string(1, c);
                advance(1);
            }
            tok.k = token::kind::punct;
        }
        tok.end = i;
        tokens.push_back(std::move(tok));
    }

    token eof;
    eof.k = token::kind::end;
    eof.line = line;
    eof.column = column;
    eof.begin = text.size();
    eof.end = text.size();
    tokens.push_back(std::move(eof));
    return tokens;
}

namespace {

const std::set<std::string> modifier_keywords = {
    "ghost", "static", "twostate", "least", "greatest", "opaque", "abstract",
};

const std::set<std::string> target_keywords = {
    "method", "lemma", "function", "predicate",
};

const std::set<std::string> other_starter_keywords = {
    "module", "import",  "export", "include", "class", "trait",    "iterator",
    "datatype", "codatatype", "newtype", "type", "const",
};

const std::set<std::string> clause_keywords = {
    "requires", "ensures", "reads", "modifies", "decreases", "invariant",
};

// Tokens after which a '{' continues an expression (set display,
// comprehension) rather than opening a body.
bool brace_continues_expression(const token& previous) {
    if (previous.k == token::kind::punct) {
        return previous.text != ")" && previous.text != "]" && previous.text != "}";
    }
    if (previous.k == token::kind::identifier) {
        return previous.text == "then" || previous.text == "else" || previous.text == "in" ||
               previous.text == "case";
    }
    return false;
}

bool is_starter(const token& tok) {
    if (tok.k != token::kind::identifier) return false;
    return modifier_keywords.count(tok.text) > 0 || target_keywords.count(tok.text) > 0 ||
           other_starter_keywords.count(tok.text) > 0;
}

declaration_kind kind_from_keyword(const std::string& keyword) {
    if (keyword == "method") return declaration_kind::method;
    if (keyword == "lemma") return declaration_kind::lemma;
    if (keyword == "function") return declaration_kind::function;
    return declaration_kind::predicate;
}

class structural_parser {
public:
    structural_parser(const std::string& text, std::vector<token> tokens)
        : _text(text), _tokens(std::move(tokens)) {}

    program run() {
        program result;
        result.text = _text;
        parse_region(result.declarations, /*inside_module=*/false);
        return result;
    }

private:
    const std::string& _text;
    std::vector<token> _tokens;
    std::size_t _pos = 0;

    [[nodiscard]] const token& cur() const { return _tokens[_pos]; }
    [[nodiscard]] const token& peek(std::size_t ahead = 1) const {
        std::size_t idx = std::min(_pos + ahead, _tokens.size() - 1);
        return _tokens[idx];
    }
    [[nodiscard]] bool at_end() const { return cur().k == token::kind::end; }
    void next() {
        if (!at_end()) ++_pos;
    }

    [[nodiscard]] std::string slice(std::size_t begin, std::size_t end) const {
        std::string raw = _text.substr(begin, end - begin);
        // Trim outer whitespace; interior spelling stays verbatim.
        std::size_t first = raw.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) return "";
        std::size_t last = raw.find_last_not_of(" \t\r\n");
        return raw.substr(first, last - first + 1);
    }

    // Skips a balanced (), [], or {} group; cursor on the opener.
    void skip_balanced() {
        std::string open = cur().text;
        std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
        int depth = 0;
        while (!at_end()) {
            if (cur().text == open) ++depth;
            else if (cur().text == close && --depth == 0) {
                next();
                return;
            }
            next();
        }
        throw parse_error("unbalanced '" + open + "' starting near line " +
                          std::to_string(cur().line));
    }

    void skip_attribute() { // cursor on '{', next is ':'
        skip_balanced();
    }

    [[nodiscard]] bool at_attribute() const {
        return cur().is("{") && peek().is(":");
    }

    // True when the '{' under the cursor opens a body, judged from the
    // previous significant token.
    [[nodiscard]] bool at_body_brace() const {
        if (!cur().is("{") || at_attribute()) return false;
        if (_pos == 0) return false;
        return !brace_continues_expression(_tokens[_pos - 1]);
    }

    void parse_region(std::vector<declaration>& out, bool inside_module) {
        while (!at_end()) {
            if (inside_module && cur().is("}")) return;
            if (cur().k == token::kind::identifier && cur().text == "module") {
                parse_module(out);
                continue;
            }
            if (cur().k == token::kind::identifier &&
                (modifier_keywords.count(cur().text) > 0 || target_keywords.count(cur().text) > 0)) {
                parse_target_declaration(out);
                continue;
            }
            if (cur().k == token::kind::identifier && other_starter_keywords.count(cur().text) > 0) {
                skip_opaque_declaration(inside_module);
                continue;
            }
            next(); // stray token; tolerate
        }
    }

    void parse_module(std::vector<declaration>& out) {
        next(); // module
        while (!at_end() && !cur().is("{")) {
            if (at_attribute()) {
                skip_attribute();
                continue;
            }
            next();
        }
        if (at_end()) return;
        next(); // '{'
        parse_region(out, /*inside_module=*/true);
        if (cur().is("}")) next();
    }

    void skip_opaque_declaration(bool inside_module) {
        next(); // the starter keyword
        while (!at_end()) {
            if (inside_module && cur().is("}")) return;
            if (cur().is("(") || cur().is("[")) {
                skip_balanced();
                continue;
            }
            if (cur().is("{")) {
                skip_balanced();
                // A braced group usually ends the declaration (class body,
                // datatype members).
                if (is_starter(cur()) || at_end()) return;
                continue;
            }
            if (is_starter(cur())) return;
            next();
        }
    }

    void parse_target_declaration(std::vector<declaration>& out) {
        declaration decl;
        decl.begin = cur().begin;
        decl.line = cur().line;

        while (cur().k == token::kind::identifier && modifier_keywords.count(cur().text) > 0) {
            next();
        }
        if (cur().k != token::kind::identifier || target_keywords.count(cur().text) == 0) {
            // Modifier with no recognizable kind ('ghost var x'); treat as opaque.
            while (!at_end() && !cur().is(";") && !is_starter(cur())) next();
            if (cur().is(";")) next();
            return;
        }
        std::string kind_keyword = cur().text;
        next();
        if (kind_keyword == "function" || kind_keyword == "predicate") {
            if (cur().k == token::kind::identifier && cur().text == "method") next();
        }
        decl.kind = kind_from_keyword(kind_keyword);
        decl.proof_target = true;

        while (at_attribute()) skip_attribute();
        if (cur().k != token::kind::identifier) {
            throw parse_error("expected a name after '" + kind_keyword + "' at line " +
                              std::to_string(cur().line));
        }
        decl.name = cur().text;
        decl.signature.kind = decl.kind;
        decl.signature.name = decl.name;
        next();
        while (at_attribute()) skip_attribute();

        if (cur().is("<")) skip_angle_group();

        if (cur().is("(")) {
            decl.signature.parameters = parse_typed_names();
        }

        // Method/lemma returns clause, function return type.
        if (cur().k == token::kind::identifier && cur().text == "returns") {
            next();
            if (cur().is("(")) {
                decl.signature.returns = parse_typed_names();
            }
        } else if (cur().is(":") && decl.kind == declaration_kind::function) {
            next();
            std::size_t type_begin = cur().begin;
            while (!at_end() && !at_clause_start() && !at_body_brace() && !is_starter(cur()) &&
                   !cur().is("{")) {
                if (cur().is("<")) {
                    skip_angle_group();
                    continue;
                }
                if (cur().is("(")) {
                    skip_balanced();
                    continue;
                }
                next();
            }
            decl.signature.returns.push_back({"", slice(type_begin, previous_end())});
        }

        parse_spec_clauses(decl);

        if (at_body_brace()) {
            decl.has_body = true;
            decl.head_end = cur().begin;
            decl.body_begin = cur().begin;
            std::size_t body_token_start = _pos;
            skip_balanced();
            decl.body_end = _tokens[_pos - 1].end;
            decl.end = decl.body_end;
            scan_body(decl, body_token_start + 1, _pos - 1, 0);
        } else {
            decl.has_body = false;
            decl.head_end = previous_end();
            decl.end = decl.head_end;
        }

        for (const auto& clause : decl.spec_clauses) {
            if (clause.keyword == "requires") decl.signature.requires_clauses.push_back(clause.text);
            if (clause.keyword == "ensures") decl.signature.ensures_clauses.push_back(clause.text);
        }
        out.push_back(std::move(decl));
    }

    [[nodiscard]] std::size_t previous_end() const {
        return _pos == 0 ? 0 : _tokens[_pos - 1].end;
    }

    void skip_angle_group() { // cursor on '<'
        int depth = 0;
        while (!at_end()) {
            if (cur().is("<")) ++depth;
            else if (cur().is(">") && --depth == 0) {
                next();
                return;
            } else if (depth == 0) {
                return;
            }
            next();
        }
    }

    [[nodiscard]] bool at_clause_start() const {
        return cur().k == token::kind::identifier && clause_keywords.count(cur().text) > 0;
    }

    void parse_spec_clauses(declaration& decl) {
        while (at_clause_start()) {
            clause cl;
            cl.keyword = cur().text;
            cl.begin = cur().begin;
            cl.line = cur().line;
            next();
            std::size_t expr_begin = cur().begin;
            consume_clause_expression();
            cl.end = previous_end();
            cl.text = slice(expr_begin, cl.end);
            decl.spec_clauses.push_back(std::move(cl));
        }
    }

    // Consumes an expression until the next clause keyword, body brace, or
    // declaration boundary, balancing groups along the way.
    void consume_clause_expression() {
        while (!at_end()) {
            if (at_clause_start()) return;
            if (cur().is("(") || cur().is("[")) {
                skip_balanced();
                continue;
            }
            if (cur().is("{")) {
                if (at_body_brace()) return;
                skip_balanced();
                continue;
            }
            if (cur().is(";") || cur().is("}")) return;
            if (is_starter(cur()) && !brace_continues_expression(_tokens[_pos - 1])) return;
            next();
        }
    }

    std::vector<typed_name> parse_typed_names() { // cursor on '('
        std::vector<typed_name> names;
        next(); // '('
        while (!at_end() && !cur().is(")")) {
            typed_name item;
            while (cur().k == token::kind::identifier &&
                   (cur().text == "ghost" || cur().text == "nameonly")) {
                next();
            }
            if (cur().k == token::kind::identifier) {
                item.name = cur().text;
                next();
            }
            if (cur().is(":")) {
                next();
                std::size_t type_begin = cur().begin;
                int depth = 0;
                while (!at_end()) {
                    if (cur().is("(") || cur().is("[")) {
                        skip_balanced();
                        continue;
                    }
                    if (cur().is("<")) ++depth;
                    if (cur().is(">")) --depth;
                    if (depth == 0 && (cur().is(",") || cur().is(")"))) break;
                    next();
                }
                item.type_text = slice(type_begin, previous_end());
            }
            names.push_back(std::move(item));
            if (cur().is(",")) next();
        }
        if (cur().is(")")) next();
        return names;
    }

    // Walks statement tokens inside [first, last) token indices, recording
    // loops, asserts, and bare call statements on the declaration.
    void scan_body(declaration& decl, std::size_t first, std::size_t last, int loop_depth) {
        std::size_t i = first;
        while (i < last) {
            const token& tok = _tokens[i];
            if (tok.k == token::kind::identifier && (tok.text == "while" || tok.text == "for")) {
                i = scan_loop(decl, i, last, loop_depth);
                continue;
            }
            if (tok.k == token::kind::identifier && tok.text == "assert") {
                i = scan_assert(decl, i, last);
                continue;
            }
            if (tok.k == token::kind::identifier && i + 1 < last && _tokens[i + 1].is("(") &&
                at_statement_position(i, first)) {
                std::size_t after = balanced_end(i + 1, last);
                if (after < last && _tokens[after].is(";")) {
                    call_statement call;
                    call.begin = tok.begin;
                    call.end = _tokens[after].end;
                    call.callee = tok.text;
                    call.line = tok.line;
                    decl.calls.push_back(std::move(call));
                    i = after + 1;
                    continue;
                }
            }
            ++i;
        }
        std::sort(decl.loops.begin(), decl.loops.end(),
                  [](const loop_statement& a, const loop_statement& b) { return a.begin < b.begin; });
    }

    [[nodiscard]] bool at_statement_position(std::size_t idx, std::size_t first) const {
        if (idx == first) return true;
        const token& prev = _tokens[idx - 1];
        return prev.is(";") || prev.is("{") || prev.is("}");
    }

    // Token index just past the group opened at `open_idx`.
    [[nodiscard]] std::size_t balanced_end(std::size_t open_idx, std::size_t limit) const {
        std::string open = _tokens[open_idx].text;
        std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
        int depth = 0;
        for (std::size_t i = open_idx; i < limit; ++i) {
            if (_tokens[i].text == open) ++depth;
            else if (_tokens[i].text == close && --depth == 0) return i + 1;
        }
        return limit;
    }

    std::size_t scan_loop(declaration& decl, std::size_t start, std::size_t last, int loop_depth) {
        loop_statement loop;
        loop.begin = _tokens[start].begin;
        loop.line = _tokens[start].line;
        loop.depth = loop_depth;
        loop.is_for = _tokens[start].text == "for";

        std::size_t i = start + 1;
        // Loop head: guard/range expression plus spec clauses, then the body.
        while (i < last) {
            const token& tok = _tokens[i];
            if (tok.is("(") || tok.is("[")) {
                i = balanced_end(i, last);
                continue;
            }
            if (tok.is("{")) {
                if (i + 1 < last && _tokens[i + 1].is(":")) { // attribute
                    i = balanced_end(i, last);
                    continue;
                }
                if (brace_continues_expression(_tokens[i - 1])) { // set display in guard
                    i = balanced_end(i, last);
                    continue;
                }
                break; // body
            }
            if (tok.k == token::kind::identifier &&
                (tok.text == "invariant" || tok.text == "decreases" || tok.text == "modifies")) {
                clause cl;
                cl.keyword = tok.text;
                cl.begin = tok.begin;
                cl.line = tok.line;
                ++i;
                std::size_t expr_begin = i < last ? _tokens[i].begin : tok.end;
                while (i < last) {
                    const token& t2 = _tokens[i];
                    if (t2.is("(") || t2.is("[")) {
                        i = balanced_end(i, last);
                        continue;
                    }
                    if (t2.k == token::kind::identifier &&
                        (t2.text == "invariant" || t2.text == "decreases" || t2.text == "modifies")) {
                        break;
                    }
                    if (t2.is("{")) {
                        if (i + 1 < last && _tokens[i + 1].is(":")) {
                            i = balanced_end(i, last);
                            continue;
                        }
                        if (brace_continues_expression(_tokens[i - 1])) {
                            i = balanced_end(i, last);
                            continue;
                        }
                        break;
                    }
                    ++i;
                }
                cl.end = _tokens[i - 1].end;
                cl.text = slice(expr_begin, cl.end);
                if (cl.keyword == "invariant") loop.invariants.push_back(std::move(cl));
                else if (cl.keyword == "decreases") loop.decreases_clauses.push_back(std::move(cl));
                continue;
            }
            ++i;
        }

        if (i < last && _tokens[i].is("{")) {
            loop.body_begin = _tokens[i].begin;
            std::size_t body_end_idx = balanced_end(i, last);
            loop.body_end = _tokens[body_end_idx - 1].end;
            loop.end = loop.body_end;
            scan_body(decl, i + 1, body_end_idx - 1, loop_depth + 1);
            decl.loops.push_back(std::move(loop));
            return body_end_idx;
        }
        // Body-less loop (spec-only form); ends at the last head token.
        loop.end = _tokens[i > start ? i - 1 : start].end;
        decl.loops.push_back(std::move(loop));
        return i;
    }

    std::size_t scan_assert(declaration& decl, std::size_t start, std::size_t last) {
        assert_statement stmt;
        stmt.begin = _tokens[start].begin;
        stmt.line = _tokens[start].line;
        stmt.column = _tokens[start].column;

        std::size_t i = start + 1;
        while (i < last && _tokens[i].is("{") && i + 1 < last && _tokens[i + 1].is(":")) {
            i = balanced_end(i, last); // attribute
        }
        std::size_t expr_begin = i < last ? _tokens[i].begin : stmt.begin;
        std::size_t expr_end = expr_begin;
        while (i < last) {
            const token& tok = _tokens[i];
            if (tok.is("(") || tok.is("[")) {
                i = balanced_end(i, last);
                expr_end = _tokens[i - 1].end;
                continue;
            }
            if (tok.is("{")) {
                if (brace_continues_expression(_tokens[i - 1])) {
                    i = balanced_end(i, last);
                    expr_end = _tokens[i - 1].end;
                    continue;
                }
                break; // unexpected body brace; treat as statement end
            }
            if (tok.is(";")) {
                stmt.end = tok.end;
                stmt.expression_text = slice(expr_begin, expr_end);
                decl.asserts.push_back(std::move(stmt));
                return i + 1;
            }
            if (tok.k == token::kind::identifier && tok.text == "by") {
                stmt.expression_text = slice(expr_begin, expr_end);
                ++i;
                if (i < last && _tokens[i].is("{")) {
                    stmt.has_by = true;
                    stmt.by_body_begin = _tokens[i].begin;
                    std::size_t end_idx = balanced_end(i, last);
                    stmt.by_body_end = _tokens[end_idx - 1].end;
                    stmt.end = stmt.by_body_end;
                    decl.asserts.push_back(std::move(stmt));
                    return end_idx;
                }
                break;
            }
            expr_end = tok.end;
            ++i;
        }
        stmt.end = expr_end;
        stmt.expression_text = slice(expr_begin, expr_end);
        decl.asserts.push_back(std::move(stmt));
        return i;
    }
};

} // namespace

const declaration* program::find(const std::string& name) const {
    for (const auto& decl : declarations) {
        if (decl.name == name) return &decl;
    }
    return nullptr;
}

program parse_program(const std::string& text) {
    structural_parser parser(text, scan(text));
    program result = parser.run();
    if (result.declarations.empty()) {
        throw parse_error("program contains no declarations");
    }
    return result;
}

std::string syntax_check(const std::string& text) {
    try {
        (void)parse_program(text);
        return "";
    } catch (const parse_error& e) {
        return e.what();
    }
}

std::vector<std::pair<std::size_t, std::size_t>> annotation_spans(const program& prog) {
    std::set<std::string> lemma_names;
    for (const auto& decl : prog.declarations) {
        if (decl.kind == declaration_kind::lemma) lemma_names.insert(decl.name);
    }

    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& decl : prog.declarations) {
        if (decl.kind == declaration_kind::lemma) {
            spans.emplace_back(decl.begin, decl.end);
            continue;
        }
        for (const auto& clause : decl.spec_clauses) {
            if (clause.keyword == "decreases") spans.emplace_back(clause.begin, clause.end);
        }
        for (const auto& loop : decl.loops) {
            for (const auto& clause : loop.invariants) spans.emplace_back(clause.begin, clause.end);
            for (const auto& clause : loop.decreases_clauses) {
                spans.emplace_back(clause.begin, clause.end);
            }
        }
        for (const auto& stmt : decl.asserts) spans.emplace_back(stmt.begin, stmt.end);
        for (const auto& call : decl.calls) {
            if (lemma_names.count(call.callee) > 0) spans.emplace_back(call.begin, call.end);
        }
    }
    return spans;
}

} // namespace

std::vector<std::string> executable_tokens(const std::string& text) {
    program prog = parse_program(text);
    auto spans = annotation_spans(prog);
    std::sort(spans.begin(), spans.end());

    std::vector<std::string> kept;
    std::size_t span_idx = 0;
    for (const auto& tok : scan(text)) {
        if (tok.k == token::kind::end) break;
        while (span_idx < spans.size() && spans[span_idx].second <= tok.begin) ++span_idx;
        bool inside = span_idx < spans.size() && tok.begin >= spans[span_idx].first &&
                      tok.end <= spans[span_idx].second;
        if (!inside) kept.push_back(tok.text);
    }
    return kept;
}

bool same_executable_tokens(const std::string& a, const std::string& b) {
    return executable_tokens(a) == executable_tokens(b);
}

std::string cut_spans(const std::string& text,
                      std::vector<std::pair<std::size_t, std::size_t>> spans) {
    if (spans.empty()) return text;
    std::sort(spans.begin(), spans.end());

    // Merge overlaps first so widening never double-counts.
    std::vector<std::pair<std::size_t, std::size_t>> merged;
    for (const auto& span : spans) {
        if (!merged.empty() && span.first <= merged.back().second) {
            merged.back().second = std::max(merged.back().second, span.second);
        } else {
            merged.push_back(span);
        }
    }

    auto only_blank = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i) {
            if (text[i] != ' ' && text[i] != '\t' && text[i] != '\r') return false;
        }
        return true;
    };

    // Widen a span to swallow its whole line(s) when nothing else is left
    // on them.
    for (auto& [begin, end] : merged) {
        std::size_t line_start = text.rfind('\n', begin == 0 ? 0 : begin - 1);
        line_start = line_start == std::string::npos ? 0 : line_start + 1;
        std::size_t line_end = text.find('\n', end);
        line_end = line_end == std::string::npos ? text.size() : line_end + 1;
        if (only_blank(line_start, begin) && only_blank(end, line_end == text.size() ? line_end : line_end - 1)) {
            begin = line_start;
            end = line_end;
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> final_spans;
    for (const auto& span : merged) {
        if (!final_spans.empty() && span.first <= final_spans.back().second) {
            final_spans.back().second = std::max(final_spans.back().second, span.second);
        } else {
            final_spans.push_back(span);
        }
    }

    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;
    for (const auto& [begin, end] : final_spans) {
        out.append(text, cursor, begin - cursor);
        cursor = end;
    }
    out.append(text, cursor, text.size() - cursor);
    return out;
}

std::string replace_declaration(const program& source, const declaration& decl,
                                const std::string& replacement) {
    std::string out;
    out.reserve(source.text.size() + replacement.size());
    out.append(source.text, 0, decl.begin);
    out.append(replacement);
    out.append(source.text, decl.end, source.text.size() - decl.end);
    return out;
}

} // namespace proofforge::dafny
