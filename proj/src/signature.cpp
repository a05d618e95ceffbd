#include "proofforge/signature.hpp"

#include "proofforge/dafny_source.hpp"
#include "proofforge/errors.hpp"

#include <sstream>

namespace proofforge {

std::string to_string(declaration_kind kind) {
    switch (kind) {
        case declaration_kind::method: return "method";
        case declaration_kind::lemma: return "lemma";
        case declaration_kind::function: return "function";
        case declaration_kind::predicate: return "predicate";
    }
    return "lemma";
}

namespace {

void render_typed_names(std::ostringstream& out, const std::vector<typed_name>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out << ", ";
        if (!names[i].name.empty()) {
            out << names[i].name;
            if (!names[i].type_text.empty()) out << ": ";
        }
        out << names[i].type_text;
    }
}

} // namespace

std::string method_signature::render() const {
    std::ostringstream out;
    out << to_string(kind) << " " << name << "(";
    render_typed_names(out, parameters);
    out << ")";
    if (!returns.empty()) {
        if (kind == declaration_kind::function) {
            out << ": " << returns.front().type_text;
        } else if (kind == declaration_kind::method || kind == declaration_kind::lemma) {
            out << " returns (";
            render_typed_names(out, returns);
            out << ")";
        }
    }
    for (const auto& clause : requires_clauses) {
        out << "\n  requires " << clause;
    }
    for (const auto& clause : ensures_clauses) {
        out << "\n  ensures " << clause;
    }
    return out.str();
}

std::string method_signature::render_bodiless() const {
    return render() + "\n";
}

std::string method_signature::normalized() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& tok : dafny::scan(render())) {
        if (tok.k == dafny::token::kind::end) break;
        if (!first) out << ' ';
        out << tok.text;
        first = false;
    }
    return out.str();
}

method_signature parse_signature(const std::string& text) {
    dafny::program prog = dafny::parse_program(text);
    for (const auto& decl : prog.declarations) {
        if (decl.proof_target) return decl.signature;
    }
    throw parse_error("no method, lemma, function, or predicate declaration found");
}

} // namespace proofforge
