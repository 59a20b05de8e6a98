#include "biorw/parser.hpp"

#include "lexer.hpp"
#include "rule_parse.hpp"

#include <set>
#include <stdexcept>

namespace biorw {

namespace {

using detail::Tok;
using detail::Token;

struct Parser {
    const std::vector<Token>& toks;
    Diagnostics& diags;
    std::size_t pos = 0;

    const Token& cur() const { return toks[pos]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_end() const { return at(Tok::End); }
    bool at_word(const char* w) const { return at(Tok::Ident) && cur().text == w; }

    void advance() {
        if (!at_end()) ++pos;
    }

    void skip_newlines() {
        while (at(Tok::Newline)) ++pos;
    }

    void error_here(const std::string& msg) {
        diags.push_back(make_error("syntax", msg, cur().span));
    }

    bool expect(Tok k) {
        if (at(k)) {
            advance();
            return true;
        }
        error_here(std::string("expected ") + detail::tok_name(k) + ", found " +
                   detail::tok_name(cur().kind));
        return false;
    }

    std::string expect_ident(const char* what) {
        if (at(Tok::Ident)) {
            std::string name = cur().text;
            advance();
            return name;
        }
        error_here(std::string("expected ") + what);
        return "";
    }

    void sync_line() {
        while (!at(Tok::Newline) && !at_end()) advance();
    }
};

// --- class files ---------------------------------------------------------

void parse_method(Parser& p, ClassDecl& decl, Formalism backend) {
    MethodDecl method;
    method.span = p.cur().span;
    method.name = p.expect_ident("method name");

    p.expect(Tok::LParen);
    std::set<std::string> param_names;
    if (!p.at(Tok::RParen)) {
        while (true) {
            std::string type = p.expect_ident("parameter type");
            Span var_span = p.cur().span;
            std::string var = p.expect_ident("parameter name");
            if (type.empty() || var.empty()) break;
            if (var == "this") {
                p.diags.push_back(
                    make_error("this-param", "`this` may not be a parameter", var_span));
            } else if (!param_names.insert(var).second) {
                p.diags.push_back(make_error(
                    "duplicate-param", "duplicate parameter '" + var + "'", var_span));
            }
            method.params.emplace_back(type, var);
            if (p.at(Tok::Comma)) {
                p.advance();
                continue;
            }
            break;
        }
    }
    p.expect(Tok::RParen);
    if (!p.expect(Tok::LBrace)) return;

    detail::RuleParseCtx ctx;
    ctx.backend = backend;
    ctx.params = &param_names;
    ctx.allow_this = true;

    p.skip_newlines();
    while (!p.at(Tok::RBrace) && !p.at_end()) {
        Span rule_span = p.cur().span;
        auto rules = detail::parse_rule_tokens(p.toks, p.pos, ctx, p.diags);
        for (auto& r : rules) {
            method.body.push_back(std::move(r));
            method.rule_spans.push_back(rule_span);
        }
        p.skip_newlines();
    }
    p.expect(Tok::RBrace);

    if (method.body.empty())
        p.diags.push_back(make_error(
            "syntax", "method '" + method.name + "' must contain at least one rule", method.span));

    for (const auto& existing : decl.methods) {
        if (existing.name == method.name) {
            p.diags.push_back(make_error("duplicate-method",
                                         "class '" + decl.name + "' declares method '" +
                                             method.name + "' twice",
                                         method.span));
            return;
        }
    }
    decl.methods.push_back(std::move(method));
}

void parse_class_decl(Parser& p, ClassTable& table, Formalism backend) {
    Span class_span = p.cur().span;
    p.advance(); // 'class'
    std::string name = p.expect_ident("class name");
    if (!p.at_word("extends")) {
        p.error_here("expected 'extends'");
        p.sync_line();
        return;
    }
    p.advance();
    std::string super = p.expect_ident("superclass name");
    if (!p.expect(Tok::LBrace)) return;

    ClassDecl decl;
    decl.name = name;
    decl.superclass = super;
    decl.span = class_span;

    p.skip_newlines();
    while (!p.at(Tok::RBrace) && !p.at_end()) {
        if (p.at(Tok::Ident)) {
            parse_method(p, decl, backend);
        } else {
            p.error_here("expected a method declaration");
            p.sync_line();
        }
        p.skip_newlines();
    }
    p.expect(Tok::RBrace);

    if (name.empty()) return;
    if (table.entries.count(name)) {
        p.diags.push_back(make_error("duplicate-class", "class '" + name + "' declared twice",
                                     class_span));
        return;
    }
    table.entries.emplace(name, std::move(decl));
}

// --- model files ----------------------------------------------------------

void parse_values_block(Parser& p, ParsedModel& out) {
    p.advance(); // 'values'
    if (!p.expect(Tok::LBrace)) return;
    p.skip_newlines();
    while (!p.at(Tok::RBrace) && !p.at_end()) {
        Span value_span = p.cur().span;
        std::string value = p.expect_ident("value name");
        if (value.empty()) {
            p.sync_line();
            p.skip_newlines();
            continue;
        }
        p.expect(Tok::Colon);
        std::string cls = p.expect_ident("class name");
        if (cls.empty()) {
            p.sync_line();
            p.skip_newlines();
            continue;
        }

        auto it = out.gamma.entries.find(value);
        if (it != out.gamma.entries.end()) {
            if (it->second != cls)
                p.diags.push_back(make_error("gamma-conflict",
                                             "value '" + value + "' is typed both '" + it->second +
                                                 "' and '" + cls + "'",
                                             value_span));
        } else {
            out.gamma.entries.emplace(value, cls);
            out.gamma_spans.emplace(value, value_span);
        }
        p.skip_newlines();
        if (p.at(Tok::Semi)) {
            p.advance();
            p.skip_newlines();
        }
    }
    p.expect(Tok::RBrace);
}

long long parse_count(Parser& p) {
    Span sp = p.cur().span;
    std::string digits = p.expect_ident("count");
    if (digits.empty()) return 1;
    for (char c : digits) {
        if (c < '0' || c > '9') {
            p.diags.push_back(make_error("syntax", "count must be a number", sp));
            return 1;
        }
    }
    long long n = 0;
    try {
        n = std::stoll(digits);
    } catch (const std::out_of_range&) {
        p.diags.push_back(make_error("syntax", "count is out of range", sp));
        return 1;
    }
    if (n < 1) {
        p.diags.push_back(make_error("syntax", "count must be at least 1", sp));
        return 1;
    }
    return n;
}

Multiset parse_multiset_block(Parser& p) {
    Multiset ms;
    if (!p.expect(Tok::LBrace)) return ms;
    p.skip_newlines();
    while (!p.at(Tok::RBrace) && !p.at_end()) {
        std::string name = p.expect_ident("symbol name");
        if (name.empty()) {
            p.sync_line();
            p.skip_newlines();
            continue;
        }
        long long count = 1;
        if (p.at(Tok::Star)) {
            p.advance();
            count = parse_count(p);
        }
        ms.add(name, count);
        p.skip_newlines();
        if (p.at(Tok::Comma)) {
            p.advance();
            p.skip_newlines();
        } else {
            break;
        }
    }
    p.skip_newlines();
    p.expect(Tok::RBrace);
    return ms;
}

Invocation parse_invoke(Parser& p) {
    p.advance(); // 'invoke'
    Invocation inv;
    inv.receiver = p.expect_ident("receiver value");
    p.expect(Tok::Dot);
    inv.method = p.expect_ident("method name");
    p.expect(Tok::LParen);
    if (!p.at(Tok::RParen)) {
        while (true) {
            inv.args.push_back(p.expect_ident("argument value"));
            if (p.at(Tok::Comma)) {
                p.advance();
                continue;
            }
            break;
        }
    }
    p.expect(Tok::RParen);
    return inv;
}

void parse_rule_item(Parser& p, Formalism backend, std::vector<RuleItem>& items) {
    Span span = p.cur().span;
    p.advance(); // 'rule'
    detail::RuleParseCtx ctx;
    ctx.backend = backend;
    for (auto& r : detail::parse_rule_tokens(p.toks, p.pos, ctx, p.diags))
        items.push_back(RuleItem{std::move(r), span});
}

Membrane parse_membrane(Parser& p, Formalism backend) {
    Membrane m;
    m.span = p.cur().span;
    p.advance(); // 'membrane'
    m.label = p.expect_ident("membrane label");
    std::vector<std::pair<std::pair<long long, long long>, Span>> raw_priorities;
    bool have_contents = false;
    if (!p.expect(Tok::LBrace)) return m;
    p.skip_newlines();
    while (!p.at(Tok::RBrace) && !p.at_end()) {
        if (p.at_word("contents")) {
            Span sp = p.cur().span;
            p.advance();
            if (have_contents)
                p.diags.push_back(make_error("syntax", "duplicate contents block", sp));
            m.contents = parse_multiset_block(p);
            have_contents = true;
        } else if (p.at_word("invoke")) {
            Span sp = p.cur().span;
            m.items.push_back(RuleItem{parse_invoke(p), sp});
        } else if (p.at_word("rule")) {
            parse_rule_item(p, backend, m.items);
        } else if (p.at_word("priority")) {
            Span sp = p.cur().span;
            p.advance();
            long long hi = parse_count(p);
            p.expect(Tok::Gt);
            long long lo = parse_count(p);
            raw_priorities.push_back({{hi, lo}, sp});
        } else if (p.at_word("membrane")) {
            m.children.push_back(parse_membrane(p, backend));
        } else {
            p.error_here("expected contents, invoke, rule, priority or membrane");
            p.sync_line();
        }
        p.skip_newlines();
    }
    p.expect(Tok::RBrace);

    const long long n = static_cast<long long>(m.items.size());
    for (const auto& [pair, sp] : raw_priorities) {
        auto [hi, lo] = pair;
        if (hi < 1 || hi > n || lo < 1 || lo > n) {
            p.diags.push_back(make_error(
                "priority-index", "priority refers to a rule slot that does not exist", sp));
            continue;
        }
        m.priorities.emplace_back(static_cast<int>(hi - 1), static_cast<int>(lo - 1));
    }
    return m;
}

} // namespace

ParsedClassFile parse_class_file(const std::string& text, Formalism backend) {
    ParsedClassFile out;
    auto toks = detail::lex(text, out.diags);
    Parser p{toks, out.diags};

    p.skip_newlines();
    while (!p.at_end()) {
        if (p.at_word("class")) {
            parse_class_decl(p, out.table, backend);
        } else {
            p.error_here("expected a class declaration");
            p.sync_line();
        }
        p.skip_newlines();
    }
    return out;
}

ParsedModel parse_model_file(const std::string& text) {
    ParsedModel out;
    auto toks = detail::lex(text, out.diags);
    Parser p{toks, out.diags};

    p.skip_newlines();
    while (p.at_word("use")) {
        p.advance();
        if (p.at(Tok::String)) {
            out.imports.push_back(p.cur().text);
            p.advance();
        } else {
            p.error_here("expected a quoted path after 'use'");
            p.sync_line();
        }
        p.skip_newlines();
    }

    Formalism formalism = Formalism::Generic;
    if (p.at_word("formalism")) {
        p.advance();
        std::string tag = p.expect_ident("formalism tag (generic, cls or psys)");
        if (tag == "generic") {
            formalism = Formalism::Generic;
        } else if (tag == "cls") {
            formalism = Formalism::Cls;
        } else if (tag == "psys") {
            formalism = Formalism::Psys;
        } else {
            p.diags.push_back(make_error("syntax", "unknown formalism '" + tag + "'",
                                         p.toks[p.pos ? p.pos - 1 : 0].span));
        }
    } else {
        p.error_here("model file must start with a formalism line");
    }
    out.model.formalism = formalism;
    switch (formalism) {
        case Formalism::Generic: out.model.body = GenericModel{}; break;
        case Formalism::Cls: out.model.body = ClsModel{}; break;
        case Formalism::Psys: out.model.body = PsysModel{}; break;
    }

    bool have_state = false;
    bool have_skin = false;
    p.skip_newlines();
    while (!p.at_end()) {
        if (p.at_word("values")) {
            parse_values_block(p, out);
        } else if (p.at_word("state") && formalism == Formalism::Generic) {
            Span sp = p.cur().span;
            p.advance();
            if (have_state) p.diags.push_back(make_error("syntax", "duplicate state block", sp));
            out.model.generic().state = parse_multiset_block(p);
            have_state = true;
        } else if (p.at_word("term") && formalism == Formalism::Cls) {
            Span sp = p.cur().span;
            p.advance();
            if (have_state) p.diags.push_back(make_error("syntax", "duplicate term block", sp));
            have_state = true;
            if (!p.expect(Tok::LBrace)) continue;
            detail::RuleParseCtx ctx;
            ctx.backend = Formalism::Cls;
            ClsPattern pat =
                detail::parse_cls_pattern_tokens(p.toks, p.pos, ctx, p.diags, true);
            p.skip_newlines();
            p.expect(Tok::RBrace);
            if (auto term = term_of_pattern(pat)) {
                out.model.cls().term = std::move(*term);
            } else {
                p.diags.push_back(make_error(
                    "not-ground", "the term of a model may not contain variables", sp));
            }
        } else if (p.at_word("membrane") && formalism == Formalism::Psys) {
            if (have_skin) {
                p.diags.push_back(make_error(
                    "syntax", "a P-system model has exactly one skin membrane", p.cur().span));
                p.sync_line();
            } else {
                out.model.psys().skin = parse_membrane(p, formalism);
                have_skin = true;
            }
        } else if (p.at_word("output") && formalism == Formalism::Psys) {
            p.advance();
            out.model.psys().output_label = p.expect_ident("output membrane label");
        } else if (p.at_word("invoke") && formalism != Formalism::Psys) {
            Span sp = p.cur().span;
            RuleItem item{parse_invoke(p), sp};
            if (formalism == Formalism::Generic)
                out.model.generic().items.push_back(std::move(item));
            else
                out.model.cls().items.push_back(std::move(item));
        } else if (p.at_word("rule") && formalism != Formalism::Psys) {
            auto& items = formalism == Formalism::Generic ? out.model.generic().items
                                                          : out.model.cls().items;
            parse_rule_item(p, formalism, items);
        } else {
            p.error_here("unexpected '" + p.cur().text + "' at model top level");
            p.sync_line();
        }
        p.skip_newlines();
    }

    if (formalism == Formalism::Psys && !have_skin)
        p.diags.push_back(make_error("syntax", "a P-system model needs a membrane block"));
    return out;
}

} // namespace biorw
