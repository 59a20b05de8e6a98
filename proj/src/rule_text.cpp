#include "biorw/rule_text.hpp"

#include "lexer.hpp"
#include "rule_parse.hpp"

#include <sstream>

namespace biorw {

namespace {

std::string render_atom(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Value:
        case AtomKind::Param: return a.name;
        case AtomKind::ElemVar: return "?" + a.name;
        case AtomKind::SeqVar: return "~" + a.name;
        case AtomKind::TermVar: return "$" + a.name;
    }
    return a.name;
}

void render_seq_pat(std::ostringstream& os, const ClsSeqPat& seq) {
    if (seq.empty()) {
        os << "eps";
        return;
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) os << ".";
        os << render_atom(seq[i]);
    }
}

void render_pat_mols(std::ostringstream& os, const std::vector<ClsPatMol>& mols);

void render_pat_mol(std::ostringstream& os, const ClsPatMol& m) {
    switch (m.kind) {
        case ClsPatMol::Kind::Seq:
            render_seq_pat(os, m.seq);
            break;
        case ClsPatMol::Kind::Loop:
            os << "loop(";
            render_seq_pat(os, m.seq);
            os << ")[";
            render_pat_mols(os, m.content);
            os << "]";
            break;
        case ClsPatMol::Kind::TermVar:
            os << "$" << m.var;
            break;
    }
}

void render_pat_mols(std::ostringstream& os, const std::vector<ClsPatMol>& mols) {
    if (mols.empty()) {
        os << "eps";
        return;
    }
    for (std::size_t i = 0; i < mols.size(); ++i) {
        if (i) os << " | ";
        render_pat_mol(os, mols[i]);
    }
}

} // namespace

std::string render_generic_expr(const GenericExpr& expr) {
    std::ostringstream os;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        if (i) os << " + ";
        os << render_atom(expr[i]);
    }
    return os.str();
}

std::string render_pattern(const ClsPattern& pattern) {
    std::ostringstream os;
    render_pat_mols(os, pattern.mols);
    return os.str();
}

std::string render_rule(const RuleAst& rule) {
    std::ostringstream os;
    if (const auto* g = std::get_if<GenericRule>(&rule)) {
        os << render_generic_expr(g->lhs) << " -> " << render_generic_expr(g->rhs);
    } else if (const auto* c = std::get_if<ClsRule>(&rule)) {
        os << render_pattern(c->lhs) << " -> " << render_pattern(c->rhs);
    } else {
        const auto& p = std::get<PsysRule>(rule);
        for (std::size_t i = 0; i < p.lhs.size(); ++i) {
            if (i) os << " ";
            os << render_atom(p.lhs[i]);
        }
        os << " ->";
        for (const auto& item : p.rhs) {
            os << " " << render_atom(item.symbol);
            switch (item.target.kind) {
                case PsysTarget::Kind::Here: break; // bare symbol stays here
                case PsysTarget::Kind::Out: os << "(out)"; break;
                case PsysTarget::Kind::In: os << "(in_" << render_atom(item.target.label) << ")"; break;
            }
        }
        if (p.dissolves) os << " delta";
    }
    return os.str();
}

ParsedRules parse_rule(const std::string& text, Formalism backend,
                       const std::set<std::string>& params, bool allow_this) {
    ParsedRules result;
    auto toks = detail::lex(text, result.diags);
    if (has_errors(result.diags)) return result;

    std::size_t pos = 0;
    while (toks[pos].kind == detail::Tok::Newline) ++pos;

    detail::RuleParseCtx ctx;
    ctx.backend = backend;
    ctx.params = &params;
    ctx.allow_this = allow_this;
    result.rules = detail::parse_rule_tokens(toks, pos, ctx, result.diags);

    while (toks[pos].kind == detail::Tok::Newline) ++pos;
    if (toks[pos].kind != detail::Tok::End) {
        result.diags.push_back(make_error("syntax", "trailing input after rule", toks[pos].span));
        result.rules.clear();
    }
    return result;
}

} // namespace biorw
