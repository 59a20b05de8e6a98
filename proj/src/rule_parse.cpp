#include "rule_parse.hpp"

namespace biorw::detail {

namespace {

bool at_rule_end(const std::vector<Token>& toks, std::size_t pos) {
    Tok k = toks[pos].kind;
    return k == Tok::Newline || k == Tok::End || k == Tok::RBrace;
}

void skip_to_rule_end(const std::vector<Token>& toks, std::size_t& pos) {
    while (!at_rule_end(toks, pos)) ++pos;
}

bool expect(const std::vector<Token>& toks, std::size_t& pos, Tok kind, Diagnostics& diags) {
    if (toks[pos].kind == kind) {
        ++pos;
        return true;
    }
    diags.push_back(make_error("syntax",
                               std::string("expected ") + tok_name(kind) + ", found " +
                                   tok_name(toks[pos].kind),
                               toks[pos].span));
    return false;
}

} // namespace

Atom resolve_ident(const std::string& name, Span sp, const RuleParseCtx& ctx, Diagnostics& diags) {
    if (name == "this") {
        if (!ctx.allow_this)
            diags.push_back(
                make_error("syntax", "`this` is only meaningful inside a method body", sp));
        return this_atom();
    }
    if (ctx.params && ctx.params->count(name)) return param_atom(name);
    return value_atom(name);
}

// --- generic -----------------------------------------------------------------

namespace {

GenericExpr parse_generic_expr(const std::vector<Token>& toks, std::size_t& pos,
                               const RuleParseCtx& ctx, Diagnostics& diags) {
    GenericExpr expr;
    while (true) {
        if (toks[pos].kind != Tok::Ident) {
            diags.push_back(make_error("syntax", "expected a symbol or variable name",
                                       toks[pos].span));
            return expr;
        }
        expr.push_back(resolve_ident(toks[pos].text, toks[pos].span, ctx, diags));
        ++pos;
        if (toks[pos].kind == Tok::Plus) {
            ++pos;
            continue;
        }
        return expr;
    }
}

} // namespace

// --- CLS ---------------------------------------------------------------------

namespace {

bool at_pattern_end(const std::vector<Token>& toks, std::size_t pos, bool skip_newlines) {
    switch (toks[pos].kind) {
        case Tok::Arrow:
        case Tok::BidirArrow:
        case Tok::RBracket:
        case Tok::RBrace:
        case Tok::End:
            return true;
        case Tok::Newline:
            return !skip_newlines;
        default:
            return false;
    }
}

void skip_nl(const std::vector<Token>& toks, std::size_t& pos, bool skip_newlines) {
    if (!skip_newlines) return;
    while (toks[pos].kind == Tok::Newline) ++pos;
}

/// SP ::= eps | a | SP.SP | ~x | ?x — flattened; eps contributes nothing.
ClsSeqPat parse_cls_seq(const std::vector<Token>& toks, std::size_t& pos, const RuleParseCtx& ctx,
                        Diagnostics& diags) {
    ClsSeqPat items;
    while (true) {
        const Token& t = toks[pos];
        if (t.kind == Tok::Ident) {
            if (t.text != "eps") items.push_back(resolve_ident(t.text, t.span, ctx, diags));
            ++pos;
        } else if (t.kind == Tok::ElemVar) {
            items.push_back({AtomKind::ElemVar, t.text});
            ++pos;
        } else if (t.kind == Tok::SeqVar) {
            items.push_back({AtomKind::SeqVar, t.text});
            ++pos;
        } else {
            diags.push_back(make_error("syntax", "expected a sequence element", t.span));
            return items;
        }
        if (toks[pos].kind == Tok::Dot) {
            ++pos;
            continue;
        }
        return items;
    }
}

ClsPatMol parse_cls_mol(const std::vector<Token>& toks, std::size_t& pos, const RuleParseCtx& ctx,
                        Diagnostics& diags, bool skip_newlines) {
    const Token& t = toks[pos];
    ClsPatMol mol;
    if (t.kind == Tok::TermVar) {
        mol.kind = ClsPatMol::Kind::TermVar;
        mol.var = t.text;
        ++pos;
        return mol;
    }
    if (t.kind == Tok::Ident && t.text == "loop" && toks[pos + 1].kind == Tok::LParen) {
        pos += 2;
        mol.kind = ClsPatMol::Kind::Loop;
        mol.seq = parse_cls_seq(toks, pos, ctx, diags);
        expect(toks, pos, Tok::RParen, diags);
        expect(toks, pos, Tok::LBracket, diags);
        skip_nl(toks, pos, skip_newlines);
        mol.content =
            parse_cls_pattern_tokens(toks, pos, ctx, diags, skip_newlines).mols;
        skip_nl(toks, pos, skip_newlines);
        expect(toks, pos, Tok::RBracket, diags);
        return mol;
    }
    mol.kind = ClsPatMol::Kind::Seq;
    mol.seq = parse_cls_seq(toks, pos, ctx, diags);
    return mol;
}

} // namespace

ClsPattern parse_cls_pattern_tokens(const std::vector<Token>& toks, std::size_t& pos,
                                    const RuleParseCtx& ctx, Diagnostics& diags,
                                    bool skip_newlines) {
    ClsPattern pat;
    skip_nl(toks, pos, skip_newlines);
    if (at_pattern_end(toks, pos, skip_newlines)) {
        diags.push_back(make_error("syntax", "expected a pattern", toks[pos].span));
        return pat;
    }
    while (true) {
        ClsPatMol mol = parse_cls_mol(toks, pos, ctx, diags, skip_newlines);
        // drop empty sequences (eps is neutral for |); keep everything else
        if (!(mol.kind == ClsPatMol::Kind::Seq && mol.seq.empty())) pat.mols.push_back(std::move(mol));
        skip_nl(toks, pos, skip_newlines);
        if (toks[pos].kind == Tok::Pipe) {
            ++pos;
            skip_nl(toks, pos, skip_newlines);
            continue;
        }
        return pat;
    }
}

// --- P systems ---------------------------------------------------------------

namespace {

PsysRule parse_psys_rule(const std::vector<Token>& toks, std::size_t& pos,
                         const RuleParseCtx& ctx, Diagnostics& diags) {
    PsysRule rule;
    while (toks[pos].kind == Tok::Ident) {
        if (toks[pos].text == "delta") {
            diags.push_back(
                make_error("syntax", "`delta` is reserved in evolution rules", toks[pos].span));
            ++pos;
            continue;
        }
        rule.lhs.push_back(resolve_ident(toks[pos].text, toks[pos].span, ctx, diags));
        ++pos;
    }
    if (rule.lhs.empty())
        diags.push_back(make_error("syntax", "evolution rule needs a non-empty left-hand side",
                                   toks[pos].span));
    if (!expect(toks, pos, Tok::Arrow, diags)) return rule;
    while (toks[pos].kind == Tok::Ident) {
        const Token& t = toks[pos];
        if (t.text == "delta") {
            ++pos;
            rule.dissolves = true;
            if (!at_rule_end(toks, pos))
                diags.push_back(
                    make_error("syntax", "`delta` must end the rule", toks[pos].span));
            break;
        }
        PsysItem item;
        item.symbol = resolve_ident(t.text, t.span, ctx, diags);
        ++pos;
        if (toks[pos].kind == Tok::LParen) {
            ++pos;
            if (toks[pos].kind != Tok::Ident) {
                diags.push_back(
                    make_error("syntax", "expected here, out or in_<label>", toks[pos].span));
            } else {
                const std::string& tgt = toks[pos].text;
                if (tgt == "here") {
                    item.target.kind = PsysTarget::Kind::Here;
                } else if (tgt == "out") {
                    item.target.kind = PsysTarget::Kind::Out;
                } else if (tgt.rfind("in_", 0) == 0 && tgt.size() > 3) {
                    item.target.kind = PsysTarget::Kind::In;
                    item.target.label =
                        resolve_ident(tgt.substr(3), toks[pos].span, ctx, diags);
                } else {
                    diags.push_back(make_error(
                        "syntax", "unknown target '" + tgt + "' (here, out or in_<label>)",
                        toks[pos].span));
                }
                ++pos;
            }
            expect(toks, pos, Tok::RParen, diags);
        }
        rule.rhs.push_back(std::move(item));
    }
    return rule;
}

} // namespace

std::vector<RuleAst> parse_rule_tokens(const std::vector<Token>& toks, std::size_t& pos,
                                       const RuleParseCtx& ctx, Diagnostics& diags) {
    std::vector<RuleAst> out;
    const std::size_t errors_before = diags.size();

    switch (ctx.backend) {
        case Formalism::Generic: {
            GenericExpr lhs = parse_generic_expr(toks, pos, ctx, diags);
            bool bidir = toks[pos].kind == Tok::BidirArrow;
            if (!bidir && !expect(toks, pos, Tok::Arrow, diags)) break;
            if (bidir) ++pos;
            GenericExpr rhs = parse_generic_expr(toks, pos, ctx, diags);
            out.push_back(GenericRule{lhs, rhs});
            if (bidir) out.push_back(GenericRule{rhs, lhs});
            break;
        }
        case Formalism::Cls: {
            ClsPattern lhs = parse_cls_pattern_tokens(toks, pos, ctx, diags, false);
            if (toks[pos].kind == Tok::BidirArrow)
                diags.push_back(make_error(
                    "syntax", "'<->' is only available for generic rules", toks[pos].span));
            if (!expect(toks, pos, Tok::Arrow, diags)) break;
            ClsPattern rhs = parse_cls_pattern_tokens(toks, pos, ctx, diags, false);
            out.push_back(ClsRule{std::move(lhs), std::move(rhs)});
            break;
        }
        case Formalism::Psys: {
            out.push_back(parse_psys_rule(toks, pos, ctx, diags));
            break;
        }
    }

    if (!at_rule_end(toks, pos)) {
        diags.push_back(make_error("syntax",
                                   std::string("unexpected ") + tok_name(toks[pos].kind) +
                                       " after rule",
                                   toks[pos].span));
        skip_to_rule_end(toks, pos);
    }
    if (diags.size() != errors_before) out.clear();
    return out;
}

} // namespace biorw::detail
