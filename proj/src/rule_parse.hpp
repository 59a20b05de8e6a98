#pragma once

#include "biorw/diagnostics.hpp"
#include "biorw/rules.hpp"
#include "lexer.hpp"

#include <set>
#include <vector>

namespace biorw::detail {

struct RuleParseCtx {
    Formalism backend = Formalism::Generic;
    const std::set<std::string>* params = nullptr; // identifiers that resolve to parameters
    bool allow_this = false;                       // inside a method body
};

/// Parse one rule starting at pos. Stops before Newline / '}' / end.
/// A generic E1 <-> E2 yields two rules. Empty result on failure.
std::vector<RuleAst> parse_rule_tokens(const std::vector<Token>& toks, std::size_t& pos,
                                       const RuleParseCtx& ctx, Diagnostics& diags);

/// CLS pattern; stops before '->', '<->', ']', '}', end, and (when
/// skip_newlines is false) end of line.
ClsPattern parse_cls_pattern_tokens(const std::vector<Token>& toks, std::size_t& pos,
                                    const RuleParseCtx& ctx, Diagnostics& diags,
                                    bool skip_newlines);

Atom resolve_ident(const std::string& name, Span sp, const RuleParseCtx& ctx, Diagnostics& diags);

} // namespace biorw::detail
