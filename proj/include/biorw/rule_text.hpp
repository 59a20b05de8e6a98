#pragma once

#include "biorw/diagnostics.hpp"
#include "biorw/rules.hpp"

#include <set>
#include <string>
#include <vector>

namespace biorw {

/// ASCII rendering, one line, no trailing newline:
///   generic:  "glu + PhoIso -> PhoIso + fru"
///   CLS:      "w | loop(AW.~x)[$X] -> loop(AW.~x)[w | $X]"
///   P system: "w -> w(in_1)", "w -> w(out) delta"; here-targets render bare.
std::string render_rule(const RuleAst& rule);
std::string render_pattern(const ClsPattern& pattern);
std::string render_generic_expr(const GenericExpr& expr);

struct ParsedRules {
    std::vector<RuleAst> rules; // two entries when a generic <-> was desugared
    Diagnostics diags;

    bool ok() const { return !has_errors(diags); }
};

/// Parse one rule line in the given backend syntax. Identifiers in
/// `params` (plus `this` when allow_this) resolve to parameter
/// variables; everything unsigiled resolves to a value. A generic
/// E1 <-> E2 yields the two directed rules.
ParsedRules parse_rule(const std::string& text, Formalism backend,
                       const std::set<std::string>& params = {}, bool allow_this = false);

} // namespace biorw
