#include "biorw/wf.hpp"

#include <map>
#include <set>

namespace biorw {

namespace {

bool subtype_unchecked(const ClassTable& ct, const ClassName& c, const ClassName& d) {
    ClassName cur = c;
    std::set<ClassName> visited;
    while (true) {
        if (cur == d) return true;
        if (cur == kObject) return false;
        const ClassDecl* decl = ct.find(cur);
        if (!decl || !visited.insert(cur).second) return false;
        cur = decl->superclass;
    }
}

/// Shared leaf checks: parameter variables must be bound by the context,
/// values must be typed in Gamma.
void check_atom(const Atom& a, const WfContext& ctx, const TypeEnv& gamma, Diagnostics& diags) {
    switch (a.kind) {
        case AtomKind::Param:
            if (a.name != "this" && !ctx.params.count(a.name))
                diags.push_back(
                    make_error("free-variable", "variable '" + a.name + "' is not a parameter"));
            break;
        case AtomKind::Value:
            if (!gamma.find(a.name))
                diags.push_back(make_error("untyped-value",
                                           "value '" + a.name + "' has no type assignment"));
            break;
        default:
            break; // rewrite variables are checked by the CLS judgment
    }
}

void note_kind(const Atom& a, std::map<std::string, std::set<AtomKind>>& kinds) {
    kinds[a.name].insert(a.kind);
}

} // namespace

Diagnostics wf_generic(const WfContext& ctx, const GenericRule& rule, const TypeEnv& gamma) {
    Diagnostics diags;
    for (const auto& side : {&rule.lhs, &rule.rhs}) {
        for (const auto& a : *side) {
            if (is_rewrite_var(a.kind)) {
                diags.push_back(make_error(
                    "kind-mismatch", "variable '" + a.name + "' has no place in a generic rule"));
                continue;
            }
            check_atom(a, ctx, gamma, diags);
        }
    }
    return diags;
}

namespace {

void walk_cls(const std::vector<ClsPatMol>& mols, const WfContext& ctx, const TypeEnv& gamma,
              Diagnostics& diags, std::map<std::string, std::set<AtomKind>>& kinds,
              std::set<std::string>& rewrite_vars) {
    for (const auto& m : mols) {
        switch (m.kind) {
            case ClsPatMol::Kind::TermVar:
                kinds[m.var].insert(AtomKind::TermVar);
                rewrite_vars.insert("$" + m.var);
                break;
            case ClsPatMol::Kind::Seq:
            case ClsPatMol::Kind::Loop:
                for (const auto& a : m.seq) {
                    // values share no namespace with variables; only
                    // variables must keep one kind per name
                    if (a.kind != AtomKind::Value) note_kind(a, kinds);
                    if (a.kind == AtomKind::TermVar) {
                        diags.push_back(make_error("kind-mismatch",
                                                   "term variable '" + a.name +
                                                       "' used in element position"));
                        continue;
                    }
                    if (a.kind == AtomKind::ElemVar) rewrite_vars.insert("?" + a.name);
                    if (a.kind == AtomKind::SeqVar) rewrite_vars.insert("~" + a.name);
                    check_atom(a, ctx, gamma, diags);
                }
                if (m.kind == ClsPatMol::Kind::Loop)
                    walk_cls(m.content, ctx, gamma, diags, kinds, rewrite_vars);
                break;
        }
    }
}

} // namespace

Diagnostics wf_cls(const WfContext& ctx, const ClsRule& rule, const TypeEnv& gamma) {
    Diagnostics diags;
    std::map<std::string, std::set<AtomKind>> kinds;
    std::set<std::string> lhs_vars, rhs_vars;
    walk_cls(rule.lhs.mols, ctx, gamma, diags, kinds, lhs_vars);
    walk_cls(rule.rhs.mols, ctx, gamma, diags, kinds, rhs_vars);

    for (const auto& v : rhs_vars) {
        if (!lhs_vars.count(v))
            diags.push_back(make_error("unbound-rewrite-variable",
                                       "rewrite variable '" + v +
                                           "' occurs on the right-hand side only"));
    }
    for (const auto& [name, ks] : kinds) {
        if (ks.size() > 1)
            diags.push_back(make_error(
                "kind-mismatch", "name '" + name + "' is used with more than one variable kind"));
    }
    return diags;
}

Diagnostics wf_psys(const WfContext& ctx, const PsysRule& rule, const TypeEnv& gamma,
                    const WfOptions& opts) {
    Diagnostics diags;
    if (rule.lhs.empty())
        diags.push_back(make_error("empty-lhs", "evolution rule consumes nothing"));
    for (const auto& a : rule.lhs) {
        if (is_rewrite_var(a.kind)) {
            diags.push_back(make_error(
                "kind-mismatch", "variable '" + a.name + "' has no place in an evolution rule"));
            continue;
        }
        check_atom(a, ctx, gamma, diags);
    }

    bool has_in = false, has_local = false;
    for (const auto& item : rule.rhs) {
        if (is_rewrite_var(item.symbol.kind)) {
            diags.push_back(make_error("kind-mismatch", "variable '" + item.symbol.name +
                                                            "' has no place in an evolution rule"));
        } else {
            check_atom(item.symbol, ctx, gamma, diags);
        }
        if (item.target.kind == PsysTarget::Kind::In) {
            has_in = true;
            const Atom& label = item.target.label;
            // the label must be typed Lab (declared parameter type or Gamma entry)
            const ClassName* label_class = nullptr;
            if (label.kind == AtomKind::Param) {
                auto it = ctx.params.find(label.name);
                if (label.name == "this") {
                    label_class = ctx.this_class.empty() ? nullptr : &ctx.this_class;
                } else if (it == ctx.params.end()) {
                    diags.push_back(make_error("free-variable", "variable '" + label.name +
                                                                    "' is not a parameter"));
                } else {
                    label_class = &it->second;
                }
            } else {
                label_class = gamma.find(label.name);
                if (!label_class)
                    diags.push_back(make_error("untyped-value", "label '" + label.name +
                                                                    "' has no type assignment"));
            }
            if (label_class && ctx.table &&
                !subtype_unchecked(*ctx.table, *label_class, "Lab")) {
                diags.push_back(make_error("label-type",
                                           "in-target label '" + label.name + "' has type '" +
                                               *label_class + "', which is not a Lab"));
            }
        } else {
            has_local = true;
        }
    }
    if (opts.strict_psys_targets && has_in && has_local)
        diags.push_back(make_error(
            "target-mixing",
            "right-hand side mixes in_j with here/out targets (strict target mode)"));
    return diags;
}

WfJudgment wf_for(Formalism f, WfOptions opts) {
    return [f, opts](const WfContext& ctx, const RuleAst& rule, const TypeEnv& gamma) {
        if (formalism_of(rule) != f) {
            return Diagnostics{make_error("backend-mismatch",
                                          "rule is written for the " +
                                              to_string(formalism_of(rule)) +
                                              " backend, expected " + to_string(f))};
        }
        switch (f) {
            case Formalism::Generic: return wf_generic(ctx, std::get<GenericRule>(rule), gamma);
            case Formalism::Cls: return wf_cls(ctx, std::get<ClsRule>(rule), gamma);
            case Formalism::Psys: return wf_psys(ctx, std::get<PsysRule>(rule), gamma, opts);
        }
        return Diagnostics{};
    };
}

} // namespace biorw
