#include "biorw/calculus.hpp"

#include "biorw/rule_text.hpp"
#include "biorw/substitution.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace biorw {

Diagnostics validate_class_table(const ClassTable& ct) {
    Diagnostics diags;

    for (const auto& [key, decl] : ct.entries) {
        if (decl.name != key)
            diags.push_back(make_error("key-mismatch",
                                       "table key '" + key + "' maps to class '" + decl.name + "'",
                                       decl.span));
    }
    if (auto it = ct.entries.find(kObject); it != ct.entries.end())
        diags.push_back(
            make_error("object-declared", "Object must not be declared", it->second.span));

    auto check_mentioned = [&](const ClassName& c, const std::string& where, Span sp) {
        if (c != kObject && !ct.declares(c))
            diags.push_back(make_error("missing-class",
                                       "class '" + c + "' (" + where + ") is not declared", sp));
    };
    for (const auto& [key, decl] : ct.entries) {
        check_mentioned(decl.superclass, "superclass of " + key, decl.span);
        for (const auto& m : decl.methods)
            for (const auto& [type, var] : m.params)
                check_mentioned(type, "parameter type in " + key + "." + m.name, m.span);
    }

    // cycle detection: walk the extends chain; a class reports a cycle
    // only when the walk returns to itself, so each cycle member reports once
    for (const auto& [key, decl] : ct.entries) {
        std::set<ClassName> visited{key};
        ClassName cur = decl.superclass;
        while (cur != kObject && ct.declares(cur)) {
            if (cur == key) {
                diags.push_back(make_error(
                    "cycle", "class '" + key + "' extends itself through the hierarchy",
                    decl.span));
                break;
            }
            if (!visited.insert(cur).second) break; // cycle elsewhere; reported by its members
            cur = ct.entries.at(cur).superclass;
        }
    }
    return diags;
}

Diagnostics validate_type_env(const TypeEnv& gamma, const ClassTable& ct,
                              const std::set<ValueName>& model_values) {
    Diagnostics diags;
    for (const auto& [value, cls] : gamma.entries) {
        if (cls != kObject && !ct.declares(cls))
            diags.push_back(make_error(
                "unknown-class", "value '" + value + "' is typed with undeclared class '" + cls + "'"));
    }
    for (const auto& v : model_values) {
        if (!gamma.find(v))
            diags.push_back(
                make_error("untyped-value", "value '" + v + "' has no type assignment"));
    }
    return diags;
}

namespace {

bool declared_or_object(const ClassTable& ct, const ClassName& c) {
    return c == kObject || ct.declares(c);
}

/// Chain walk without preconditions; false when a class is missing.
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

} // namespace

bool is_subtype(const ClassTable& ct, const ClassName& c, const ClassName& d) {
    if (!declared_or_object(ct, c)) throw std::invalid_argument("undeclared class name: " + c);
    if (!declared_or_object(ct, d)) throw std::invalid_argument("undeclared class name: " + d);
    return subtype_unchecked(ct, c, d);
}

std::optional<std::vector<ClassName>> mtype(const ClassTable& ct, const MethodName& m,
                                            const ClassName& c) {
    ClassName cur = c;
    std::set<ClassName> visited;
    while (cur != kObject) {
        const ClassDecl* decl = ct.find(cur);
        if (!decl || !visited.insert(cur).second) return std::nullopt;
        for (const auto& method : decl->methods) {
            if (method.name == m) {
                std::vector<ClassName> types;
                for (const auto& [type, _] : method.params) types.push_back(type);
                return types;
            }
        }
        cur = decl->superclass;
    }
    return std::nullopt; // Object has no methods
}

std::optional<MethodBody> mbody(const ClassTable& ct, const MethodName& m, const ClassName& c) {
    ClassName cur = c;
    std::set<ClassName> visited;
    while (cur != kObject) {
        const ClassDecl* decl = ct.find(cur);
        if (!decl || !visited.insert(cur).second) return std::nullopt;
        for (const auto& method : decl->methods) {
            if (method.name == m) {
                MethodBody body;
                for (const auto& [_, var] : method.params) body.params.push_back(var);
                body.rules = method.body;
                return body;
            }
        }
        cur = decl->superclass;
    }
    return std::nullopt;
}

Diagnostics typecheck_invocation(const ClassTable& ct, const TypeEnv& gamma,
                                 const Invocation& inv) {
    Diagnostics diags;
    const ClassName* receiver_class = gamma.find(inv.receiver);
    if (!receiver_class) {
        diags.push_back(make_error("untyped-receiver",
                                   "receiver '" + inv.receiver + "' has no type assignment"));
        return diags;
    }
    auto param_types = mtype(ct, inv.method, *receiver_class);
    if (!param_types) {
        diags.push_back(make_error("method-not-found", "no method '" + inv.method +
                                                           "' on class '" + *receiver_class +
                                                           "' or its superclasses"));
        return diags;
    }
    if (param_types->size() != inv.args.size()) {
        std::ostringstream os;
        os << render_invocation(inv) << " passes " << inv.args.size() << " argument(s), method '"
           << inv.method << "' takes " << param_types->size();
        diags.push_back(make_error("arity-mismatch", os.str()));
        return diags;
    }
    for (std::size_t i = 0; i < inv.args.size(); ++i) {
        const ClassName* arg_class = gamma.find(inv.args[i]);
        if (!arg_class) {
            diags.push_back(make_error("untyped-argument",
                                       "argument " + std::to_string(i + 1) + " ('" + inv.args[i] +
                                           "') has no type assignment"));
            continue;
        }
        if (!subtype_unchecked(ct, *arg_class, (*param_types)[i])) {
            std::ostringstream os;
            os << "argument " << i + 1 << " of " << render_invocation(inv) << ": '" << *arg_class
               << "' is not a subtype of '" << (*param_types)[i] << "'";
            diags.push_back(make_error("argument-type-mismatch", os.str()));
        }
    }
    return diags;
}

Diagnostics typecheck_method(const ClassTable& ct, const TypeEnv& gamma, const ClassName& c,
                             const MethodDecl& m, const WfJudgment& wf) {
    Diagnostics diags;
    WfContext ctx;
    ctx.table = &ct;
    ctx.this_class = c;
    for (const auto& [type, var] : m.params) ctx.params[var] = type;

    for (std::size_t i = 0; i < m.body.size(); ++i) {
        Diagnostics rule_diags = wf(ctx, m.body[i], gamma);
        Span sp = i < m.rule_spans.size() ? m.rule_spans[i] : m.span;
        for (auto& d : rule_diags) {
            if (!d.span.known()) d.span = sp;
            d.message = c + "." + m.name + ": " + d.message;
            diags.push_back(std::move(d));
        }
    }
    return diags;
}

Diagnostics typecheck_class_table(const ClassTable& ct, const TypeEnv& gamma,
                                  const WfJudgment& wf) {
    Diagnostics diags;
    for (const auto& [_, decl] : ct.entries)
        for (const auto& m : decl.methods) append(diags, typecheck_method(ct, gamma, decl.name, m, wf));
    return diags;
}

std::vector<RuleAst> expand_invocation(const ClassTable& ct, const TypeEnv& gamma,
                                       const Invocation& inv) {
    const ClassName* receiver_class = gamma.find(inv.receiver);
    if (!receiver_class)
        throw ExpandError(make_error("untyped-receiver",
                                     "receiver '" + inv.receiver + "' has no type assignment"));
    auto body = mbody(ct, inv.method, *receiver_class);
    if (!body)
        throw ExpandError(make_error("method-not-found",
                                     "no method '" + inv.method + "' on class '" +
                                         *receiver_class + "' or its superclasses"));
    if (body->params.size() != inv.args.size())
        throw ExpandError(make_error("arity-mismatch",
                                     render_invocation(inv) + " does not match the arity of '" +
                                         inv.method + "'"));

    Substitution subst;
    subst.this_target = inv.receiver;
    for (std::size_t i = 0; i < body->params.size(); ++i)
        subst.params[body->params[i]] = inv.args[i];

    std::vector<RuleAst> out;
    out.reserve(body->rules.size());
    for (const auto& rule : body->rules) out.push_back(substitute(rule, subst));
    return out;
}

namespace {

std::vector<RuleItem> expand_items(const ClassTable& ct, const TypeEnv& gamma,
                                   const std::vector<RuleItem>& items,
                                   std::vector<std::pair<int, int>>* ranges) {
    std::vector<RuleItem> out;
    for (const auto& item : items) {
        int begin = static_cast<int>(out.size());
        if (item.is_invocation()) {
            const Invocation& inv = item.invocation();
            Diagnostics diags = typecheck_invocation(ct, gamma, inv);
            if (has_errors(diags)) {
                Diagnostic first = diags.front();
                if (!first.span.known()) first.span = item.span;
                throw ExpandError(std::move(first));
            }
            for (auto& rule : expand_invocation(ct, gamma, inv))
                out.push_back(RuleItem{std::move(rule), item.span});
        } else {
            out.push_back(item);
        }
        if (ranges) ranges->emplace_back(begin, static_cast<int>(out.size()));
    }
    return out;
}

Membrane expand_membrane(const ClassTable& ct, const TypeEnv& gamma, const Membrane& m) {
    Membrane out;
    out.label = m.label;
    out.contents = m.contents;
    out.span = m.span;

    std::vector<std::pair<int, int>> ranges;
    out.items = expand_items(ct, gamma, m.items, &ranges);
    for (const auto& [hi, lo] : m.priorities) {
        for (int p = ranges[hi].first; p < ranges[hi].second; ++p)
            for (int q = ranges[lo].first; q < ranges[lo].second; ++q)
                out.priorities.emplace_back(p, q);
    }
    for (const auto& child : m.children) out.children.push_back(expand_membrane(ct, gamma, child));
    return out;
}

} // namespace

Model expand_model(const ClassTable& ct, const TypeEnv& gamma, const Model& model) {
    Model out;
    out.formalism = model.formalism;
    switch (model.formalism) {
        case Formalism::Generic: {
            const auto& g = model.generic();
            out.body = GenericModel{g.state, expand_items(ct, gamma, g.items, nullptr)};
            break;
        }
        case Formalism::Cls: {
            const auto& c = model.cls();
            out.body = ClsModel{c.term, expand_items(ct, gamma, c.items, nullptr)};
            break;
        }
        case Formalism::Psys: {
            const auto& p = model.psys();
            out.body = PsysModel{expand_membrane(ct, gamma, p.skin), p.output_label};
            break;
        }
    }
    return out;
}

} // namespace biorw
