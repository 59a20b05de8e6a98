#include "biorw/model.hpp"

namespace biorw {

namespace {

void collect_rule_values(const RuleAst& rule, std::set<ValueName>& out) {
    if (const auto* p = std::get_if<PsysRule>(&rule)) {
        // in_j labels address the membrane structure, not the alphabet
        for (const auto& a : p->lhs)
            if (a.kind == AtomKind::Value) out.insert(a.name);
        for (const auto& item : p->rhs)
            if (item.symbol.kind == AtomKind::Value) out.insert(item.symbol.name);
        return;
    }
    for (const auto& a : atoms_of(rule))
        if (a.kind == AtomKind::Value) out.insert(a.name);
}

void collect_item_values(const std::vector<RuleItem>& items, std::set<ValueName>& out) {
    for (const auto& item : items) {
        if (item.is_invocation()) {
            const Invocation& inv = item.invocation();
            out.insert(inv.receiver);
            for (const auto& a : inv.args) out.insert(a);
        } else {
            collect_rule_values(item.rule(), out);
        }
    }
}

void collect_term_values(const ClsTerm& term, std::set<ValueName>& out) {
    for (const auto& m : term.mols) {
        for (const auto& e : m.seq) out.insert(e);
        if (m.kind == ClsMol::Kind::Loop) {
            ClsTerm inner;
            inner.mols = m.content;
            collect_term_values(inner, out);
        }
    }
}

void collect_membrane_values(const Membrane& m, std::set<ValueName>& out) {
    for (const auto& [name, _] : m.contents.counts) out.insert(name);
    collect_item_values(m.items, out);
    for (const auto& child : m.children) collect_membrane_values(child, out);
}

} // namespace

std::set<ValueName> values_of_model(const Model& model) {
    std::set<ValueName> out;
    switch (model.formalism) {
        case Formalism::Generic: {
            const auto& g = model.generic();
            for (const auto& [name, _] : g.state.counts) out.insert(name);
            collect_item_values(g.items, out);
            break;
        }
        case Formalism::Cls: {
            const auto& c = model.cls();
            collect_term_values(c.term, out);
            collect_item_values(c.items, out);
            break;
        }
        case Formalism::Psys:
            collect_membrane_values(model.psys().skin, out);
            break;
    }
    return out;
}

namespace {

bool items_have_invocation(const std::vector<RuleItem>& items) {
    for (const auto& item : items)
        if (item.is_invocation()) return true;
    return false;
}

bool membrane_has_invocation(const Membrane& m) {
    if (items_have_invocation(m.items)) return true;
    for (const auto& child : m.children)
        if (membrane_has_invocation(child)) return true;
    return false;
}

} // namespace

bool has_invocations(const Model& model) {
    switch (model.formalism) {
        case Formalism::Generic: return items_have_invocation(model.generic().items);
        case Formalism::Cls: return items_have_invocation(model.cls().items);
        case Formalism::Psys: return membrane_has_invocation(model.psys().skin);
    }
    return false;
}

const Membrane* find_membrane(const Membrane& root, const std::string& label) {
    if (root.label == label) return &root;
    for (const auto& child : root.children)
        if (const Membrane* found = find_membrane(child, label)) return found;
    return nullptr;
}

} // namespace biorw
