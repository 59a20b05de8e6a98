#include "biorw/rules.hpp"

namespace biorw {

std::string to_string(Formalism f) {
    switch (f) {
        case Formalism::Generic: return "generic";
        case Formalism::Cls: return "cls";
        case Formalism::Psys: return "psys";
    }
    return "generic";
}

Formalism formalism_of(const RuleAst& rule) {
    if (std::holds_alternative<GenericRule>(rule)) return Formalism::Generic;
    if (std::holds_alternative<ClsRule>(rule)) return Formalism::Cls;
    return Formalism::Psys;
}

namespace {

void collect(const ClsPattern& p, std::vector<Atom>& out);

void collect(const ClsPatMol& m, std::vector<Atom>& out) {
    switch (m.kind) {
        case ClsPatMol::Kind::Seq:
            for (const auto& a : m.seq) out.push_back(a);
            break;
        case ClsPatMol::Kind::Loop:
            for (const auto& a : m.seq) out.push_back(a);
            for (const auto& c : m.content) collect(c, out);
            break;
        case ClsPatMol::Kind::TermVar:
            out.push_back({AtomKind::TermVar, m.var});
            break;
    }
}

void collect(const ClsPattern& p, std::vector<Atom>& out) {
    for (const auto& m : p.mols) collect(m, out);
}

} // namespace

std::vector<Atom> atoms_of(const ClsPattern& pattern) {
    std::vector<Atom> out;
    collect(pattern, out);
    return out;
}

std::vector<Atom> atoms_of(const RuleAst& rule) {
    std::vector<Atom> out;
    if (const auto* g = std::get_if<GenericRule>(&rule)) {
        for (const auto& a : g->lhs) out.push_back(a);
        for (const auto& a : g->rhs) out.push_back(a);
    } else if (const auto* c = std::get_if<ClsRule>(&rule)) {
        collect(c->lhs, out);
        collect(c->rhs, out);
    } else if (const auto* p = std::get_if<PsysRule>(&rule)) {
        for (const auto& a : p->lhs) out.push_back(a);
        for (const auto& item : p->rhs) {
            out.push_back(item.symbol);
            if (item.target.kind == PsysTarget::Kind::In) out.push_back(item.target.label);
        }
    }
    return out;
}

bool is_ground(const RuleAst& rule) {
    for (const auto& a : atoms_of(rule))
        if (a.kind == AtomKind::Param) return false;
    return true;
}

} // namespace biorw
