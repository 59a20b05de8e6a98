#include "biorw/substitution.hpp"

namespace biorw {

Atom substitute(const Atom& atom, const Substitution& s) {
    if (atom.kind != AtomKind::Param) return atom;
    if (atom.name == "this") return value_atom(s.this_target);
    auto it = s.params.find(atom.name);
    if (it == s.params.end())
        throw SubstitutionError("no binding for parameter variable " + atom.name);
    return value_atom(it->second);
}

namespace {

std::vector<Atom> substitute_atoms(const std::vector<Atom>& atoms, const Substitution& s) {
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(substitute(a, s));
    return out;
}

ClsPatMol substitute_mol(const ClsPatMol& mol, const Substitution& s) {
    ClsPatMol out = mol;
    if (mol.kind == ClsPatMol::Kind::TermVar) return out;
    out.seq = substitute_atoms(mol.seq, s);
    out.content.clear();
    for (const auto& c : mol.content) out.content.push_back(substitute_mol(c, s));
    return out;
}

} // namespace

GenericRule substitute(const GenericRule& rule, const Substitution& s) {
    return {substitute_atoms(rule.lhs, s), substitute_atoms(rule.rhs, s)};
}

ClsPattern substitute(const ClsPattern& pattern, const Substitution& s) {
    ClsPattern out;
    for (const auto& m : pattern.mols) out.mols.push_back(substitute_mol(m, s));
    return out;
}

ClsRule substitute(const ClsRule& rule, const Substitution& s) {
    return {substitute(rule.lhs, s), substitute(rule.rhs, s)};
}

PsysRule substitute(const PsysRule& rule, const Substitution& s) {
    PsysRule out;
    out.lhs = substitute_atoms(rule.lhs, s);
    for (const auto& item : rule.rhs) {
        PsysItem n;
        n.symbol = substitute(item.symbol, s);
        n.target = item.target;
        if (item.target.kind == PsysTarget::Kind::In)
            n.target.label = substitute(item.target.label, s);
        out.rhs.push_back(std::move(n));
    }
    out.dissolves = rule.dissolves;
    return out;
}

RuleAst substitute(const RuleAst& rule, const Substitution& s) {
    if (const auto* g = std::get_if<GenericRule>(&rule)) return substitute(*g, s);
    if (const auto* c = std::get_if<ClsRule>(&rule)) return substitute(*c, s);
    return substitute(std::get<PsysRule>(rule), s);
}

} // namespace biorw
