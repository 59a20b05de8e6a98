#pragma once

#include "biorw/classes.hpp"
#include "biorw/rules.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace biorw {

/// [x1 -> v1, ..., xn -> vn, this -> receiver]. Parameter variables come
/// from the map, `this` only from this_target.
struct Substitution {
    std::map<std::string, ValueName> params;
    ValueName this_target;
};

struct SubstitutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Replace every parameter variable and every occurrence of `this` by
/// its value. Rewrite variables (?x, ~x, $X) are left untouched.
/// Throws SubstitutionError on a parameter with no binding (unreachable
/// when expansion is performed after a clean type check).
RuleAst substitute(const RuleAst& rule, const Substitution& s);
GenericRule substitute(const GenericRule& rule, const Substitution& s);
ClsRule substitute(const ClsRule& rule, const Substitution& s);
PsysRule substitute(const PsysRule& rule, const Substitution& s);
ClsPattern substitute(const ClsPattern& pattern, const Substitution& s);
Atom substitute(const Atom& atom, const Substitution& s);

} // namespace biorw
