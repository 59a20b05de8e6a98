#pragma once

#include <string>
#include <variant>
#include <vector>

namespace biorw {

/// The three rule syntaxes models can be written in.
enum class Formalism { Generic, Cls, Psys };

std::string to_string(Formalism f);

/// Leaf of every rule AST. A leaf is either a concrete model symbol
/// (Value), a method parameter variable (Param, which includes `this`),
/// or one of the CLS rewrite-variable kinds. Rewrite variables survive
/// expansion; parameter variables do not.
enum class AtomKind {
    Value,   // model symbol, e.g. glu, H2O, w
    Param,   // method parameter or `this`; replaced at expansion
    ElemVar, // CLS element variable, written ?x
    SeqVar,  // CLS sequence variable, written ~x
    TermVar, // CLS term variable, written $X
};

struct Atom {
    AtomKind kind = AtomKind::Value;
    std::string name;

    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

inline Atom value_atom(std::string name) { return {AtomKind::Value, std::move(name)}; }
inline Atom param_atom(std::string name) { return {AtomKind::Param, std::move(name)}; }
inline Atom this_atom() { return {AtomKind::Param, "this"}; }

inline bool is_rewrite_var(AtomKind k) {
    return k == AtomKind::ElemVar || k == AtomKind::SeqVar || k == AtomKind::TermVar;
}

// --- generic biological rules:  E ::= v | x | E + E,  R ::= E -> E ----------

/// A side of a generic rule is the flattened list of `+` operands.
/// Order is preserved for printing; the engine treats it as a multiset.
using GenericExpr = std::vector<Atom>;

struct GenericRule {
    GenericExpr lhs;
    GenericExpr rhs;

    bool operator==(const GenericRule&) const = default;
};

// --- CLS patterns: P ::= SP | Loop(SP)[P] | P|P | X,  SP ::= eps|a|SP.SP|~x|?x

/// Sequence pattern: flat item list, empty vector = eps. Items are
/// values, parameter variables or element/sequence variables.
using ClsSeqPat = std::vector<Atom>;

/// One parallel component of a CLS pattern.
struct ClsPatMol {
    enum class Kind { Seq, Loop, TermVar };

    Kind kind = Kind::Seq;
    ClsSeqPat seq;                    // Seq: the sequence; Loop: the looping sequence
    std::vector<ClsPatMol> content;   // Loop only: flattened content pattern
    std::string var;                  // TermVar only

    bool operator==(const ClsPatMol&) const = default;
};

/// Parallel composition, flattened. Empty vector = eps.
struct ClsPattern {
    std::vector<ClsPatMol> mols;

    bool operator==(const ClsPattern&) const = default;
};

struct ClsRule {
    ClsPattern lhs;
    ClsPattern rhs;

    bool operator==(const ClsRule&) const = default;
};

// --- P-system evolution rules: x -> y, y = y' or y'delta ---------------------

struct PsysTarget {
    enum class Kind { Here, Out, In };

    Kind kind = Kind::Here;
    Atom label; // In only: membrane label (value or parameter)

    bool operator==(const PsysTarget&) const = default;
};

struct PsysItem {
    Atom symbol;
    PsysTarget target;

    bool operator==(const PsysItem&) const = default;
};

struct PsysRule {
    std::vector<Atom> lhs;      // consumed multiset, non-empty
    std::vector<PsysItem> rhs;  // produced symbols with targets
    bool dissolves = false;     // trailing delta

    bool operator==(const PsysRule&) const = default;
};

// -----------------------------------------------------------------------------

using RuleAst = std::variant<GenericRule, ClsRule, PsysRule>;

Formalism formalism_of(const RuleAst& rule);

/// All atoms of a rule, left-to-right (lhs first). Loop contents and
/// targets included; term variables reported as TermVar atoms.
std::vector<Atom> atoms_of(const RuleAst& rule);
std::vector<Atom> atoms_of(const ClsPattern& pattern);

/// True when no parameter variable (including `this`) occurs anywhere.
/// Rewrite variables are allowed; they are part of CLS rule semantics.
bool is_ground(const RuleAst& rule);

} // namespace biorw
