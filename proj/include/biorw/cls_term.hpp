#pragma once

#include "biorw/rules.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace biorw {

/// One parallel component of a variable-free CLS term: either a
/// non-empty sequence of elements, or a looping sequence with content.
/// Terms are kept in congruence-normal form: parallel composition and
/// sequencing flattened, eps removed, components sorted canonically.
struct ClsMol {
    enum class Kind { Seq, Loop };

    Kind kind = Kind::Seq;
    std::vector<std::string> seq;  // Seq: elements; Loop: the looping sequence
    std::vector<ClsMol> content;   // Loop only, normalized

    bool operator==(const ClsMol& o) const;
    bool operator<(const ClsMol& o) const;
};

struct ClsTerm {
    std::vector<ClsMol> mols; // sorted; empty = eps

    bool operator==(const ClsTerm&) const = default;
    bool operator<(const ClsTerm& o) const;
};

/// Re-establish normal form (sorts components, drops empty sequences,
/// normalizes loop contents). Idempotent.
ClsTerm normalize(ClsTerm term);

ClsTerm par(std::vector<ClsMol> mols); // normalize shortcut

/// Number of element occurrences anywhere in the term (loop sequences
/// and loop contents included).
long long count_element(const ClsTerm& term, const std::string& name);

std::string render_term(const ClsTerm& term); // "eps" when empty

/// A pattern with no variables of any kind converts to a term.
std::optional<ClsTerm> term_of_pattern(const ClsPattern& pattern);
ClsPattern pattern_of_term(const ClsTerm& term);

/// Kind-preserving instantiation function for CLS rewrite variables.
struct Instantiation {
    std::map<std::string, std::string> elems;              // ?x -> element
    std::map<std::string, std::vector<std::string>> seqs;  // ~x -> sequence (may be empty)
    std::map<std::string, ClsTerm> terms;                  // $X -> term (may be eps)

    bool operator==(const Instantiation&) const = default;
};

struct ClsOptions {
    /// Treat looping sequences as equal under rotation. Off by default;
    /// the congruence implemented otherwise is: parallel composition
    /// associative/commutative with eps neutral, sequencing associative
    /// with eps neutral.
    bool loop_rotation = false;
};

/// All instantiations sigma such that pattern·sigma is congruent to the
/// whole term. Parameter variables in the pattern never match.
std::vector<Instantiation> cls_match(const ClsPattern& pattern, const ClsTerm& term,
                                     const ClsOptions& opts = {});

/// Instantiate a pattern whose rewrite variables are all bound by sigma
/// and which contains no parameter variables; result is normalized.
ClsTerm apply_instantiation(const ClsPattern& pattern, const Instantiation& sigma);

} // namespace biorw
