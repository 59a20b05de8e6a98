#pragma once

#include "biorw/classes.hpp"
#include "biorw/cls_term.hpp"
#include "biorw/multiset.hpp"
#include "biorw/rules.hpp"

#include <set>
#include <string>
#include <variant>
#include <vector>

namespace biorw {

/// A rule slot of a model: either a method invocation awaiting
/// expansion or a concrete rule (the expanded form).
struct RuleItem {
    std::variant<Invocation, RuleAst> node;
    Span span{};

    bool is_invocation() const { return std::holds_alternative<Invocation>(node); }
    const Invocation& invocation() const { return std::get<Invocation>(node); }
    const RuleAst& rule() const { return std::get<RuleAst>(node); }

    bool operator==(const RuleItem& o) const { return node == o.node; }
};

/// P-system membrane: label, contents, rule slots with priorities,
/// child membranes. Priorities are 0-based item-index pairs (hi, lo):
/// item hi outranks item lo.
struct Membrane {
    std::string label;
    Multiset contents;
    std::vector<RuleItem> items;
    std::vector<std::pair<int, int>> priorities;
    std::vector<Membrane> children;
    Span span{};

    bool operator==(const Membrane& o) const {
        return label == o.label && contents == o.contents && items == o.items &&
               priorities == o.priorities && children == o.children;
    }
};

struct GenericModel {
    Multiset state;
    std::vector<RuleItem> items;

    bool operator==(const GenericModel&) const = default;
};

struct ClsModel {
    ClsTerm term;
    std::vector<RuleItem> items;

    bool operator==(const ClsModel&) const = default;
};

struct PsysModel {
    Membrane skin;
    std::string output_label; // empty: the output region is the environment

    bool operator==(const PsysModel&) const = default;
};

/// The P component of a triple (CT, Gamma, P), tagged by formalism.
struct Model {
    Formalism formalism = Formalism::Generic;
    std::variant<GenericModel, ClsModel, PsysModel> body;

    GenericModel& generic() { return std::get<GenericModel>(body); }
    const GenericModel& generic() const { return std::get<GenericModel>(body); }
    ClsModel& cls() { return std::get<ClsModel>(body); }
    const ClsModel& cls() const { return std::get<ClsModel>(body); }
    PsysModel& psys() { return std::get<PsysModel>(body); }
    const PsysModel& psys() const { return std::get<PsysModel>(body); }

    bool operator==(const Model&) const = default;
};

/// Every model symbol that must be typed in Gamma: state symbols,
/// invocation receivers and arguments, and the symbols of concrete
/// rules. Membrane labels and in_j routing labels are labels of the
/// membrane structure, not model symbols, and are excluded (invocation
/// arguments that happen to be labels are still included).
std::set<ValueName> values_of_model(const Model& model);

bool has_invocations(const Model& model);

const Membrane* find_membrane(const Membrane& root, const std::string& label);

} // namespace biorw
