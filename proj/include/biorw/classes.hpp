#pragma once

#include "biorw/diagnostics.hpp"
#include "biorw/rules.hpp"

#include <map>
#include <string>
#include <vector>

namespace biorw {

using ClassName = std::string;
using MethodName = std::string;
using ValueName = std::string;

/// Root of every hierarchy. Never a key of a class table.
inline const ClassName kObject = "Object";

struct MethodDecl {
    MethodName name;
    std::vector<std::pair<ClassName, std::string>> params; // (type, variable)
    std::vector<RuleAst> body;
    std::vector<Span> rule_spans; // parallel to body; empty when built by hand
    Span span{};

    bool operator==(const MethodDecl& o) const {
        return name == o.name && params == o.params && body == o.body;
    }
};

struct ClassDecl {
    ClassName name;
    ClassName superclass;
    std::vector<MethodDecl> methods;
    Span span{};

    bool operator==(const ClassDecl& o) const {
        return name == o.name && superclass == o.superclass && methods == o.methods;
    }
};

/// The fixed class table CT: class name -> declaration.
struct ClassTable {
    std::map<ClassName, ClassDecl> entries;

    const ClassDecl* find(const ClassName& c) const;
    bool declares(const ClassName& c) const { return entries.count(c) != 0; }

    bool operator==(const ClassTable&) const = default;
};

/// The fixed type environment Gamma: value -> class name.
struct TypeEnv {
    std::map<ValueName, ClassName> entries;

    const ClassName* find(const ValueName& v) const;

    bool operator==(const TypeEnv&) const = default;
};

/// v.m(v1, ..., vn) — stands in for reduction rules until expansion.
struct Invocation {
    ValueName receiver;
    MethodName method;
    std::vector<ValueName> args;

    bool operator==(const Invocation&) const = default;
};

/// Result of mbody: parameter variables plus the rule sequence.
struct MethodBody {
    std::vector<std::string> params;
    std::vector<RuleAst> rules;

    bool operator==(const MethodBody&) const = default;
};

std::string render_invocation(const Invocation& inv);

} // namespace biorw
