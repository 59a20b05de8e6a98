#pragma once

#include "biorw/classes.hpp"
#include "biorw/diagnostics.hpp"
#include "biorw/model.hpp"
#include "biorw/wf.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace biorw {

/// Class table sanity: keys match declaration names ("key-mismatch"),
/// Object is not declared ("object-declared"), every mentioned class
/// name — superclass or parameter type — is declared ("missing-class"),
/// and the extends graph is acyclic ("cycle"). Empty result = valid.
Diagnostics validate_class_table(const ClassTable& ct);

/// Gamma sanity: every assigned class is declared or Object
/// ("unknown-class"), every model value has an entry ("untyped-value").
Diagnostics validate_type_env(const TypeEnv& gamma, const ClassTable& ct,
                              const std::set<ValueName>& model_values);

/// d reachable from c by zero or more extends edges. Throws
/// std::invalid_argument when c or d is neither declared nor Object.
bool is_subtype(const ClassTable& ct, const ClassName& c, const ClassName& d);

/// Parameter types of the nearest definition of m on the chain
/// c, super(c), ...; nullopt when the chain is exhausted (lookup on
/// Object always fails — Object has no methods).
std::optional<std::vector<ClassName>> mtype(const ClassTable& ct, const MethodName& m,
                                            const ClassName& c);

/// Parameter variables and rule sequence of the nearest definition.
std::optional<MethodBody> mbody(const ClassTable& ct, const MethodName& m, const ClassName& c);

/// Rule t-invmeth. Codes: "untyped-receiver", "method-not-found",
/// "arity-mismatch", "untyped-argument", "argument-type-mismatch";
/// argument diagnostics name the 1-based position.
Diagnostics typecheck_invocation(const ClassTable& ct, const TypeEnv& gamma,
                                 const Invocation& inv);

/// Rule t-clmeth: every body rule must satisfy the backend judgment
/// under x̄:C̄, this:C.
Diagnostics typecheck_method(const ClassTable& ct, const TypeEnv& gamma, const ClassName& c,
                             const MethodDecl& m, const WfJudgment& wf);

/// Rule t-class over the whole table; diagnostics aggregated.
Diagnostics typecheck_class_table(const ClassTable& ct, const TypeEnv& gamma,
                                  const WfJudgment& wf);

/// Fail-fast expansion failure. Carries the first diagnostic.
struct ExpandError : std::runtime_error {
    Diagnostic diagnostic;

    explicit ExpandError(Diagnostic d)
        : std::runtime_error(format_diagnostic(d)), diagnostic(std::move(d)) {}
};

/// Rule e-meth: the method's rules with parameters replaced by the
/// argument values and `this` by the receiver. Rewrite variables are
/// untouched; rule order is preserved. Throws ExpandError on lookup
/// failure (unreachable after a clean typecheck_invocation).
std::vector<RuleAst> expand_invocation(const ClassTable& ct, const TypeEnv& gamma,
                                       const Invocation& inv);

/// Replace every invocation slot by the concatenation of its expansions,
/// order-preserving; every other component is copied unchanged.
/// Membrane priorities are remapped onto the expanded slots. Throws
/// ExpandError with the first typing diagnostic.
Model expand_model(const ClassTable& ct, const TypeEnv& gamma, const Model& model);

} // namespace biorw
