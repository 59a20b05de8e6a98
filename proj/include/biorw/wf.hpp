#pragma once

#include "biorw/classes.hpp"
#include "biorw/diagnostics.hpp"
#include "biorw/rules.hpp"

#include <functional>
#include <map>

namespace biorw {

/// Assumption context of rule t-clmeth: x̄:C̄ plus this:C, with the
/// class table available for subtype queries.
struct WfContext {
    const ClassTable* table = nullptr;
    std::map<std::string, ClassName> params; // parameter variable -> declared type
    ClassName this_class;
};

struct WfOptions {
    /// P-system right-hand sides must be all-in or all-{here,out}, as in
    /// the formalism's set definition. Off allows mixing.
    bool strict_psys_targets = true;
};

/// Backend well-formedness judgment plugged into method typing.
using WfJudgment = std::function<Diagnostics(const WfContext&, const RuleAst&, const TypeEnv&)>;

Diagnostics wf_generic(const WfContext& ctx, const GenericRule& rule, const TypeEnv& gamma);
Diagnostics wf_cls(const WfContext& ctx, const ClsRule& rule, const TypeEnv& gamma);
Diagnostics wf_psys(const WfContext& ctx, const PsysRule& rule, const TypeEnv& gamma,
                    const WfOptions& opts = {});

/// The judgment for a formalism. Also rejects rules tagged with a
/// different backend ("backend-mismatch").
WfJudgment wf_for(Formalism f, WfOptions opts = {});

} // namespace biorw
