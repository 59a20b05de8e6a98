#pragma once

#include "biorw/cls_term.hpp"
#include "biorw/diagnostics.hpp"
#include "biorw/model.hpp"
#include "biorw/multiset.hpp"
#include "biorw/rng.hpp"
#include "biorw/rules.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace biorw {

struct EngineOptions {
    ClsOptions cls;
};

// --- generic multiset engine -------------------------------------------------

struct GenericSimRule {
    Multiset lhs;
    Multiset rhs;
    std::string rendered;
};

/// One step: pick an applicable rule uniformly (seeded), remove its lhs,
/// add its rhs. nullopt when no rule's lhs is contained in the state.
std::optional<Multiset> generic_step(const Multiset& state,
                                     const std::vector<GenericSimRule>& rules, Rng& rng,
                                     std::string* applied = nullptr);

// --- CLS rewriting engine ----------------------------------------------------

/// One step: enumerate every (context, rule, instantiation) redex, pick
/// one uniformly (seeded), return the rewritten term, normalized.
std::optional<ClsTerm> cls_step(const ClsTerm& term, const std::vector<ClsRule>& rules,
                                Rng& rng, const ClsOptions& opts = {},
                                std::string* applied = nullptr);

// --- P-system engine ---------------------------------------------------------

struct PsysSimRule {
    Multiset lhs;
    std::vector<std::pair<std::string, PsysTarget>> rhs;
    bool dissolves = false;
    std::string rendered;
};

struct PsysSimMembrane {
    std::string label;
    Multiset contents;
    std::vector<PsysSimRule> rules;
    std::set<std::pair<int, int>> priority; // transitive closure: (higher, lower)
    std::vector<PsysSimMembrane> children;
};

struct PsysState {
    PsysSimMembrane skin;
    Multiset environment; // symbols sent out of the skin
};

/// "env{...} [1{u, w*2} [2{}] [3{}]]"
std::string render_psys_state(const PsysState& state);

/// One maximal-parallelism step over all membranes simultaneously:
/// per membrane, saturate a selection of applications (a rule is
/// selectable only while applicable to the residual contents and no
/// higher-priority rule is applicable to it; ties resolved by seeded
/// uniform choice), then route products (here/out/in_j) and process
/// dissolutions bottom-up. Returns false when no membrane has an
/// applicable rule (halt). `applied` receives per-membrane counts,
/// e.g. "1: w -> w(in_2) x2; 3: u -> u(out) x1".
bool psys_step(PsysState& state, Rng& rng, std::string* applied = nullptr);

// --- shared driver -----------------------------------------------------------

struct TraceStep {
    std::size_t index = 0;
    std::string rule;  // "-" for the initial snapshot
    std::string state;
};

struct RunResult {
    std::vector<TraceStep> steps; // steps.front() is the initial state
    bool halted = false;          // stopped because no step existed
    std::string final_state;
    std::string output_report;    // P systems: output region contents at the end
};

/// Simulation preconditions beyond typing: all slots expanded and
/// ground ("not-ground"); P systems additionally need tree-wide unique
/// labels ("duplicate-label"), in_j targets that are direct children
/// ("routing"), no dissolving rule in the skin ("skin-dissolve"),
/// priorities forming a strict partial order ("priority-cycle") and a
/// declared output membrane that exists ("unknown-label").
Diagnostics validate_for_simulation(const Model& model);

struct SimOutcome {
    Diagnostics diags; // non-empty on setup failure; result is then meaningless
    RunResult result;
};

/// Validate, then step the backend engine until halt or max_steps.
/// Deterministic for a fixed (model, seed, max_steps).
SimOutcome run_model(const Model& expanded, std::uint64_t seed, std::size_t max_steps,
                     const EngineOptions& opts = {});

} // namespace biorw
