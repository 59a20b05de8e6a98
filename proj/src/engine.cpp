#include "biorw/engine.hpp"

#include "biorw/rule_text.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace biorw {

// --- generic -----------------------------------------------------------------

std::optional<Multiset> generic_step(const Multiset& state,
                                     const std::vector<GenericSimRule>& rules, Rng& rng,
                                     std::string* applied) {
    std::vector<std::size_t> applicable;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (state.contains(rules[i].lhs)) applicable.push_back(i);
    if (applicable.empty()) return std::nullopt;

    const GenericSimRule& rule = rules[applicable[rng.below(applicable.size())]];
    Multiset next = state;
    next.subtract(rule.lhs);
    next.merge(rule.rhs);
    if (applied) *applied = rule.rendered;
    return next;
}

// --- CLS ---------------------------------------------------------------------

namespace {

using Runs = std::vector<std::pair<ClsMol, int>>;

Runs runs_of(const std::vector<ClsMol>& sorted_mols) {
    Runs runs;
    for (const auto& m : sorted_mols) {
        if (!runs.empty() && runs.back().first == m)
            ++runs.back().second;
        else
            runs.emplace_back(m, 1);
    }
    return runs;
}

struct ClsApp {
    std::vector<int> path; // loop positions descended through, per level
    std::vector<int> take; // per-run counts removed at the target level
    int rule_idx = 0;
    Instantiation sigma;
};

void enumerate_take_vectors(const Runs& runs, std::size_t r, std::vector<int>& take,
                            const std::function<void(const std::vector<int>&)>& k) {
    if (r == runs.size()) {
        k(take);
        return;
    }
    for (int n = 0; n <= runs[r].second; ++n) {
        take[r] = n;
        enumerate_take_vectors(runs, r + 1, take, k);
    }
    take[r] = 0;
}

void enumerate_apps(const std::vector<ClsMol>& level, std::vector<int>& path,
                    const std::vector<ClsRule>& rules, const ClsOptions& opts,
                    std::vector<ClsApp>& out) {
    Runs runs = runs_of(level);
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        std::vector<int> take(runs.size(), 0);
        enumerate_take_vectors(runs, 0, take, [&](const std::vector<int>& chosen) {
            ClsTerm sub;
            for (std::size_t r = 0; r < runs.size(); ++r)
                for (int n = 0; n < chosen[r]; ++n) sub.mols.push_back(runs[r].first);
            for (auto& sigma : cls_match(rules[ri].lhs, sub, opts)) {
                ClsApp app;
                app.path = path;
                app.take = chosen;
                app.rule_idx = static_cast<int>(ri);
                app.sigma = std::move(sigma);
                out.push_back(std::move(app));
            }
        });
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
        if (i > 0 && level[i] == level[i - 1]) continue; // equal siblings give congruent contexts
        if (level[i].kind != ClsMol::Kind::Loop) continue;
        path.push_back(static_cast<int>(i));
        enumerate_apps(level[i].content, path, rules, opts, out);
        path.pop_back();
    }
}

} // namespace

std::optional<ClsTerm> cls_step(const ClsTerm& term, const std::vector<ClsRule>& rules, Rng& rng,
                                const ClsOptions& opts, std::string* applied) {
    std::vector<ClsApp> apps;
    std::vector<int> path;
    enumerate_apps(term.mols, path, rules, opts, apps);
    if (apps.empty()) return std::nullopt;

    const ClsApp& app = apps[rng.below(apps.size())];
    ClsTerm next = term;
    std::vector<ClsMol>* level = &next.mols;
    for (int idx : app.path) level = &(*level)[idx].content;

    Runs runs = runs_of(*level);
    std::vector<ClsMol> rebuilt;
    for (std::size_t r = 0; r < runs.size(); ++r)
        for (int n = 0; n < runs[r].second - app.take[r]; ++n) rebuilt.push_back(runs[r].first);
    ClsTerm produced = apply_instantiation(rules[app.rule_idx].rhs, app.sigma);
    rebuilt.insert(rebuilt.end(), produced.mols.begin(), produced.mols.end());
    *level = std::move(rebuilt);

    if (applied) *applied = render_rule(RuleAst{rules[app.rule_idx]});
    return normalize(std::move(next));
}

// --- P systems ---------------------------------------------------------------

std::string render_psys_state(const PsysState& state) {
    std::ostringstream os;
    os << "env" << render_multiset(state.environment) << " ";
    std::function<void(const PsysSimMembrane&)> rec = [&](const PsysSimMembrane& m) {
        os << "[" << m.label << render_multiset(m.contents);
        for (const auto& child : m.children) {
            os << " ";
            rec(child);
        }
        os << "]";
    };
    rec(state.skin);
    return os.str();
}

namespace {

bool psys_rule_applicable(const PsysSimMembrane& mem, const PsysSimRule& rule,
                          const Multiset& residual) {
    if (!residual.contains(rule.lhs)) return false;
    for (const auto& [_, target] : rule.rhs) {
        if (target.kind != PsysTarget::Kind::In) continue;
        bool found = false;
        for (const auto& child : mem.children)
            if (child.label == target.label.name) found = true;
        if (!found) return false; // target vanished (dissolution); rule cannot fire
    }
    return true;
}

struct MembraneSelection {
    PsysSimMembrane* mem = nullptr;
    PsysSimMembrane* parent = nullptr;
    std::vector<int> counts;
    Multiset residual;
};

void collect_membranes(PsysSimMembrane& m, PsysSimMembrane* parent,
                       std::vector<std::pair<PsysSimMembrane*, PsysSimMembrane*>>& out) {
    out.emplace_back(&m, parent);
    for (auto& child : m.children) collect_membranes(child, &m, out);
}

void dissolve_children(PsysSimMembrane& m, const std::set<std::string>& dissolving) {
    for (auto& child : m.children) dissolve_children(child, dissolving);
    std::vector<PsysSimMembrane> kept;
    for (auto& child : m.children) {
        if (dissolving.count(child.label)) {
            m.contents.merge(child.contents);
            for (auto& grandchild : child.children) kept.push_back(std::move(grandchild));
        } else {
            kept.push_back(std::move(child));
        }
    }
    m.children = std::move(kept);
}

} // namespace

bool psys_step(PsysState& state, Rng& rng, std::string* applied) {
    std::vector<std::pair<PsysSimMembrane*, PsysSimMembrane*>> membranes;
    collect_membranes(state.skin, nullptr, membranes);

    // phase 1: per-membrane maximal selection against the residual contents.
    // A rule is selectable only while no applicable rule outranks it.
    std::vector<MembraneSelection> selections;
    bool any = false;
    for (auto [mem, parent] : membranes) {
        MembraneSelection sel;
        sel.mem = mem;
        sel.parent = parent;
        sel.counts.assign(mem->rules.size(), 0);
        sel.residual = mem->contents;
        while (true) {
            std::vector<int> applicable;
            for (std::size_t i = 0; i < mem->rules.size(); ++i)
                if (psys_rule_applicable(*mem, mem->rules[i], sel.residual))
                    applicable.push_back(static_cast<int>(i));
            if (applicable.empty()) break;
            std::vector<int> unblocked;
            for (int i : applicable) {
                bool blocked = false;
                for (int j : applicable)
                    if (j != i && mem->priority.count({j, i})) blocked = true;
                if (!blocked) unblocked.push_back(i);
            }
            if (unblocked.empty()) break; // only under a cyclic priority, which validation rejects
            int pick = unblocked[rng.below(unblocked.size())];
            ++sel.counts[pick];
            sel.residual.subtract(mem->rules[pick].lhs);
            any = true;
        }
        selections.push_back(std::move(sel));
    }
    if (!any) return false;

    // phase 2: route products into per-membrane buffers keyed by label
    std::map<std::string, Multiset> buffers;
    Multiset env_buffer;
    std::set<std::string> dissolving;
    std::ostringstream desc;
    bool first_desc = true;
    for (const auto& sel : selections) {
        for (std::size_t i = 0; i < sel.counts.size(); ++i) {
            int count = sel.counts[i];
            if (count == 0) continue;
            const PsysSimRule& rule = sel.mem->rules[i];
            if (applied) {
                if (!first_desc) desc << "; ";
                first_desc = false;
                desc << sel.mem->label << ": " << rule.rendered << " x" << count;
            }
            for (const auto& [symbol, target] : rule.rhs) {
                switch (target.kind) {
                    case PsysTarget::Kind::Here:
                        buffers[sel.mem->label].add(symbol, count);
                        break;
                    case PsysTarget::Kind::Out:
                        if (sel.parent)
                            buffers[sel.parent->label].add(symbol, count);
                        else
                            env_buffer.add(symbol, count);
                        break;
                    case PsysTarget::Kind::In:
                        buffers[target.label.name].add(symbol, count);
                        break;
                }
            }
            if (rule.dissolves) dissolving.insert(sel.mem->label);
        }
    }
    if (dissolving.count(state.skin.label))
        throw std::logic_error("the skin membrane cannot dissolve");

    // phase 3: commit residuals, deliver buffers, dissolve bottom-up
    for (auto& sel : selections) sel.mem->contents = sel.residual;
    for (auto [mem, _] : membranes) {
        auto it = buffers.find(mem->label);
        if (it != buffers.end()) mem->contents.merge(it->second);
    }
    state.environment.merge(env_buffer);
    dissolve_children(state.skin, dissolving);

    if (applied) *applied = desc.str();
    return true;
}

// --- validation and preparation ----------------------------------------------

namespace {

void validate_items(const std::vector<RuleItem>& items, Formalism f, Diagnostics& diags) {
    for (const auto& item : items) {
        if (item.is_invocation()) {
            diags.push_back(make_error("not-ground",
                                       "unexpanded invocation " +
                                           render_invocation(item.invocation()),
                                       item.span));
            continue;
        }
        const RuleAst& rule = item.rule();
        if (formalism_of(rule) != f) {
            diags.push_back(make_error("backend-mismatch",
                                       "rule '" + render_rule(rule) + "' belongs to the " +
                                           to_string(formalism_of(rule)) + " backend",
                                       item.span));
            continue;
        }
        if (!is_ground(rule)) {
            diags.push_back(make_error(
                "not-ground", "rule '" + render_rule(rule) + "' still contains parameters",
                item.span));
            continue;
        }
        if (const auto* c = std::get_if<ClsRule>(&rule)) {
            std::set<std::string> lhs_vars, rhs_vars;
            auto var_key = [](const Atom& a) {
                return std::to_string(static_cast<int>(a.kind)) + ":" + a.name;
            };
            for (const auto& a : atoms_of(c->lhs))
                if (is_rewrite_var(a.kind)) lhs_vars.insert(var_key(a));
            for (const auto& a : atoms_of(c->rhs))
                if (is_rewrite_var(a.kind)) rhs_vars.insert(var_key(a));
            for (const auto& v : rhs_vars)
                if (!lhs_vars.count(v))
                    diags.push_back(make_error("unbound-rewrite-variable",
                                               "rule '" + render_rule(rule) +
                                                   "' introduces a rewrite variable on the right",
                                               item.span));
        }
    }
}

void validate_membrane(const Membrane& m, bool is_skin, std::set<std::string>& labels,
                       Diagnostics& diags) {
    if (!labels.insert(m.label).second)
        diags.push_back(
            make_error("duplicate-label", "membrane label '" + m.label + "' reused", m.span));
    validate_items(m.items, Formalism::Psys, diags);

    std::set<std::string> child_labels;
    for (const auto& child : m.children) child_labels.insert(child.label);

    for (const auto& item : m.items) {
        if (item.is_invocation()) continue;
        const auto* rule = std::get_if<PsysRule>(&item.rule());
        if (!rule) continue;
        if (rule->dissolves && is_skin)
            diags.push_back(make_error("skin-dissolve",
                                       "rule '" + render_rule(item.rule()) +
                                           "' would dissolve the skin membrane",
                                       item.span));
        for (const auto& product : rule->rhs) {
            if (product.target.kind == PsysTarget::Kind::In &&
                product.target.label.kind == AtomKind::Value &&
                !child_labels.count(product.target.label.name)) {
                diags.push_back(make_error(
                    "routing",
                    "in_" + product.target.label.name + " does not name a direct child of membrane '" +
                        m.label + "'",
                    item.span));
            }
        }
    }

    const int n = static_cast<int>(m.items.size());
    std::set<std::pair<int, int>> closure;
    for (const auto& [hi, lo] : m.priorities) {
        if (hi < 0 || hi >= n || lo < 0 || lo >= n) {
            diags.push_back(make_error("priority-index",
                                       "priority pair refers to a rule slot that does not exist",
                                       m.span));
            continue;
        }
        closure.insert({hi, lo});
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [a, b] : std::set<std::pair<int, int>>(closure))
            for (const auto& [c, d] : std::set<std::pair<int, int>>(closure))
                if (b == c && closure.insert({a, d}).second) grew = true;
    }
    for (const auto& [a, b] : closure)
        if (a == b) {
            diags.push_back(make_error(
                "priority-cycle", "priority relation of membrane '" + m.label + "' has a cycle",
                m.span));
            break;
        }

    for (const auto& child : m.children) validate_membrane(child, false, labels, diags);
}

} // namespace

Diagnostics validate_for_simulation(const Model& model) {
    Diagnostics diags;
    switch (model.formalism) {
        case Formalism::Generic:
            validate_items(model.generic().items, Formalism::Generic, diags);
            break;
        case Formalism::Cls:
            validate_items(model.cls().items, Formalism::Cls, diags);
            break;
        case Formalism::Psys: {
            const PsysModel& p = model.psys();
            std::set<std::string> labels;
            validate_membrane(p.skin, true, labels, diags);
            if (!p.output_label.empty() && !find_membrane(p.skin, p.output_label))
                diags.push_back(make_error("unknown-label", "output membrane '" + p.output_label +
                                                                "' does not exist"));
            break;
        }
    }
    return diags;
}

namespace {

Multiset multiset_of_atoms(const std::vector<Atom>& atoms) {
    Multiset ms;
    for (const auto& a : atoms) ms.add(a.name);
    return ms;
}

std::vector<GenericSimRule> prep_generic(const std::vector<RuleItem>& items) {
    std::vector<GenericSimRule> rules;
    for (const auto& item : items) {
        const auto& g = std::get<GenericRule>(item.rule());
        rules.push_back(
            {multiset_of_atoms(g.lhs), multiset_of_atoms(g.rhs), render_rule(item.rule())});
    }
    return rules;
}

std::vector<ClsRule> prep_cls(const std::vector<RuleItem>& items) {
    std::vector<ClsRule> rules;
    for (const auto& item : items) rules.push_back(std::get<ClsRule>(item.rule()));
    return rules;
}

PsysSimMembrane prep_psys(const Membrane& m) {
    PsysSimMembrane sim;
    sim.label = m.label;
    sim.contents = m.contents;
    for (const auto& item : m.items) {
        const auto& r = std::get<PsysRule>(item.rule());
        PsysSimRule rule;
        rule.lhs = multiset_of_atoms(r.lhs);
        for (const auto& product : r.rhs) rule.rhs.emplace_back(product.symbol.name, product.target);
        rule.dissolves = r.dissolves;
        rule.rendered = render_rule(item.rule());
        sim.rules.push_back(std::move(rule));
    }
    sim.priority.insert(m.priorities.begin(), m.priorities.end());
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = sim.priority;
        for (const auto& [a, b] : snapshot)
            for (const auto& [c, d] : snapshot)
                if (b == c && sim.priority.insert({a, d}).second) grew = true;
    }
    for (const auto& child : m.children) sim.children.push_back(prep_psys(child));
    return sim;
}

} // namespace

SimOutcome run_model(const Model& expanded, std::uint64_t seed, std::size_t max_steps,
                     const EngineOptions& opts) {
    SimOutcome outcome;
    outcome.diags = validate_for_simulation(expanded);
    if (has_errors(outcome.diags)) return outcome;

    Rng rng(seed);
    RunResult& result = outcome.result;

    switch (expanded.formalism) {
        case Formalism::Generic: {
            Multiset state = expanded.generic().state;
            auto rules = prep_generic(expanded.generic().items);
            result.steps.push_back({0, "-", render_multiset(state)});
            for (std::size_t i = 1; i <= max_steps; ++i) {
                std::string applied;
                auto next = generic_step(state, rules, rng, &applied);
                if (!next) {
                    result.halted = true;
                    break;
                }
                state = std::move(*next);
                result.steps.push_back({i, applied, render_multiset(state)});
            }
            result.final_state = render_multiset(state);
            break;
        }
        case Formalism::Cls: {
            ClsTerm term = expanded.cls().term;
            auto rules = prep_cls(expanded.cls().items);
            result.steps.push_back({0, "-", render_term(term)});
            for (std::size_t i = 1; i <= max_steps; ++i) {
                std::string applied;
                auto next = cls_step(term, rules, rng, opts.cls, &applied);
                if (!next) {
                    result.halted = true;
                    break;
                }
                term = std::move(*next);
                result.steps.push_back({i, applied, render_term(term)});
            }
            result.final_state = render_term(term);
            break;
        }
        case Formalism::Psys: {
            PsysState state{prep_psys(expanded.psys().skin), {}};
            result.steps.push_back({0, "-", render_psys_state(state)});
            for (std::size_t i = 1; i <= max_steps; ++i) {
                std::string applied;
                if (!psys_step(state, rng, &applied)) {
                    result.halted = true;
                    break;
                }
                result.steps.push_back({i, applied, render_psys_state(state)});
            }
            result.final_state = render_psys_state(state);
            const std::string& out_label = expanded.psys().output_label;
            if (out_label.empty()) {
                result.output_report = "environment " + render_multiset(state.environment);
            } else {
                std::function<const PsysSimMembrane*(const PsysSimMembrane&)> find =
                    [&](const PsysSimMembrane& m) -> const PsysSimMembrane* {
                    if (m.label == out_label) return &m;
                    for (const auto& child : m.children)
                        if (const auto* f = find(child)) return f;
                    return nullptr;
                };
                const PsysSimMembrane* out_mem = find(state.skin);
                result.output_report =
                    out_mem ? "membrane " + out_label + " " + render_multiset(out_mem->contents)
                            : "membrane " + out_label + " dissolved";
            }
            break;
        }
    }
    return outcome;
}

} // namespace biorw
