#pragma once

// Shared fixtures for the test suites: the class tables of the worked
// examples, built through the parser from the same listings the
// fixtures ship.

#include "biorw/frontend.hpp"
#include "biorw/parser.hpp"
#include "biorw/rng.hpp"
#include "biorw/rule_text.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

namespace testing {

inline biorw::ClassTable parse_table(const std::string& text, biorw::Formalism backend) {
    biorw::ParsedClassFile parsed = biorw::parse_class_file(text, backend);
    if (!parsed.ok()) {
        std::string msg = "test class table failed to parse:";
        for (const auto& d : parsed.diags) msg += "\n  " + biorw::format_diagnostic(d);
        throw std::runtime_error(msg);
    }
    return parsed.table;
}

/// Mol, Enz(act), Hyd(act/3), Sug, GlHyd(act, sugars).
inline const biorw::ClassTable& enzymes_table() {
    static const biorw::ClassTable table = parse_table(R"(
class Mol extends Object {}
class Enz extends Object {
  act(Mol S, Mol P) {
    S + this -> this + P
  }
}
class Hyd extends Enz {
  act(Mol S, Mol P1, Mol P2) {
    S + H2O + this -> this + P1 + P2
  }
}
class Sug extends Mol {}
class GlHyd extends Hyd {
  act(Sug S, Sug P1, Sug P2) {
    S + H2O + this -> this + P1 + P2
  }
}
)",
                                                       biorw::Formalism::Generic);
    return table;
}

/// Mol, Enz(ass), EnzComp(dis) — the kinetics classes.
inline const biorw::ClassTable& kinetics_table() {
    static const biorw::ClassTable table = parse_table(R"(
class Mol extends Object {}
class Enz extends Object {
  ass(Mol S, EnzComp ES) {
    S + this -> ES
  }
}
class EnzComp extends Enz {
  dis(Enz E, Mol P) {
    this -> E + P
  }
}
)",
                                                       biorw::Formalism::Generic);
    return table;
}

inline const biorw::ClassTable& porins_cls_table() {
    static const biorw::ClassTable table = parse_table(R"(
class Mol extends Object {}
class Por extends Object {
  in(Mol S) {
    S | loop(this.~x)[$X] -> loop(this.~x)[S | $X]
  }
  out(Mol S) {
    loop(this.~x)[S | $X] -> S | loop(this.~x)[$X]
  }
}
)",
                                                       biorw::Formalism::Cls);
    return table;
}

inline const biorw::ClassTable& porins_psys_table() {
    static const biorw::ClassTable table = parse_table(R"(
class BioObj extends Object {}
class Lab extends Object {}
class Mol extends BioObj {}
class Por extends BioObj {
  in(Mol S, Lab J) {
    S -> S(in_J)
  }
  out(Mol S) {
    S -> S(out)
  }
}
)",
                                                       biorw::Formalism::Psys);
    return table;
}

inline biorw::TypeEnv gamma(
    std::initializer_list<std::pair<std::string, std::string>> entries) {
    biorw::TypeEnv env;
    for (const auto& [v, c] : entries) env.entries.emplace(v, c);
    return env;
}

/// Parse exactly one rule or fail loudly.
inline biorw::RuleAst rule(const std::string& text, biorw::Formalism backend,
                           const std::set<std::string>& params = {}, bool allow_this = false) {
    biorw::ParsedRules parsed = biorw::parse_rule(text, backend, params, allow_this);
    if (!parsed.ok() || parsed.rules.size() != 1)
        throw std::runtime_error("test rule failed to parse: " + text);
    return parsed.rules.front();
}

inline biorw::ClsTerm term(const std::string& text) {
    biorw::ParsedRules parsed =
        biorw::parse_rule(text + " -> " + text, biorw::Formalism::Cls, {}, false);
    if (!parsed.ok() || parsed.rules.size() != 1)
        throw std::runtime_error("test term failed to parse: " + text);
    auto t = biorw::term_of_pattern(std::get<biorw::ClsRule>(parsed.rules.front()).lhs);
    if (!t) throw std::runtime_error("test term contains variables: " + text);
    return *t;
}

inline biorw::ClsPattern pattern(const std::string& text) {
    biorw::ParsedRules parsed =
        biorw::parse_rule(text + " -> " + text, biorw::Formalism::Cls, {}, false);
    if (!parsed.ok() || parsed.rules.size() != 1)
        throw std::runtime_error("test pattern failed to parse: " + text);
    return std::get<biorw::ClsRule>(parsed.rules.front()).lhs;
}

inline std::string fixtures_dir() {
#ifdef BIORW_TEST_FIXTURES_DIR
    return BIORW_TEST_FIXTURES_DIR;
#else
    return "fixtures";
#endif
}

/// Random table: class c<i> extends one of the earlier classes or Object.
inline biorw::ClassTable random_acyclic_table(biorw::Rng& rng, int n) {
    using namespace biorw;
    ClassTable ct;
    std::vector<ClassName> names;
    for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        ClassDecl decl;
        decl.name = names[i];
        decl.superclass = i == 0 ? kObject : names[rng.below(static_cast<std::uint64_t>(i + 1))];
        if (decl.superclass == names[i]) decl.superclass = kObject;
        ct.entries.emplace(decl.name, decl);
    }
    return ct;
}

/// Random rule generator shared by the round-trip and substitution
/// property suites.
struct RuleGen {
    biorw::Rng rng;
    // p0/p1 double as parameter names when a test re-parses with params bound
    std::vector<std::string> names{"a", "b", "p0", "p1", "glu"};

    explicit RuleGen(std::uint64_t seed) : rng(seed) {}

    std::string name() { return names[rng.below(names.size())]; }

    biorw::Atom atom() {
        using namespace biorw;
        switch (rng.below(4)) {
            case 0: return {AtomKind::ElemVar, "e" + std::to_string(rng.below(2))};
            case 1: return {AtomKind::SeqVar, "s" + std::to_string(rng.below(2))};
            default: return value_atom(name());
        }
    }

    biorw::ClsSeqPat seq(int max_len) {
        biorw::ClsSeqPat out;
        int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
        for (int i = 0; i < len; ++i) out.push_back(atom());
        return out;
    }

    biorw::ClsPatMol mol(int depth) {
        using namespace biorw;
        ClsPatMol m;
        std::uint64_t pick = rng.below(depth > 0 ? 3 : 2);
        if (pick == 0) {
            m.kind = ClsPatMol::Kind::TermVar;
            m.var = "X" + std::to_string(rng.below(2));
        } else if (pick == 2) {
            m.kind = ClsPatMol::Kind::Loop;
            m.seq = seq(2);
            m.content = pat(depth - 1).mols;
        } else {
            m.kind = ClsPatMol::Kind::Seq;
            m.seq = seq(3);
        }
        return m;
    }

    biorw::ClsPattern pat(int depth) {
        biorw::ClsPattern p;
        int n = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < n; ++i) p.mols.push_back(mol(depth));
        return p;
    }

    biorw::RuleAst cls_rule(int depth) {
        biorw::ClsPattern lhs = pat(depth);
        return biorw::ClsRule{lhs, rng.below(2) ? lhs : pat(depth)};
    }

    biorw::RuleAst generic_rule() {
        biorw::GenericRule g;
        int nl = 1 + static_cast<int>(rng.below(3));
        int nr = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < nl; ++i) g.lhs.push_back(biorw::value_atom(name()));
        for (int i = 0; i < nr; ++i) g.rhs.push_back(biorw::value_atom(name()));
        return g;
    }

    biorw::RuleAst psys_rule() {
        using namespace biorw;
        PsysRule p;
        int nl = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < nl; ++i) p.lhs.push_back(value_atom(name()));
        int nr = static_cast<int>(rng.below(3));
        for (int i = 0; i < nr; ++i) {
            PsysItem item;
            item.symbol = value_atom(name());
            switch (rng.below(3)) {
                case 0: item.target.kind = PsysTarget::Kind::Here; break;
                case 1: item.target.kind = PsysTarget::Kind::Out; break;
                default:
                    item.target.kind = PsysTarget::Kind::In;
                    item.target.label = value_atom(std::to_string(rng.below(3)));
            }
            p.rhs.push_back(item);
        }
        p.dissolves = rng.below(4) == 0;
        return p;
    }
};

/// Random well-formed-enough model for parse/emit round-trips.
inline std::pair<biorw::TypeEnv, biorw::Model> random_model(biorw::Rng& rng, int shape) {
    using namespace biorw;
    const std::vector<std::string> names{"a", "b", "w", "u"};
    auto name = [&] { return names[rng.below(names.size())]; };
    TypeEnv gamma;
    for (const auto& n : names) gamma.entries.emplace(n, rng.below(2) ? "Mol" : "Enz");
    Model model;
    switch (shape % 3) {
        case 0: {
            model.formalism = Formalism::Generic;
            GenericModel g;
            for (int i = 0; i < 3; ++i) g.state.add(name(), 1 + static_cast<long long>(rng.below(3)));
            int items = static_cast<int>(rng.below(4));
            for (int i = 0; i < items; ++i) {
                if (rng.below(2)) {
                    g.items.push_back(RuleItem{
                        rule(name() + " + " + name() + " -> " + name(), Formalism::Generic), {}});
                } else {
                    g.items.push_back(RuleItem{Invocation{name(), "m", {name()}}, {}});
                }
            }
            model.body = g;
            break;
        }
        case 1: {
            model.formalism = Formalism::Cls;
            ClsModel c;
            c.term = term(name() + " | loop(" + name() + ")[" + name() + "]");
            c.items.push_back(RuleItem{rule(name() + " | loop(" + name() + ".~x)[$X] -> loop(" +
                                                name() + ".~x)[" + name() + " | $X]",
                                            Formalism::Cls),
                                       {}});
            model.body = c;
            break;
        }
        default: {
            model.formalism = Formalism::Psys;
            PsysModel p;
            p.skin.label = "1";
            p.skin.contents.add(name(), 1 + static_cast<long long>(rng.below(2)));
            p.skin.items.push_back(
                RuleItem{rule(name() + " -> " + name() + "(in_2)", Formalism::Psys), {}});
            p.skin.items.push_back(RuleItem{
                rule(name() + " -> " + name() + "(out) delta", Formalism::Psys), {}});
            if (rng.below(2)) p.skin.priorities.emplace_back(0, 1);
            Membrane child;
            child.label = "2";
            child.items.push_back(RuleItem{Invocation{name(), "out", {name()}}, {}});
            p.skin.children.push_back(child);
            p.output_label = rng.below(2) ? "1" : "";
            model.body = p;
            break;
        }
    }
    return {std::move(gamma), std::move(model)};
}

} // namespace testing
