#include "biorw/calculus.hpp"

#include "biorw/rng.hpp"
#include "biorw/rule_text.hpp"
#include "biorw/substitution.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace biorw;

namespace {

const TypeEnv kPhoIsoGamma = testing::gamma(
    {{"PhoIso", "Enz"}, {"glu", "Mol"}, {"fru", "Mol"}, {"H2O", "Mol"}});

const TypeEnv kKineticsGamma =
    testing::gamma({{"E", "Enz"}, {"ES", "EnzComp"}, {"S", "Mol"}, {"P", "Mol"}});

} // namespace

TEST_CASE("class table sanity conditions") {
    SUBCASE("the worked enzyme table is valid") {
        CHECK(validate_class_table(testing::enzymes_table()).empty());
        CHECK(validate_class_table(testing::kinetics_table()).empty());
        CHECK(validate_class_table(testing::porins_cls_table()).empty());
        CHECK(validate_class_table(testing::porins_psys_table()).empty());
    }
    SUBCASE("a self-extending class is a cycle") {
        ClassTable ct = testing::parse_table("class A extends A {}", Formalism::Generic);
        Diagnostics diags = validate_class_table(ct);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "cycle");
    }
    SUBCASE("a longer cycle is reported once per member") {
        ClassTable ct = testing::parse_table("class A extends B {}\nclass B extends A {}",
                                             Formalism::Generic);
        Diagnostics diags = validate_class_table(ct);
        CHECK(diags.size() == 2);
        for (const auto& d : diags) CHECK(d.code == "cycle");
    }
    SUBCASE("a missing superclass is reported") {
        ClassTable ct = testing::parse_table("class A extends Prot {}", Formalism::Generic);
        Diagnostics diags = validate_class_table(ct);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "missing-class");
    }
    SUBCASE("a missing parameter type is reported") {
        ClassTable ct = testing::parse_table(
            "class A extends Object { m(Ghost X) { X -> X } }", Formalism::Generic);
        CHECK(has_code(validate_class_table(ct), "missing-class"));
    }
    SUBCASE("Object may not be declared") {
        ClassTable ct;
        ClassDecl decl;
        decl.name = kObject;
        decl.superclass = "A";
        ct.entries.emplace(kObject, decl);
        CHECK(has_code(validate_class_table(ct), "object-declared"));
    }
    SUBCASE("table keys must match declaration names") {
        ClassTable ct;
        ClassDecl decl;
        decl.name = "B";
        decl.superclass = kObject;
        ct.entries.emplace("A", decl);
        CHECK(has_code(validate_class_table(ct), "key-mismatch"));
    }
}

TEST_CASE("type environment sanity conditions") {
    const ClassTable& ct = testing::enzymes_table();
    SUBCASE("the worked Gamma is valid") {
        TypeEnv g = testing::gamma({{"PhoIso", "Enz"}, {"glu", "Mol"}, {"fru", "Mol"}});
        CHECK(validate_type_env(g, ct, {"PhoIso", "glu", "fru"}).empty());
    }
    SUBCASE("a value used by the model but missing from Gamma") {
        TypeEnv g = testing::gamma({{"PhoIso", "Enz"}});
        Diagnostics diags = validate_type_env(g, ct, {"PhoIso", "lac"});
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "untyped-value");
    }
    SUBCASE("an entry with an undeclared class") {
        TypeEnv g = testing::gamma({{"w", "Aqua"}});
        Diagnostics diags = validate_type_env(g, ct, {});
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "unknown-class");
    }
    SUBCASE("Object is allowed as an assigned class") {
        TypeEnv g = testing::gamma({{"x", "Object"}});
        CHECK(validate_type_env(g, ct, {"x"}).empty());
    }
}

TEST_CASE("subtyping") {
    const ClassTable& ct = testing::enzymes_table();
    CHECK(is_subtype(ct, "Enz", "Object"));
    CHECK(is_subtype(ct, "Mol", "Mol"));
    CHECK(is_subtype(ct, "GlHyd", "Enz")); // GlHyd -> Hyd -> Enz
    CHECK_FALSE(is_subtype(ct, "Enz", "Mol"));
    CHECK_FALSE(is_subtype(ct, "Object", "Mol"));
    CHECK(is_subtype(ct, "Object", "Object"));
    CHECK_THROWS_AS((void)is_subtype(ct, "Ghost", "Mol"), std::invalid_argument);
    CHECK_THROWS_AS((void)is_subtype(ct, "Mol", "Ghost"), std::invalid_argument);
}


TEST_CASE("subtype is a partial order on random acyclic tables") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        ClassTable ct = testing::random_acyclic_table(rng, 6);
        REQUIRE(validate_class_table(ct).empty());
        std::vector<ClassName> all{kObject};
        for (const auto& [name, _] : ct.entries) all.push_back(name);
        for (const auto& a : all) {
            CHECK(is_subtype(ct, a, a));
            for (const auto& b : all) {
                if (is_subtype(ct, a, b) && is_subtype(ct, b, a)) CHECK(a == b);
                for (const auto& c : all)
                    if (is_subtype(ct, a, b) && is_subtype(ct, b, c))
                        CHECK(is_subtype(ct, a, c));
            }
        }
    }
}

TEST_CASE("mtype walks the extends chain") {
    SUBCASE("direct lookup") {
        auto types = mtype(testing::enzymes_table(), "act", "Enz");
        REQUIRE(types.has_value());
        CHECK(*types == std::vector<ClassName>{"Mol", "Mol"});
    }
    SUBCASE("inherited lookup") {
        auto types = mtype(testing::kinetics_table(), "ass", "EnzComp");
        REQUIRE(types.has_value());
        CHECK(*types == std::vector<ClassName>{"Mol", "EnzComp"});
    }
    SUBCASE("an override may change the arity") {
        auto types = mtype(testing::enzymes_table(), "act", "Hyd");
        REQUIRE(types.has_value());
        CHECK(types->size() == 3);
    }
    SUBCASE("lookup fails on Object") {
        CHECK_FALSE(mtype(testing::enzymes_table(), "act", "Mol").has_value());
    }
}

TEST_CASE("mbody returns parameters and rules") {
    SUBCASE("mbody(act, Enz)") {
        auto body = mbody(testing::enzymes_table(), "act", "Enz");
        REQUIRE(body.has_value());
        CHECK(body->params == std::vector<std::string>{"S", "P"});
        REQUIRE(body->rules.size() == 1);
        CHECK(render_rule(body->rules[0]) == "S + this -> this + P");
    }
    SUBCASE("ass is inherited unchanged by EnzComp") {
        auto inherited = mbody(testing::kinetics_table(), "ass", "EnzComp");
        auto declared = mbody(testing::kinetics_table(), "ass", "Enz");
        REQUIRE(inherited.has_value());
        CHECK(*inherited == *declared);
    }
    SUBCASE("dis is not visible from Enz") {
        CHECK_FALSE(mbody(testing::kinetics_table(), "dis", "Enz").has_value());
    }
    SUBCASE("an override shadows the superclass body") {
        auto hyd = mbody(testing::enzymes_table(), "act", "Hyd");
        auto enz = mbody(testing::enzymes_table(), "act", "Enz");
        REQUIRE(hyd.has_value());
        CHECK(hyd->params.size() == 3);
        CHECK_FALSE(*hyd == *enz);
    }
    SUBCASE("mtype and mbody agree on arity everywhere they succeed") {
        for (const ClassTable* ct : {&testing::enzymes_table(), &testing::kinetics_table()}) {
            for (const auto& [name, _] : ct->entries) {
                for (const char* m : {"act", "ass", "dis"}) {
                    auto types = mtype(*ct, m, name);
                    auto body = mbody(*ct, m, name);
                    CHECK(types.has_value() == body.has_value());
                    if (types) CHECK(types->size() == body->params.size());
                }
            }
        }
    }
}

TEST_CASE("lookup agrees with a brute-force chain walk") {
    Rng rng(97);
    for (int trial = 0; trial < 50; ++trial) {
        ClassTable ct = testing::random_acyclic_table(rng, 5);
        // sprinkle methods named m0/m1 with random arities over the classes
        for (auto& [name, decl] : ct.entries) {
            if (rng.below(2) == 0) continue;
            MethodDecl m;
            m.name = "m" + std::to_string(rng.below(2));
            int arity = static_cast<int>(rng.below(3));
            GenericRule body;
            body.lhs.push_back(this_atom());
            body.rhs.push_back(this_atom());
            for (int i = 0; i < arity; ++i) {
                m.params.emplace_back("c0", "p" + std::to_string(i));
                body.rhs.push_back(param_atom("p" + std::to_string(i)));
            }
            m.body.push_back(body);
            decl.methods.push_back(m);
        }
        for (const auto& [name, decl] : ct.entries) {
            for (const char* m : {"m0", "m1"}) {
                // brute force: scan the chain upward, first declaration wins
                std::optional<MethodBody> expected;
                ClassName cur = name;
                while (cur != kObject && !expected) {
                    const ClassDecl& d = ct.entries.at(cur);
                    for (const auto& method : d.methods) {
                        if (method.name == m) {
                            MethodBody b;
                            for (const auto& [_, v] : method.params) b.params.push_back(v);
                            b.rules = method.body;
                            expected = b;
                            break;
                        }
                    }
                    cur = d.superclass;
                }
                auto got = mbody(ct, m, name);
                CHECK(got == expected);
                auto types = mtype(ct, m, name);
                CHECK(types.has_value() == expected.has_value());
            }
        }
    }
}

TEST_CASE("invocation typing (t-invmeth)") {
    const ClassTable& ct = testing::enzymes_table();
    SUBCASE("the worked invocation checks") {
        CHECK(typecheck_invocation(ct, kPhoIsoGamma, {"PhoIso", "act", {"glu", "fru"}}).empty());
        CHECK(typecheck_invocation(testing::kinetics_table(), kKineticsGamma,
                                   {"E", "ass", {"S", "ES"}})
                  .empty());
    }
    SUBCASE("an enzyme cannot be a substrate") {
        Diagnostics diags =
            typecheck_invocation(ct, kPhoIsoGamma, {"PhoIso", "act", {"PhoIso", "fru"}});
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "argument-type-mismatch");
        CHECK(diags[0].message.find("argument 1") != std::string::npos);
    }
    SUBCASE("arity mismatch") {
        Diagnostics diags = typecheck_invocation(ct, kPhoIsoGamma, {"PhoIso", "act", {"glu"}});
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "arity-mismatch");
    }
    SUBCASE("untyped receiver") {
        CHECK(has_code(typecheck_invocation(ct, kPhoIsoGamma, {"lac", "act", {"glu", "fru"}}),
                       "untyped-receiver"));
    }
    SUBCASE("untyped argument") {
        CHECK(has_code(typecheck_invocation(ct, kPhoIsoGamma, {"PhoIso", "act", {"glu", "lac"}}),
                       "untyped-argument"));
    }
    SUBCASE("method not found") {
        CHECK(has_code(typecheck_invocation(ct, kPhoIsoGamma, {"glu", "act", {"glu", "fru"}}),
                       "method-not-found"));
    }
    SUBCASE("subtype arguments are accepted") {
        // GlHyd.act takes sugars; sugars are molecules, so Hyd.act accepts them too
        TypeEnv g = testing::gamma({{"lactase", "Hyd"}, {"lactose", "Sug"}, {"a", "Sug"},
                                    {"b", "Sug"}, {"H2O", "Mol"}});
        CHECK(typecheck_invocation(ct, g, {"lactase", "act", {"lactose", "a", "b"}}).empty());
    }
    SUBCASE("all argument problems are reported, not just the first") {
        Diagnostics diags =
            typecheck_invocation(ct, kPhoIsoGamma, {"PhoIso", "act", {"PhoIso", "lac"}});
        CHECK(diags.size() == 2);
    }
}

TEST_CASE("method and class typing (t-clmeth, t-class)") {
    SUBCASE("the full enzyme table is ok under the generic judgment") {
        CHECK(typecheck_class_table(testing::enzymes_table(), kPhoIsoGamma,
                                    wf_for(Formalism::Generic))
                  .empty());
    }
    SUBCASE("a body rule naming an unbound variable fails") {
        ClassTable ct = testing::parse_table(R"(
class A extends Object {
  m(A S) {
    S -> Q
  }
}
)",
                                             Formalism::Generic);
        // Q resolves to a value; with Q untyped this is the untyped-value case
        Diagnostics diags =
            typecheck_class_table(ct, TypeEnv{}, wf_for(Formalism::Generic));
        CHECK(has_code(diags, "untyped-value"));
        // a genuinely free variable needs a hand-built rule
        ClassDecl& decl = ct.entries.at("A");
        GenericRule bad;
        bad.lhs.push_back(param_atom("S"));
        bad.rhs.push_back(param_atom("Q"));
        decl.methods[0].body = {bad};
        diags = typecheck_class_table(ct, TypeEnv{}, wf_for(Formalism::Generic));
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "free-variable");
    }
    SUBCASE("the porin class is ok under the CLS judgment") {
        CHECK(typecheck_class_table(testing::porins_cls_table(), TypeEnv{},
                                    wf_for(Formalism::Cls))
                  .empty());
    }
    SUBCASE("the P-system porin class is ok under its judgment") {
        CHECK(typecheck_class_table(testing::porins_psys_table(), TypeEnv{},
                                    wf_for(Formalism::Psys))
                  .empty());
    }
    SUBCASE("a backend mismatch is reported") {
        Diagnostics diags = typecheck_class_table(testing::porins_cls_table(), TypeEnv{},
                                                  wf_for(Formalism::Generic));
        CHECK(has_code(diags, "backend-mismatch"));
    }
}

TEST_CASE("expansion (e-meth)") {
    SUBCASE("the phosphoglucose rule") {
        auto rules =
            expand_invocation(testing::enzymes_table(), kPhoIsoGamma, {"PhoIso", "act", {"glu", "fru"}});
        REQUIRE(rules.size() == 1);
        CHECK(render_rule(rules[0]) == "glu + PhoIso -> PhoIso + fru");
    }
    SUBCASE("swapping the arguments swaps the rule") {
        auto rules =
            expand_invocation(testing::enzymes_table(), kPhoIsoGamma, {"PhoIso", "act", {"fru", "glu"}});
        REQUIRE(rules.size() == 1);
        CHECK(render_rule(rules[0]) == "fru + PhoIso -> PhoIso + glu");
    }
    SUBCASE("CLS expansion keeps rewrite variables") {
        TypeEnv g = testing::gamma({{"AW", "Por"}, {"w", "Mol"}});
        auto rules = expand_invocation(testing::porins_cls_table(), g, {"AW", "in", {"w"}});
        REQUIRE(rules.size() == 1);
        CHECK(render_rule(rules[0]) == "w | loop(AW.~x)[$X] -> loop(AW.~x)[w | $X]");
    }
    SUBCASE("P-system expansion substitutes the in-target label") {
        TypeEnv g = testing::gamma({{"A", "Por"}, {"w", "Mol"}, {"1", "Lab"}});
        auto rules = expand_invocation(testing::porins_psys_table(), g, {"A", "in", {"w", "1"}});
        REQUIRE(rules.size() == 1);
        CHECK(render_rule(rules[0]) == "w -> w(in_1)");
    }
    SUBCASE("failures are fail-fast") {
        CHECK_THROWS_AS(
            (void)expand_invocation(testing::enzymes_table(), kPhoIsoGamma, {"lac", "act", {}}),
            ExpandError);
        CHECK_THROWS_AS((void)expand_invocation(testing::enzymes_table(), kPhoIsoGamma,
                                                {"PhoIso", "nope", {}}),
                        ExpandError);
        CHECK_THROWS_AS((void)expand_invocation(testing::enzymes_table(), kPhoIsoGamma,
                                                {"PhoIso", "act", {"glu"}}),
                        ExpandError);
    }
    SUBCASE("a checked invocation expands totally and ground") {
        Invocation inv{"PhoIso", "act", {"glu", "fru"}};
        REQUIRE(typecheck_invocation(testing::enzymes_table(), kPhoIsoGamma, inv).empty());
        for (const auto& r : expand_invocation(testing::enzymes_table(), kPhoIsoGamma, inv))
            CHECK(is_ground(r));
    }
}

TEST_CASE("expand_model") {
    SUBCASE("a model with no invocations is unchanged") {
        Model m;
        m.formalism = Formalism::Generic;
        GenericModel g;
        g.state.add("glu");
        g.items.push_back(RuleItem{
            testing::rule("glu + PhoIso -> PhoIso + fru", Formalism::Generic), {}});
        m.body = g;
        Model out = expand_model(testing::enzymes_table(), kPhoIsoGamma, m);
        CHECK(out == m);
    }
    SUBCASE("expansion is deterministic") {
        Model m;
        m.formalism = Formalism::Generic;
        GenericModel g;
        g.state.add("glu");
        g.items.push_back(RuleItem{Invocation{"PhoIso", "act", {"glu", "fru"}}, {}});
        g.items.push_back(RuleItem{Invocation{"PhoIso", "act", {"fru", "glu"}}, {}});
        m.body = g;
        Model a = expand_model(testing::enzymes_table(), kPhoIsoGamma, m);
        Model b = expand_model(testing::enzymes_table(), kPhoIsoGamma, m);
        CHECK(a == b);
        REQUIRE(a.generic().items.size() == 2);
    }
    SUBCASE("duplicate invocations expand to duplicate rules") {
        Model m;
        m.formalism = Formalism::Generic;
        GenericModel g;
        g.items.push_back(RuleItem{Invocation{"PhoIso", "act", {"glu", "fru"}}, {}});
        g.items.push_back(RuleItem{Invocation{"PhoIso", "act", {"glu", "fru"}}, {}});
        m.body = g;
        Model out = expand_model(testing::enzymes_table(), kPhoIsoGamma, m);
        REQUIRE(out.generic().items.size() == 2);
        CHECK(out.generic().items[0] == out.generic().items[1]);
    }
    SUBCASE("the first typing problem aborts expansion") {
        Model m;
        m.formalism = Formalism::Generic;
        GenericModel g;
        g.items.push_back(RuleItem{Invocation{"PhoIso", "act", {"PhoIso", "fru"}}, {}});
        m.body = g;
        CHECK_THROWS_AS((void)expand_model(testing::enzymes_table(), kPhoIsoGamma, m),
                        ExpandError);
    }
    SUBCASE("membrane priorities are remapped to expanded slots") {
        // two invocations of a two-rule method: slot pair (0,1) must fan out
        ClassTable ct = testing::parse_table(R"(
class Lab extends Object {}
class Mol extends Object {}
class Two extends Object {
  m(Mol S) {
    S -> S
    S -> S S
  }
}
)",
                                             Formalism::Psys);
        TypeEnv g = testing::gamma({{"A", "Two"}, {"a", "Mol"}});
        Model m;
        m.formalism = Formalism::Psys;
        PsysModel p;
        p.skin.label = "1";
        p.skin.items.push_back(RuleItem{Invocation{"A", "m", {"a"}}, {}});
        p.skin.items.push_back(RuleItem{Invocation{"A", "m", {"a"}}, {}});
        p.skin.priorities.emplace_back(0, 1);
        m.body = p;
        Model out = expand_model(ct, g, m);
        const Membrane& skin = out.psys().skin;
        REQUIRE(skin.items.size() == 4);
        // every rule of slot 0 outranks every rule of slot 1
        std::vector<std::pair<int, int>> expected{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
        CHECK(skin.priorities == expected);
    }
}

TEST_CASE("substitution agrees with the independent walker on method bodies") {
    Rng rng(1234);
    const std::vector<std::string> values{"glu", "fru", "w", "u", "H2O"};
    for (int trial = 0; trial < 200; ++trial) {
        int nparams = 1 + static_cast<int>(rng.below(3));
        std::set<std::string> params;
        Substitution subst;
        subst.this_target = values[rng.below(values.size())];
        for (int i = 0; i < nparams; ++i) {
            std::string p = "p" + std::to_string(i);
            params.insert(p);
            subst.params[p] = values[rng.below(values.size())];
        }
        auto pick_param = [&]() { return "p" + std::to_string(rng.below(nparams)); };

        std::vector<RuleAst> body;
        int nrules = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < nrules; ++i) {
            switch (rng.below(3)) {
                case 0: {
                    std::string text = pick_param() + " + this -> this + " + pick_param();
                    body.push_back(testing::rule(text, Formalism::Generic, params, true));
                    break;
                }
                case 1: {
                    std::string text = pick_param() + " | loop(this.~x)[$X] -> loop(this.~x)[" +
                                       pick_param() + " | $X]";
                    body.push_back(testing::rule(text, Formalism::Cls, params, true));
                    break;
                }
                default: {
                    std::string text = pick_param() + " -> " + pick_param() + "(in_" +
                                       pick_param() + ") this(out)";
                    body.push_back(testing::rule(text, Formalism::Psys, params, true));
                    break;
                }
            }
        }
        for (const auto& r : body) CHECK(substitute(r, subst) == oracle::substitute(r, subst));
    }
}
