#include "biorw/fixtures.hpp"

#include "biorw/calculus.hpp"
#include "biorw/emit.hpp"
#include "biorw/engine.hpp"
#include "biorw/frontend.hpp"
#include "doctest.h"
#include "helpers.hpp"

#include <fstream>
#include <sstream>

using namespace biorw;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("every fixture parses, checks clean and matches its golden expansion") {
    std::string root = testing::fixtures_dir();
    for (const auto& fixture : fixtures()) {
        CAPTURE(fixture.name);
        LoadedTriple triple = load_triple({root + "/" + fixture.modelfile});
        REQUIRE_MESSAGE(triple.ok(), fixture.name);

        Diagnostics diags = check_all(triple.table, triple.gamma, triple.model);
        std::string first_diag = diags.empty() ? std::string{} : format_diagnostic(diags[0]);
        REQUIRE_MESSAGE(diags.empty(), fixture.name << ": " << first_diag);

        Model expanded = expand_model(triple.table, triple.gamma, triple.model);
        std::string text = emit_model(triple.gamma, expanded);
        CHECK_MESSAGE(text == slurp(root + "/" + fixture.golden), fixture.name);

        // expansion output is stable and reparses to the same model
        CHECK(emit_model(triple.gamma, expand_model(triple.table, triple.gamma, triple.model)) ==
              text);
        ParsedModel back = parse_model_file(text);
        REQUIRE(back.ok());
        CHECK(back.model == expanded);
        CHECK(back.gamma == triple.gamma);
    }
}

TEST_CASE("the fixture catalog is discoverable") {
    CHECK(fixtures().size() == 8);
    CHECK(find_fixture("aquaporin-cls") != nullptr);
    CHECK(find_fixture("nope") == nullptr);
}

TEST_CASE("the label-inconsistent P system expands but cannot be simulated") {
    std::string root = testing::fixtures_dir();
    LoadedTriple triple = load_triple({root + "/models/aquaporin-psys.bmodel"});
    REQUIRE(triple.ok());
    REQUIRE(check_all(triple.table, triple.gamma, triple.model).empty());
    Model expanded = expand_model(triple.table, triple.gamma, triple.model);
    Diagnostics diags = validate_for_simulation(expanded);
    CHECK(has_code(diags, "routing")); // in_1 targets the skin from inside itself
}

TEST_CASE("the label-corrected P system simulates") {
    std::string root = testing::fixtures_dir();
    LoadedTriple triple = load_triple({root + "/models/aquaporin-psys-sim.bmodel"});
    REQUIRE(triple.ok());
    REQUIRE(check_all(triple.table, triple.gamma, triple.model).empty());
    Model expanded = expand_model(triple.table, triple.gamma, triple.model);
    SimOutcome outcome = run_model(expanded, 5, 1);
    REQUIRE(outcome.diags.empty());
    REQUIRE(outcome.result.steps.size() == 2);
    // one maximal step routes every symbol out of the skin
    CHECK(outcome.result.steps[1].state.find("[1{} ") != std::string::npos);
}
