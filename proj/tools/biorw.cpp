#include "biorw/calculus.hpp"
#include "biorw/emit.hpp"
#include "biorw/engine.hpp"
#include "biorw/fixtures.hpp"
#include "biorw/frontend.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitIoOrUsage = 2;

int exit_code_for(const biorw::Diagnostics& diags) {
    bool failed = false;
    for (const auto& d : diags) {
        if (d.severity != biorw::Severity::Error) continue;
        if (d.code == "io" || d.code == "usage") return kExitIoOrUsage;
        failed = true;
    }
    return failed ? kExitCheckFailed : kExitOk;
}

void print_diags(const biorw::Diagnostics& diags) {
    for (const auto& d : diags) std::cerr << biorw::format_diagnostic(d) << "\n";
}

struct Options {
    std::vector<std::string> paths;
    std::string out_path;
    std::uint64_t seed = 0;
    std::size_t max_steps = 100;
    bool permissive_psys_targets = false;
    bool cls_loop_rotation = false;
    bool structured_trace = false;
    std::string format = "text";
    std::string fixture_name;

    bool structured() const { return structured_trace || format == "structured"; }

    biorw::WfOptions wf() const { return {.strict_psys_targets = !permissive_psys_targets}; }
    biorw::EngineOptions engine() const { return {.cls = {.loop_rotation = cls_loop_rotation}}; }
};

/// Load + check; returns the exit code to use, kExitOk when clean.
int load_and_check(const Options& opt, biorw::LoadedTriple& triple) {
    triple = biorw::load_triple(opt.paths);
    if (biorw::has_errors(triple.diags)) {
        print_diags(triple.diags);
        return exit_code_for(triple.diags);
    }
    biorw::Diagnostics diags = biorw::check_all(triple.table, triple.gamma, triple.model,
                                                opt.wf(), &triple.gamma_spans);
    if (biorw::has_errors(diags)) {
        print_diags(diags);
        return exit_code_for(diags);
    }
    return kExitOk;
}

int cmd_check(const Options& opt) {
    biorw::LoadedTriple triple;
    return load_and_check(opt, triple);
}

int cmd_expand(const Options& opt) {
    biorw::LoadedTriple triple;
    if (int code = load_and_check(opt, triple); code != kExitOk) return code;

    biorw::Model expanded;
    try {
        expanded = biorw::expand_model(triple.table, triple.gamma, triple.model);
    } catch (const biorw::ExpandError& e) {
        print_diags({e.diagnostic});
        return kExitCheckFailed;
    }
    std::string text = biorw::emit_model(triple.gamma, expanded);
    if (opt.out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error[io]: cannot write " << opt.out_path << "\n";
        return kExitIoOrUsage;
    }
    out << text;
    return kExitOk;
}

int cmd_simulate(const Options& opt) {
    biorw::LoadedTriple triple;
    if (int code = load_and_check(opt, triple); code != kExitOk) return code;

    biorw::Model expanded;
    try {
        expanded = biorw::expand_model(triple.table, triple.gamma, triple.model);
    } catch (const biorw::ExpandError& e) {
        print_diags({e.diagnostic});
        return kExitCheckFailed;
    }

    biorw::SimOutcome outcome =
        biorw::run_model(expanded, opt.seed, opt.max_steps, opt.engine());
    if (biorw::has_errors(outcome.diags)) {
        print_diags(outcome.diags);
        return kExitCheckFailed;
    }

    const biorw::RunResult& result = outcome.result;
    if (opt.structured()) {
        nlohmann::json doc;
        doc["formalism"] = biorw::to_string(expanded.formalism);
        doc["seed"] = opt.seed;
        doc["maxSteps"] = opt.max_steps;
        doc["halted"] = result.halted;
        doc["steps"] = nlohmann::json::array();
        for (const auto& step : result.steps) {
            nlohmann::json s;
            s["step"] = step.index;
            if (step.rule == "-")
                s["rule"] = nullptr;
            else
                s["rule"] = step.rule;
            s["state"] = step.state;
            doc["steps"].push_back(std::move(s));
        }
        doc["finalState"] = result.final_state;
        if (!result.output_report.empty()) doc["output"] = result.output_report;
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& step : result.steps)
            std::cout << "step=" << step.index << " rule=" << step.rule
                      << " state=" << step.state << "\n";
        if (!result.output_report.empty()) std::cout << "output=" << result.output_report << "\n";
    }
    return kExitOk;
}

int cmd_fixtures(const Options& opt) {
    namespace fs = std::filesystem;
    fs::path root = biorw::fixtures_root();
    if (!opt.fixture_name.empty()) {
        const biorw::Fixture* f = biorw::find_fixture(opt.fixture_name);
        if (!f) {
            std::cerr << "error[usage]: unknown fixture '" << opt.fixture_name << "'\n";
            return kExitIoOrUsage;
        }
        std::cout << (root / f->classfile).string() << "\n"
                  << (root / f->modelfile).string() << "\n"
                  << (root / f->golden).string() << "\n";
        return kExitOk;
    }
    for (const auto& f : biorw::fixtures())
        std::cout << f.name << "\t" << (root / f.classfile).string() << "\t"
                  << (root / f.modelfile).string() << "\n";
    return kExitOk;
}

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_flag("--permissive-psys-targets", opt.permissive_psys_targets,
                  "allow mixing in_j with here/out targets in one rule");
    cmd->add_flag("--cls-loop-rotation", opt.cls_loop_rotation,
                  "treat looping sequences as equal under rotation");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"biorw - classes and method invocations for biological term-rewriting models"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* check = app.add_subcommand("check", "type-check a model triple");
    check->add_option("paths", opt.paths, ".bmodel and .bclass files")->required();
    add_common_flags(check, opt);

    CLI::App* expand = app.add_subcommand("expand", "expand invocations into concrete rules");
    expand->add_option("paths", opt.paths, ".bmodel and .bclass files")->required();
    expand->add_option("--out", opt.out_path, "write the expanded model here (default: stdout)");
    add_common_flags(expand, opt);

    CLI::App* simulate = app.add_subcommand("simulate", "expand, then run the backend engine");
    simulate->add_option("paths", opt.paths, ".bmodel and .bclass files")->required();
    simulate->add_option("--seed", opt.seed, "random seed (default 0)");
    simulate->add_option("--max-steps", opt.max_steps, "step limit (default 100)");
    simulate->add_flag("--structured-trace", opt.structured_trace,
                       "emit the trace as a JSON document");
    simulate->add_option("--format", opt.format, "trace format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    add_common_flags(simulate, opt);

    CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "list the shipped example models");
    fixtures_cmd->add_option("name", opt.fixture_name, "print the paths of one fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitIoOrUsage;
    }

    if (check->parsed()) return cmd_check(opt);
    if (expand->parsed()) return cmd_expand(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (fixtures_cmd->parsed()) return cmd_fixtures(opt);
    return kExitIoOrUsage;
}
