#include "biorw/frontend.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace biorw {

namespace {

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

void merge_class_table(ClassTable& into, ClassTable from, Diagnostics& diags) {
    for (auto& [name, decl] : from.entries) {
        if (into.entries.count(name)) {
            diags.push_back(make_error("duplicate-class",
                                       "class '" + name + "' declared in more than one file",
                                       decl.span));
            continue;
        }
        into.entries.emplace(name, std::move(decl));
    }
}

} // namespace

LoadedTriple assemble_triple(ClassTable table, ParsedModel parsed) {
    LoadedTriple out;
    out.table = std::move(table);
    out.gamma = std::move(parsed.gamma);
    out.model = std::move(parsed.model);
    out.gamma_spans = std::move(parsed.gamma_spans);
    out.diags = std::move(parsed.diags);
    return out;
}

LoadedTriple load_triple(const std::vector<std::string>& paths) {
    LoadedTriple out;

    std::vector<std::string> class_paths;
    std::string model_path;
    for (const auto& path : paths) {
        if (path.size() >= 7 && path.substr(path.size() - 7) == ".bmodel") {
            if (!model_path.empty()) {
                out.diags.push_back(
                    make_error("usage", "more than one model file given: " + path));
                return out;
            }
            model_path = path;
        } else {
            class_paths.push_back(path);
        }
    }
    if (model_path.empty()) {
        out.diags.push_back(make_error("usage", "exactly one .bmodel file is required"));
        return out;
    }

    std::string model_text;
    if (!read_file(model_path, model_text)) {
        out.diags.push_back(make_error("io", "cannot read " + model_path));
        return out;
    }
    ParsedModel parsed = parse_model_file(model_text);
    append(out.diags, parsed.diags);

    // imports resolve relative to the model file
    std::filesystem::path base = std::filesystem::path(model_path).parent_path();
    for (const auto& import : parsed.imports)
        class_paths.push_back((base / import).string());

    for (const auto& path : class_paths) {
        std::string text;
        if (!read_file(path, text)) {
            out.diags.push_back(make_error("io", "cannot read " + path));
            continue;
        }
        ParsedClassFile parsed_classes = parse_class_file(text, parsed.model.formalism);
        append(out.diags, parsed_classes.diags);
        merge_class_table(out.table, std::move(parsed_classes.table), out.diags);
    }

    out.gamma = std::move(parsed.gamma);
    out.gamma_spans = std::move(parsed.gamma_spans);
    out.model = std::move(parsed.model);
    return out;
}

namespace {

void check_items(const ClassTable& ct, const TypeEnv& gamma, const std::vector<RuleItem>& items,
                 Formalism formalism, Diagnostics& diags) {
    for (const auto& item : items) {
        if (item.is_invocation()) {
            Diagnostics item_diags = typecheck_invocation(ct, gamma, item.invocation());
            for (auto& d : item_diags) {
                if (!d.span.known()) d.span = item.span;
                diags.push_back(std::move(d));
            }
        } else if (formalism_of(item.rule()) != formalism) {
            diags.push_back(make_error("backend-mismatch",
                                       "rule belongs to the " +
                                           to_string(formalism_of(item.rule())) + " backend",
                                       item.span));
        }
    }
}

void check_membrane(const ClassTable& ct, const TypeEnv& gamma, const Membrane& m,
                    Diagnostics& diags) {
    check_items(ct, gamma, m.items, Formalism::Psys, diags);
    for (const auto& child : m.children) check_membrane(ct, gamma, child, diags);
}

} // namespace

Diagnostics check_all(const ClassTable& ct, const TypeEnv& gamma, const Model& model,
                      const WfOptions& opts, const std::map<ValueName, Span>* gamma_spans) {
    Diagnostics diags = validate_class_table(ct);
    Diagnostics env_diags = validate_type_env(gamma, ct, values_of_model(model));
    if (gamma_spans) {
        for (auto& d : env_diags) {
            if (d.span.known()) continue;
            // the message quotes the value name; look it up for a span
            for (const auto& [value, span] : *gamma_spans) {
                if (d.message.find("'" + value + "'") != std::string::npos &&
                    d.code == "unknown-class") {
                    d.span = span;
                    break;
                }
            }
        }
    }
    append(diags, std::move(env_diags));
    append(diags, typecheck_class_table(ct, gamma, wf_for(model.formalism, opts)));

    switch (model.formalism) {
        case Formalism::Generic:
            check_items(ct, gamma, model.generic().items, model.formalism, diags);
            break;
        case Formalism::Cls:
            check_items(ct, gamma, model.cls().items, model.formalism, diags);
            break;
        case Formalism::Psys:
            check_membrane(ct, gamma, model.psys().skin, diags);
            break;
    }
    return diags;
}

} // namespace biorw
