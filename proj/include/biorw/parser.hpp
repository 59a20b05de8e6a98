#pragma once

#include "biorw/classes.hpp"
#include "biorw/diagnostics.hpp"
#include "biorw/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace biorw {

struct ParsedClassFile {
    ClassTable table;
    Diagnostics diags;

    bool ok() const { return !has_errors(diags); }
};

/// Parse a .bclass file. Method bodies are rule lines in the syntax of
/// the formalism the class library is being used with.
ParsedClassFile parse_class_file(const std::string& text, Formalism backend);

struct ParsedModel {
    TypeEnv gamma;
    Model model;
    std::vector<std::string> imports;       // `use "..."` paths, resolution is the loader's job
    std::map<ValueName, Span> gamma_spans;
    Diagnostics diags;

    bool ok() const { return !has_errors(diags); }
};

/// Parse a .bmodel file: use* / formalism / values+ / state / slots.
/// Multiple values blocks union; conflicting entries are rejected
/// ("gamma-conflict").
ParsedModel parse_model_file(const std::string& text);

} // namespace biorw
