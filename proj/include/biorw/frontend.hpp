#pragma once

#include "biorw/calculus.hpp"
#include "biorw/classes.hpp"
#include "biorw/diagnostics.hpp"
#include "biorw/model.hpp"
#include "biorw/parser.hpp"
#include "biorw/wf.hpp"

#include <string>
#include <vector>

namespace biorw {

/// A loaded triple (CT, Gamma, P) plus everything needed to report on it.
struct LoadedTriple {
    ClassTable table;
    TypeEnv gamma;
    Model model;
    std::map<ValueName, Span> gamma_spans;
    Diagnostics diags; // parse and I/O problems; I/O uses code "io"

    bool ok() const { return !has_errors(diags); }
};

/// Load one .bmodel plus any number of .bclass paths; `use` imports in
/// the model resolve relative to the model file's directory. Class
/// files merge into one table; a class declared twice is
/// "duplicate-class". Exactly one model file is required ("usage").
LoadedTriple load_triple(const std::vector<std::string>& paths);

/// parse-free variant for already-parsed pieces (tests, tools).
LoadedTriple assemble_triple(ClassTable table, ParsedModel parsed);

/// The whole static pipeline: class-table sanity, Gamma sanity against
/// the model's values, class typing under the backend judgment, and
/// t-invmeth for every invocation slot. Empty result = the triple is
/// well typed and safe to expand. gamma_spans, when given, pins Gamma
/// diagnostics to their values-block entries.
Diagnostics check_all(const ClassTable& ct, const TypeEnv& gamma, const Model& model,
                      const WfOptions& opts = {},
                      const std::map<ValueName, Span>* gamma_spans = nullptr);

} // namespace biorw
