#pragma once

#include <string>
#include <vector>

namespace biorw {

/// Source position, 1-based. line == 0 means "no span available"
/// (e.g. for programmatically constructed ASTs).
struct Span {
    int line = 0;
    int col = 0;

    bool known() const { return line > 0; }
    bool operator==(const Span&) const = default;
};

enum class Severity { Error, Warning, Note };

/// One problem found by validation, typing, parsing or engine setup.
/// Codes are stable strings (e.g. "cycle", "argument-type-mismatch");
/// tests and users match on them.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    Span span{};
};

using Diagnostics = std::vector<Diagnostic>;

Diagnostic make_error(std::string code, std::string message, Span span = {});
Diagnostic make_warning(std::string code, std::string message, Span span = {});

/// "<line>:<col>: error[code]: message" (position omitted when unknown).
std::string format_diagnostic(const Diagnostic& d);

void append(Diagnostics& into, Diagnostics more);
bool has_errors(const Diagnostics& ds);
bool has_code(const Diagnostics& ds, const std::string& code);

} // namespace biorw
