#include "biorw/diagnostics.hpp"

#include <sstream>

namespace biorw {

Diagnostic make_error(std::string code, std::string message, Span span) {
    return {Severity::Error, std::move(code), std::move(message), span};
}

Diagnostic make_warning(std::string code, std::string message, Span span) {
    return {Severity::Warning, std::move(code), std::move(message), span};
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    if (d.span.known()) os << d.span.line << ":" << d.span.col << ": ";
    switch (d.severity) {
        case Severity::Error: os << "error"; break;
        case Severity::Warning: os << "warning"; break;
        case Severity::Note: os << "note"; break;
    }
    os << "[" << d.code << "]: " << d.message;
    return os.str();
}

void append(Diagnostics& into, Diagnostics more) {
    for (auto& d : more) into.push_back(std::move(d));
}

bool has_errors(const Diagnostics& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

bool has_code(const Diagnostics& ds, const std::string& code) {
    for (const auto& d : ds)
        if (d.code == code) return true;
    return false;
}

} // namespace biorw
