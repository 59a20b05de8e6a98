#include "biorw/emit.hpp"

#include "biorw/rule_text.hpp"

#include <sstream>

namespace biorw {

namespace {

void emit_multiset_entries(std::ostringstream& os, const Multiset& ms) {
    bool first = true;
    for (const auto& [name, count] : ms.counts) {
        if (!first) os << ", ";
        first = false;
        os << name;
        if (count > 1) os << "*" << count;
    }
}

void emit_items(std::ostringstream& os, const std::vector<RuleItem>& items,
                const std::string& indent) {
    for (const auto& item : items) {
        if (item.is_invocation())
            os << indent << "invoke " << render_invocation(item.invocation()) << "\n";
        else
            os << indent << "rule " << render_rule(item.rule()) << "\n";
    }
}

void emit_membrane(std::ostringstream& os, const Membrane& m, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
    os << indent << "membrane " << m.label << " {\n";
    os << inner << "contents {";
    if (!m.contents.empty()) {
        os << " ";
        emit_multiset_entries(os, m.contents);
        os << " ";
    }
    os << "}\n";
    emit_items(os, m.items, inner);
    for (const auto& [hi, lo] : m.priorities)
        os << inner << "priority " << hi + 1 << " > " << lo + 1 << "\n";
    for (const auto& child : m.children) emit_membrane(os, child, depth + 1);
    os << indent << "}\n";
}

} // namespace

std::string emit_model(const TypeEnv& gamma, const Model& model) {
    std::ostringstream os;
    os << "formalism " << to_string(model.formalism) << "\n";

    os << "values {";
    bool first = true;
    for (const auto& [value, cls] : gamma.entries) {
        os << (first ? " " : "; ") << value << ": " << cls;
        first = false;
    }
    os << (first ? "}" : " }") << "\n";

    switch (model.formalism) {
        case Formalism::Generic: {
            const auto& g = model.generic();
            os << "state {";
            if (!g.state.empty()) {
                os << " ";
                emit_multiset_entries(os, g.state);
                os << " ";
            }
            os << "}\n";
            emit_items(os, g.items, "");
            break;
        }
        case Formalism::Cls: {
            const auto& c = model.cls();
            os << "term { " << render_term(c.term) << " }\n";
            emit_items(os, c.items, "");
            break;
        }
        case Formalism::Psys: {
            const auto& p = model.psys();
            emit_membrane(os, p.skin, 0);
            if (!p.output_label.empty()) os << "output " << p.output_label << "\n";
            break;
        }
    }
    return os.str();
}

} // namespace biorw
