#include "biorw/classes.hpp"

#include <sstream>

namespace biorw {

const ClassDecl* ClassTable::find(const ClassName& c) const {
    auto it = entries.find(c);
    return it == entries.end() ? nullptr : &it->second;
}

const ClassName* TypeEnv::find(const ValueName& v) const {
    auto it = entries.find(v);
    return it == entries.end() ? nullptr : &it->second;
}

std::string render_invocation(const Invocation& inv) {
    std::ostringstream os;
    os << inv.receiver << "." << inv.method << "(";
    for (std::size_t i = 0; i < inv.args.size(); ++i) {
        if (i) os << ", ";
        os << inv.args[i];
    }
    os << ")";
    return os.str();
}

} // namespace biorw
