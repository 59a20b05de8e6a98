#include "biorw/multiset.hpp"

#include <cassert>
#include <sstream>

namespace biorw {

void Multiset::add(const std::string& name, long long n) {
    if (n == 0) return;
    long long& c = counts[name];
    c += n;
    if (c <= 0) counts.erase(name);
}

long long Multiset::count(const std::string& name) const {
    auto it = counts.find(name);
    return it == counts.end() ? 0 : it->second;
}

long long Multiset::total() const {
    long long t = 0;
    for (const auto& [_, c] : counts) t += c;
    return t;
}

bool Multiset::contains(const Multiset& sub) const {
    for (const auto& [name, c] : sub.counts)
        if (count(name) < c) return false;
    return true;
}

void Multiset::subtract(const Multiset& sub) {
    assert(contains(sub));
    for (const auto& [name, c] : sub.counts) add(name, -c);
}

void Multiset::merge(const Multiset& other) {
    for (const auto& [name, c] : other.counts) add(name, c);
}

std::string render_multiset(const Multiset& ms) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [name, c] : ms.counts) {
        if (!first) os << ", ";
        first = false;
        os << name;
        if (c > 1) os << "*" << c;
    }
    os << "}";
    return os.str();
}

} // namespace biorw
