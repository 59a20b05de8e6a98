#pragma once

#include <map>
#include <string>

namespace biorw {

/// Multiset of symbols. No zero-count entries are ever stored.
struct Multiset {
    std::map<std::string, long long> counts;

    void add(const std::string& name, long long n = 1);
    long long count(const std::string& name) const;
    bool empty() const { return counts.empty(); }
    long long total() const;

    bool contains(const Multiset& sub) const;
    void subtract(const Multiset& sub); // requires contains(sub)
    void merge(const Multiset& other);

    bool operator==(const Multiset&) const = default;
};

/// "{a, b*2}" — entries sorted by name, count suffix only when > 1.
std::string render_multiset(const Multiset& ms);

} // namespace biorw
