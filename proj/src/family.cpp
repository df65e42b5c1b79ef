#include "confsel/family.hpp"

#include <algorithm>

namespace confsel {

VertexSetFamily::VertexSetFamily(std::initializer_list<VertexSet> sets) {
    for (const auto& s : sets) insert(s);
}

bool VertexSetFamily::insert(const VertexSet& s) {
    auto it = std::lower_bound(sets_.begin(), sets_.end(), s, CanonicalSetOrder{});
    if (it != sets_.end() && *it == s) return false;
    sets_.insert(it, s);
    return true;
}

bool VertexSetFamily::contains(const VertexSet& s) const {
    return std::binary_search(sets_.begin(), sets_.end(), s, CanonicalSetOrder{});
}

VertexSetFamily VertexSetFamily::minimal_members() const {
    VertexSetFamily out;
    for (const auto& s : sets_) {
        bool dominated = std::any_of(out.begin(), out.end(),
                                     [&](const VertexSet& m) { return is_subset(m, s); });
        if (!dominated) out.insert(s);
    }
    return out;
}

std::string to_string(const VertexSetFamily& f) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : f) {
        if (!first) out += ",";
        out += to_string(s);
        first = false;
    }
    return out + "}";
}

}  // namespace confsel
