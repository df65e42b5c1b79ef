#pragma once

#include <string>
#include <vector>

#include "confsel/graph.hpp"

namespace confsel {

// Orders sets by size, then lexicographically.
struct CanonicalSetOrder {
    bool operator()(const VertexSet& a, const VertexSet& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Duplicate-free collection of vertex sets in canonical order.
class VertexSetFamily {
public:
    VertexSetFamily() = default;
    VertexSetFamily(std::initializer_list<VertexSet> sets);

    // Returns false if the set was already present.
    bool insert(const VertexSet& s);
    bool contains(const VertexSet& s) const;
    bool contains_empty() const { return contains(VertexSet{}); }
    bool empty() const { return sets_.empty(); }
    std::size_t size() const { return sets_.size(); }

    const std::vector<VertexSet>& sets() const { return sets_; }
    auto begin() const { return sets_.begin(); }
    auto end() const { return sets_.end(); }

    // Members with no proper subset in the family.
    VertexSetFamily minimal_members() const;

    friend auto operator<=>(const VertexSetFamily&, const VertexSetFamily&) = default;
    friend bool operator==(const VertexSetFamily&, const VertexSetFamily&) = default;

private:
    std::vector<VertexSet> sets_;
};

// "{{B,C},{B,D}}"
std::string to_string(const VertexSetFamily& f);

}  // namespace confsel
