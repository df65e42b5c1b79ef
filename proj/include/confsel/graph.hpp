#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace confsel {

// Vertex identifier. Names follow [A-Za-z_][A-Za-z0-9_]* and are totally
// ordered by byte-wise comparison, which drives every deterministic tie-break.
class VertexId {
public:
    VertexId() = default;
    explicit VertexId(std::string name);
    VertexId(const char* name) : VertexId(std::string(name)) {}

    const std::string& name() const { return name_; }
    static bool is_valid_name(std::string_view name);

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
    friend bool operator==(const VertexId&, const VertexId&) = default;

private:
    std::string name_;
};

using VertexSet = std::set<VertexId>;

VertexSet vertex_set(std::initializer_list<const char*> names);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool intersects(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);
// "{B,C}" with names in sorted order; "{}" for the empty set.
std::string to_string(const VertexSet& s);

// Unordered pair of distinct vertices, stored with the smaller name first.
class VertexPair {
public:
    VertexPair(VertexId a, VertexId b);

    const VertexId& first() const { return first_; }
    const VertexId& second() const { return second_; }
    bool contains(const VertexId& v) const { return v == first_ || v == second_; }

    friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
    friend bool operator==(const VertexPair&, const VertexPair&) = default;

private:
    VertexId first_;
    VertexId second_;
};

using PairSet = std::set<VertexPair>;

std::string to_string(const VertexPair& p);  // "B-X"

struct DirectedEdge {
    VertexId tail;
    VertexId head;
    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Acyclic directed mixed graph. Immutable once built; vertices are kept in
// sorted order and addressed internally by their position in that order.
class Admg {
public:
    class Builder;

    Admg() = default;

    std::size_t size() const { return names_.size(); }
    const std::vector<VertexId>& vertices() const { return names_; }
    VertexSet vertex_set() const { return VertexSet(names_.begin(), names_.end()); }
    VertexSet observed_set() const;

    bool contains(const VertexId& v) const;
    // Position of v in vertices(); throws UnknownVertex.
    std::size_t index(const VertexId& v) const;
    const VertexId& name(std::size_t i) const { return names_[i]; }

    bool is_observed(const VertexId& v) const { return observed_[index(v)]; }
    bool is_observed(std::size_t i) const { return observed_[i]; }

    bool has_directed(const VertexId& tail, const VertexId& head) const;
    bool has_bidirected(const VertexId& a, const VertexId& b) const;

    const std::set<DirectedEdge>& directed_edges() const { return directed_; }
    const PairSet& bidirected_edges() const { return bidirected_; }

    const std::vector<std::size_t>& parents(std::size_t i) const { return parents_[i]; }
    const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
    const std::vector<std::size_t>& siblings(std::size_t i) const { return siblings_[i]; }

    friend bool operator==(const Admg& a, const Admg& b);

private:
    std::vector<VertexId> names_;
    std::vector<bool> observed_;
    std::unordered_map<std::string, std::size_t> positions_;
    std::set<DirectedEdge> directed_;
    PairSet bidirected_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::vector<std::size_t>> siblings_;
};

// Incremental, validating construction. Every mutator throws GraphError on
// a duplicate declaration, duplicate edge, self-loop, unknown endpoint or a
// directed edge that would close a cycle.
class Admg::Builder {
public:
    Builder& add_vertex(const VertexId& v, bool observed = true);
    Builder& add_directed(const VertexId& tail, const VertexId& head);
    Builder& add_bidirected(const VertexId& a, const VertexId& b);
    bool contains(const VertexId& v) const { return vertices_.count(v) != 0; }
    Admg build() const;

private:
    bool reaches(const VertexId& from, const VertexId& to) const;

    std::set<VertexId> vertices_;
    std::set<VertexId> latent_;
    std::set<DirectedEdge> directed_;
    std::map<VertexId, std::set<VertexId>> children_;
    PairSet bidirected_;
};

Admg parse_graph(std::string_view text);
Admg read_graph_file(const std::string& path);
std::string serialize_graph(const Admg& g);

// Proper ancestors / descendants: a vertex is not its own ancestor unless it
// is reachable from another member of the argument set.
VertexSet ancestors(const Admg& g, const VertexSet& a);
VertexSet descendants(const Admg& g, const VertexSet& a);
std::vector<VertexSet> districts(const Admg& g);

// Latent projection onto keep.
Admg marginalize(const Admg& g, const VertexSet& keep);

// Index-level helpers shared by the algorithm modules.
using Mask = std::vector<char>;
Mask to_mask(const Admg& g, const VertexSet& s);
Mask descendant_mask(const Admg& g, const Mask& from);
Mask ancestor_mask(const Admg& g, const Mask& from);

}  // namespace confsel
