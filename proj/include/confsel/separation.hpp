#pragma once

#include <string>
#include <vector>

#include "confsel/graph.hpp"

namespace confsel {

enum class ConnectionKind {
    Directed,  // a -> ... -> b
    ConfArc,   // arrowheads into both endpoints, no colliders
    ConfPath,  // arrowheads into both endpoints, colliders allowed
    MConn,     // any endpoints, colliders allowed
};

const char* to_string(ConnectionKind kind);
inline constexpr ConnectionKind all_connection_kinds[] = {
    ConnectionKind::Directed, ConnectionKind::ConfArc, ConnectionKind::ConfPath, ConnectionKind::MConn};

// Is there an unblocked path of the given kind between a and b given c?
// Decided by reachability over (vertex, incoming mark) states with walk
// blocking: a collider passes only if it is in c, a non-collider only if it
// is not. Endpoints are never revisited.
bool connected(const Admg& g, ConnectionKind kind, const VertexId& a, const VertexId& b,
               const VertexSet& c);

enum class EdgeStep {
    Forward,     // v_i -> v_{i+1}
    Backward,    // v_i <- v_{i+1}
    Bidirected,  // v_i <-> v_{i+1}
};

struct Path {
    std::vector<VertexId> vertices;
    std::vector<EdgeStep> steps;  // steps.size() == vertices.size() - 1
    friend auto operator<=>(const Path&, const Path&) = default;
    friend bool operator==(const Path&, const Path&) = default;
};

std::string to_string(const Path& p);  // "X <- B -> Y"

inline constexpr std::size_t path_enumeration_cap = 12;

// Every simple path of the given kind that is ancestrally unblocked given c
// (a collider is open when it lies in c or has a descendant in c). Sorted by
// vertex sequence. Throws SizeCapExceeded for graphs larger than max_vertices.
std::vector<Path> enumerate_unblocked_paths(const Admg& g, ConnectionKind kind, const VertexId& a,
                                            const VertexId& b, const VertexSet& c,
                                            std::size_t max_vertices = path_enumeration_cap);

// x and y lie in different districts of the marginal over {x,y} ∪ s.
bool district_criterion(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s);

// In the marginal over {a,b} ∪ c, a and b are joined by a path whose every
// intermediate vertex is a collider.
bool collider_connected(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& c);

// Set-lifted separation: no a ∈ A and b ∈ B are connected given C. An empty
// A or B is separated by convention. A, B, C must be pairwise disjoint.
bool separated(const Admg& g, ConnectionKind kind, const VertexSet& a, const VertexSet& b,
               const VertexSet& c);

}  // namespace confsel
