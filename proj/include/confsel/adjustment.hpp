#pragma once

#include <cstddef>

#include "confsel/family.hpp"
#include "confsel/graph.hpp"

namespace confsel {

inline constexpr std::size_t default_enumeration_cap = 15;

// s contains no descendant of x or y.
bool is_adjustment_set(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s);

// Adjustment set that separates x and y into different districts of the
// marginal over {x,y} ∪ s.
bool is_sufficient(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s);

// Classic back-door check: no descendant of x in s, and no path with an
// arrowhead into x reaches y unblocked given s.
bool pearl_backdoor(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s);

struct EnumerationOptions {
    bool observed_only = true;
    std::size_t cap = default_enumeration_cap;  // maximum candidate pool size
};

// Candidate pool for adjustment sets: every vertex except x, y and their
// descendants (restricted to observed vertices if requested).
VertexSet adjustment_pool(const Admg& g, const VertexId& x, const VertexId& y, bool observed_only);

VertexSetFamily enumerate_minimal_sufficient(const Admg& g, const VertexId& x, const VertexId& y,
                                             const EnumerationOptions& opts = {});
VertexSetFamily enumerate_all_sufficient(const Admg& g, const VertexId& x, const VertexId& y,
                                         const EnumerationOptions& opts = {});

// c is an adjustment set for (a,b) and blocks every confounding arc between
// a and b once combined with base.
bool is_primary(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& base,
                const VertexSet& c);

struct PrimaryEnumerationOptions {
    std::size_t cap = default_enumeration_cap;
    // Search only among ancestors of a or b; minimal primary sets always lie there.
    bool ancestors_only = true;
};

VertexSetFamily enumerate_minimal_primary(const Admg& g, const VertexId& a, const VertexId& b,
                                          const VertexSet& base,
                                          const PrimaryEnumerationOptions& opts = {});

// Vertices v outside t ∪ {a,b} with an unblocked directed path to a that
// avoids b, and one to b that avoids a, both given t.
VertexSet common_causes(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& t);

struct MediatorEnumerationOptions {
    std::size_t cap = default_enumeration_cap;
    VertexSet exclude;  // never use these vertices as mediators
    // Require M to be an adjustment set for (a,b), i.e. free of descendants
    // of a and b. Callers that only need M to be an adjustment set for some
    // other treatment/outcome pair clear this and list that pair's
    // descendants in exclude instead.
    bool exclude_pair_descendants = true;
};

// Inclusion-minimal observed sets M, disjoint from {a,b,cause} ∪ base and
// (by default) free of descendants of a and b, such that base ∪ M cuts every directed path
// from cause to a (or every one from cause to b). Requires cause to be an
// unblocked common cause of a and b given base.
VertexSetFamily enumerate_minimal_mediator_sets(const Admg& g, const VertexId& a, const VertexId& b,
                                                const VertexId& cause, const VertexSet& base,
                                                const MediatorEnumerationOptions& opts = {});

}  // namespace confsel
