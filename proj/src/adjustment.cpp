#include "confsel/adjustment.hpp"

#include <functional>

#include "confsel/errors.hpp"
#include "confsel/separation.hpp"

namespace confsel {

namespace {

void check_pair(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s) {
    g.index(x);
    g.index(y);
    for (const auto& v : s) g.index(v);
    if (x == y) throw PreconditionError("treatment and outcome must differ");
    if (s.count(x) || s.count(y))
        throw PreconditionError("set " + to_string(s) + " contains " + x.name() + " or " + y.name());
}

void check_cap(std::size_t pool, std::size_t cap, const char* what) {
    if (pool > cap)
        throw SizeCapExceeded(std::string(what) + ": candidate pool of " + std::to_string(pool) +
                              " vertices exceeds the cap of " + std::to_string(cap));
}

// Size-ascending subset enumeration. Collects every subset satisfying pred
// that has no previously collected subset (or, if all is set, every subset
// satisfying pred).
VertexSetFamily search_subsets(const VertexSet& pool_set,
                               const std::function<bool(const VertexSet&)>& pred, bool all) {
    std::vector<VertexId> pool(pool_set.begin(), pool_set.end());
    const std::size_t n = pool.size();
    VertexSetFamily out;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k <= n; ++k) {
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            VertexSet s;
            for (std::size_t i : idx) s.insert(pool[i]);
            bool dominated = !all && std::any_of(out.begin(), out.end(), [&](const VertexSet& m) {
                return is_subset(m, s);
            });
            if (!dominated && pred(s)) out.insert(s);
            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

VertexSet descendants_of_pair(const Admg& g, const VertexId& a, const VertexId& b) {
    return descendants(g, VertexSet{a, b});
}

}  // namespace

bool is_adjustment_set(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s) {
    check_pair(g, x, y, s);
    return !intersects(s, descendants_of_pair(g, x, y));
}

bool is_sufficient(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s) {
    return is_adjustment_set(g, x, y, s) && district_criterion(g, x, y, s);
}

bool pearl_backdoor(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s) {
    check_pair(g, x, y, s);
    if (intersects(s, descendants(g, VertexSet{x}))) return false;
    Admg::Builder b;
    for (const auto& v : g.vertices()) b.add_vertex(v, g.is_observed(v));
    for (const auto& e : g.directed_edges())
        if (e.tail != x) b.add_directed(e.tail, e.head);
    for (const auto& p : g.bidirected_edges()) b.add_bidirected(p.first(), p.second());
    return !connected(b.build(), ConnectionKind::MConn, x, y, s);
}

VertexSet adjustment_pool(const Admg& g, const VertexId& x, const VertexId& y, bool observed_only) {
    check_pair(g, x, y, {});
    VertexSet pool = observed_only ? g.observed_set() : g.vertex_set();
    pool.erase(x);
    pool.erase(y);
    return set_difference(pool, descendants_of_pair(g, x, y));
}

VertexSetFamily enumerate_minimal_sufficient(const Admg& g, const VertexId& x, const VertexId& y,
                                             const EnumerationOptions& opts) {
    VertexSet pool = adjustment_pool(g, x, y, opts.observed_only);
    check_cap(pool.size(), opts.cap, "sufficient-set enumeration");
    return search_subsets(
        pool, [&](const VertexSet& s) { return district_criterion(g, x, y, s); }, false);
}

VertexSetFamily enumerate_all_sufficient(const Admg& g, const VertexId& x, const VertexId& y,
                                         const EnumerationOptions& opts) {
    VertexSet pool = adjustment_pool(g, x, y, opts.observed_only);
    check_cap(pool.size(), opts.cap, "sufficient-set enumeration");
    return search_subsets(
        pool, [&](const VertexSet& s) { return district_criterion(g, x, y, s); }, true);
}

bool is_primary(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& base,
                const VertexSet& c) {
    check_pair(g, a, b, base);
    if (!is_adjustment_set(g, a, b, c)) return false;
    return !connected(g, ConnectionKind::ConfArc, a, b, set_union(base, c));
}

VertexSetFamily enumerate_minimal_primary(const Admg& g, const VertexId& a, const VertexId& b,
                                          const VertexSet& base,
                                          const PrimaryEnumerationOptions& opts) {
    check_pair(g, a, b, base);
    VertexSet pool = set_difference(adjustment_pool(g, a, b, true), base);
    if (opts.ancestors_only) {
        VertexSet an = ancestors(g, VertexSet{a, b});
        VertexSet restricted;
        for (const auto& v : pool)
            if (an.count(v)) restricted.insert(v);
        pool = std::move(restricted);
    }
    check_cap(pool.size(), opts.cap, "primary-set enumeration");
    return search_subsets(
        pool,
        [&](const VertexSet& c) {
            return !connected(g, ConnectionKind::ConfArc, a, b, set_union(base, c));
        },
        false);
}

VertexSet common_causes(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& t) {
    check_pair(g, a, b, t);
    VertexSet ta = t, tb = t;
    ta.insert(b);
    tb.insert(a);
    VertexSet out;
    for (const auto& v : g.vertices()) {
        if (v == a || v == b || t.count(v)) continue;
        if (connected(g, ConnectionKind::Directed, v, a, ta) &&
            connected(g, ConnectionKind::Directed, v, b, tb))
            out.insert(v);
    }
    return out;
}

VertexSetFamily enumerate_minimal_mediator_sets(const Admg& g, const VertexId& a, const VertexId& b,
                                                const VertexId& cause, const VertexSet& base,
                                                const MediatorEnumerationOptions& opts) {
    check_pair(g, a, b, base);
    if (!common_causes(g, a, b, base).count(cause))
        throw PreconditionError(cause.name() + " is not an unblocked common cause of " + a.name() +
                                " and " + b.name() + " given " + to_string(base));
    // Only vertices on a directed path from the cause to a or b can help.
    VertexSet relevant = descendants(g, VertexSet{cause});
    VertexSet upstream = ancestors(g, VertexSet{a, b});
    VertexSet candidates = opts.exclude_pair_descendants ? adjustment_pool(g, a, b, true) : g.observed_set();
    candidates.erase(a);
    candidates.erase(b);
    VertexSet pool;
    for (const auto& v : set_difference(candidates, base))
        if (v != cause && relevant.count(v) && upstream.count(v) && !opts.exclude.count(v))
            pool.insert(v);
    check_cap(pool.size(), opts.cap, "mediator-set enumeration");
    return search_subsets(
        pool,
        [&](const VertexSet& m) {
            VertexSet to_a = set_union(base, m), to_b = to_a;
            to_a.insert(b);
            to_b.insert(a);
            return !connected(g, ConnectionKind::Directed, cause, a, to_a) ||
                   !connected(g, ConnectionKind::Directed, cause, b, to_b);
        },
        false);
}

}  // namespace confsel
