#include "confsel/separation.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "confsel/errors.hpp"

namespace confsel {

namespace {

enum Mark : int { Tail = 0, Arrow = 1 };

struct Rules {
    bool start_tail, start_arrow;
    bool end_tail, end_arrow;
    bool forward_only;
    bool colliders;
};

Rules rules_for(ConnectionKind kind) {
    switch (kind) {
        case ConnectionKind::Directed: return {true, false, false, true, true, false};
        case ConnectionKind::ConfArc: return {false, true, false, true, false, false};
        case ConnectionKind::ConfPath: return {false, true, false, true, false, true};
        case ConnectionKind::MConn: return {true, true, true, true, false, true};
    }
    throw PreconditionError("unknown connection kind");
}

struct Incident {
    std::size_t other;
    Mark near;  // mark at the vertex we stand on
    Mark far;   // mark at the other endpoint
};

template <typename F>
void for_each_incident(const Admg& g, std::size_t v, bool forward_only, F&& f) {
    for (std::size_t w : g.children(v)) f(Incident{w, Tail, Arrow});
    if (forward_only) return;
    for (std::size_t w : g.parents(v)) f(Incident{w, Arrow, Tail});
    for (std::size_t w : g.siblings(v)) f(Incident{w, Arrow, Arrow});
}

void check_endpoints(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& c) {
    g.index(a);
    g.index(b);
    for (const auto& v : c) g.index(v);
    if (a == b) throw PreconditionError("endpoints must differ, got " + a.name() + " twice");
    if (c.count(a) || c.count(b))
        throw PreconditionError("conditioning set " + to_string(c) + " contains an endpoint");
}

bool accepts(const Rules& r, Mark m, bool at_start) {
    if (at_start) return m == Tail ? r.start_tail : r.start_arrow;
    return m == Tail ? r.end_tail : r.end_arrow;
}

}  // namespace

const char* to_string(ConnectionKind kind) {
    switch (kind) {
        case ConnectionKind::Directed: return "directed";
        case ConnectionKind::ConfArc: return "confarc";
        case ConnectionKind::ConfPath: return "confpath";
        case ConnectionKind::MConn: return "mconn";
    }
    return "?";
}

bool connected(const Admg& g, ConnectionKind kind, const VertexId& a, const VertexId& b,
               const VertexSet& c) {
    check_endpoints(g, a, b, c);
    const Rules r = rules_for(kind);
    const std::size_t n = g.size(), ia = g.index(a), ib = g.index(b);
    const Mask in_c = to_mask(g, c);

    std::vector<std::array<char, 2>> seen(n, {0, 0});
    std::deque<std::pair<std::size_t, Mark>> todo;
    bool found = false;
    auto arrive = [&](std::size_t w, Mark m) {
        if (w == ib) {
            if (accepts(r, m, false)) found = true;
            return;
        }
        if (w == ia || seen[w][m]) return;
        seen[w][m] = 1;
        todo.emplace_back(w, m);
    };

    for_each_incident(g, ia, r.forward_only, [&](const Incident& e) {
        if (accepts(r, e.near, true)) arrive(e.other, e.far);
    });
    while (!todo.empty() && !found) {
        auto [v, mv] = todo.front();
        todo.pop_front();
        for_each_incident(g, v, r.forward_only, [&](const Incident& e) {
            bool collider = mv == Arrow && e.near == Arrow;
            if (collider ? !(r.colliders && in_c[v]) : in_c[v]) return;
            arrive(e.other, e.far);
        });
    }
    return found;
}

std::string to_string(const Path& p) {
    std::string out = p.vertices.empty() ? "" : p.vertices.front().name();
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        switch (p.steps[i]) {
            case EdgeStep::Forward: out += " -> "; break;
            case EdgeStep::Backward: out += " <- "; break;
            case EdgeStep::Bidirected: out += " <-> "; break;
        }
        out += p.vertices[i + 1].name();
    }
    return out;
}

namespace {

struct PathSearch {
    const Admg& g;
    Rules rules;
    std::size_t target;
    Mask in_c;
    Mask open_collider;  // c ∪ an(c)
    Mask on_path;
    std::vector<std::size_t> verts;
    std::vector<EdgeStep> steps;
    std::vector<Path> out;

    static Mark mark_at_start(EdgeStep s) { return s == EdgeStep::Forward ? Tail : Arrow; }
    static Mark mark_at_end(EdgeStep s) { return s == EdgeStep::Backward ? Tail : Arrow; }

    void extend(std::size_t v) {
        auto try_step = [&](std::size_t w, EdgeStep s) {
            if (on_path[w]) return;
            if (steps.empty()) {
                if (!accepts(rules, mark_at_start(s), true)) return;
            } else {
                bool collider = mark_at_end(steps.back()) == Arrow && mark_at_start(s) == Arrow;
                if (collider ? !(rules.colliders && open_collider[v]) : in_c[v]) return;
            }
            if (w == target) {
                if (!accepts(rules, mark_at_end(s), false)) return;
                Path p;
                for (std::size_t u : verts) p.vertices.push_back(g.name(u));
                p.vertices.push_back(g.name(w));
                p.steps = steps;
                p.steps.push_back(s);
                out.push_back(std::move(p));
                return;
            }
            on_path[w] = 1;
            verts.push_back(w);
            steps.push_back(s);
            extend(w);
            steps.pop_back();
            verts.pop_back();
            on_path[w] = 0;
        };
        for (std::size_t w : g.children(v)) try_step(w, EdgeStep::Forward);
        if (rules.forward_only) return;
        for (std::size_t w : g.parents(v)) try_step(w, EdgeStep::Backward);
        for (std::size_t w : g.siblings(v)) try_step(w, EdgeStep::Bidirected);
    }
};

}  // namespace

std::vector<Path> enumerate_unblocked_paths(const Admg& g, ConnectionKind kind, const VertexId& a,
                                            const VertexId& b, const VertexSet& c,
                                            std::size_t max_vertices) {
    check_endpoints(g, a, b, c);
    if (g.size() > max_vertices)
        throw SizeCapExceeded("path enumeration is limited to graphs of " +
                              std::to_string(max_vertices) + " vertices, got " +
                              std::to_string(g.size()));
    Mask in_c = to_mask(g, c);
    Mask open = ancestor_mask(g, in_c);
    for (std::size_t i = 0; i < g.size(); ++i) open[i] = open[i] || in_c[i];
    PathSearch search{g, rules_for(kind), g.index(b), in_c, open, Mask(g.size(), 0), {}, {}, {}};
    std::size_t start = g.index(a);
    search.on_path[start] = 1;
    search.verts.push_back(start);
    search.extend(start);
    std::sort(search.out.begin(), search.out.end());
    return search.out;
}

namespace {

void check_pair(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s) {
    check_endpoints(g, x, y, s);
}

}  // namespace

bool district_criterion(const Admg& g, const VertexId& x, const VertexId& y, const VertexSet& s) {
    check_pair(g, x, y, s);
    VertexSet keep = s;
    keep.insert(x);
    keep.insert(y);
    for (const auto& block : districts(marginalize(g, keep)))
        if (block.count(x)) return block.count(y) == 0;
    return true;
}

bool collider_connected(const Admg& g, const VertexId& a, const VertexId& b, const VertexSet& c) {
    check_pair(g, a, b, c);
    VertexSet keep = c;
    keep.insert(a);
    keep.insert(b);
    Admg m = marginalize(g, keep);
    const std::size_t ia = m.index(a), ib = m.index(b);
    auto adjacent_with_arrow_at = [&](std::size_t from, std::size_t to) {
        // an edge from -> to or from <-> to
        const auto& ch = m.children(from);
        const auto& sib = m.siblings(from);
        return std::find(ch.begin(), ch.end(), to) != ch.end() ||
               std::find(sib.begin(), sib.end(), to) != sib.end();
    };
    if (adjacent_with_arrow_at(ia, ib) || adjacent_with_arrow_at(ib, ia)) return true;
    Mask seen(m.size(), 0);
    std::deque<std::size_t> todo;
    for (std::size_t v = 0; v < m.size(); ++v)
        if (v != ia && v != ib && adjacent_with_arrow_at(ia, v)) {
            seen[v] = 1;
            todo.push_back(v);
        }
    while (!todo.empty()) {
        std::size_t v = todo.front();
        todo.pop_front();
        if (adjacent_with_arrow_at(ib, v)) return true;
        for (std::size_t w : m.siblings(v))
            if (w != ia && w != ib && !seen[w]) {
                seen[w] = 1;
                todo.push_back(w);
            }
    }
    return false;
}

bool separated(const Admg& g, ConnectionKind kind, const VertexSet& a, const VertexSet& b,
               const VertexSet& c) {
    if (intersects(a, b) || intersects(a, c) || intersects(b, c))
        throw PreconditionError("set-lifted separation needs pairwise disjoint sets");
    for (const auto& u : a)
        for (const auto& v : b)
            if (connected(g, kind, u, v, c)) return false;
    return true;
}

}  // namespace confsel
