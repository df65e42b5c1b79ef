#include "confsel/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "confsel/errors.hpp"

namespace confsel {

namespace {

bool is_ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

VertexId::VertexId(std::string name) : name_(std::move(name)) {
    if (!is_valid_name(name_)) throw InvalidName(name_);
}

bool VertexId::is_valid_name(std::string_view name) {
    if (name.empty() || !is_ident_start(name.front())) return false;
    return std::all_of(name.begin(), name.end(), is_ident_char);
}

VertexSet vertex_set(std::initializer_list<const char*> names) {
    VertexSet out;
    for (const char* n : names) out.insert(VertexId(n));
    return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
    return out;
}

bool intersects(const VertexSet& a, const VertexSet& b) {
    for (const auto& v : a)
        if (b.count(v)) return true;
    return false;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string to_string(const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : s) {
        if (!first) out += ",";
        out += v.name();
        first = false;
    }
    return out + "}";
}

VertexPair::VertexPair(VertexId a, VertexId b) {
    if (a == b) throw PreconditionError("a vertex pair needs two distinct vertices, got " + a.name() + " twice");
    if (b < a) std::swap(a, b);
    first_ = std::move(a);
    second_ = std::move(b);
}

std::string to_string(const VertexPair& p) { return p.first().name() + "-" + p.second().name(); }

VertexSet Admg::observed_set() const {
    VertexSet out;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (observed_[i]) out.insert(names_[i]);
    return out;
}

bool Admg::contains(const VertexId& v) const { return positions_.count(v.name()) != 0; }

std::size_t Admg::index(const VertexId& v) const {
    auto it = positions_.find(v.name());
    if (it == positions_.end()) throw UnknownVertex(v.name());
    return it->second;
}

bool Admg::has_directed(const VertexId& tail, const VertexId& head) const {
    return directed_.count(DirectedEdge{tail, head}) != 0;
}

bool Admg::has_bidirected(const VertexId& a, const VertexId& b) const {
    if (a == b) return false;
    return bidirected_.count(VertexPair(a, b)) != 0;
}

bool operator==(const Admg& a, const Admg& b) {
    return a.names_ == b.names_ && a.observed_ == b.observed_ && a.directed_ == b.directed_ &&
           a.bidirected_ == b.bidirected_;
}

Admg::Builder& Admg::Builder::add_vertex(const VertexId& v, bool observed) {
    if (!vertices_.insert(v).second) throw GraphError("duplicate vertex '" + v.name() + "'");
    if (!observed) latent_.insert(v);
    return *this;
}

bool Admg::Builder::reaches(const VertexId& from, const VertexId& to) const {
    std::set<VertexId> seen{from};
    std::deque<VertexId> todo{from};
    while (!todo.empty()) {
        VertexId v = todo.front();
        todo.pop_front();
        if (v == to) return true;
        auto it = children_.find(v);
        if (it == children_.end()) continue;
        for (const auto& w : it->second)
            if (seen.insert(w).second) todo.push_back(w);
    }
    return false;
}

Admg::Builder& Admg::Builder::add_directed(const VertexId& tail, const VertexId& head) {
    if (!contains(tail)) throw GraphError("undeclared vertex '" + tail.name() + "'");
    if (!contains(head)) throw GraphError("undeclared vertex '" + head.name() + "'");
    if (tail == head) throw GraphError("self-loop on '" + tail.name() + "'");
    DirectedEdge e{tail, head};
    if (directed_.count(e))
        throw GraphError("duplicate edge " + tail.name() + " -> " + head.name());
    if (reaches(head, tail))
        throw GraphError("directed cycle: edge " + tail.name() + " -> " + head.name() +
                         " closes a cycle");
    directed_.insert(e);
    children_[tail].insert(head);
    return *this;
}

Admg::Builder& Admg::Builder::add_bidirected(const VertexId& a, const VertexId& b) {
    if (!contains(a)) throw GraphError("undeclared vertex '" + a.name() + "'");
    if (!contains(b)) throw GraphError("undeclared vertex '" + b.name() + "'");
    if (a == b) throw GraphError("self-loop on '" + a.name() + "'");
    if (!bidirected_.insert(VertexPair(a, b)).second)
        throw GraphError("duplicate edge " + a.name() + " <-> " + b.name());
    return *this;
}

Admg Admg::Builder::build() const {
    Admg g;
    g.names_.assign(vertices_.begin(), vertices_.end());
    const std::size_t n = g.names_.size();
    g.observed_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.positions_.emplace(g.names_[i].name(), i);
        g.observed_[i] = latent_.count(g.names_[i]) == 0;
    }
    g.directed_ = directed_;
    g.bidirected_ = bidirected_;
    g.parents_.assign(n, {});
    g.children_.assign(n, {});
    g.siblings_.assign(n, {});
    for (const auto& e : directed_) {
        std::size_t t = g.positions_.at(e.tail.name()), h = g.positions_.at(e.head.name());
        g.children_[t].push_back(h);
        g.parents_[h].push_back(t);
    }
    for (const auto& p : bidirected_) {
        std::size_t a = g.positions_.at(p.first().name()), b = g.positions_.at(p.second().name());
        g.siblings_[a].push_back(b);
        g.siblings_[b].push_back(a);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.parents_[i].begin(), g.parents_[i].end());
        std::sort(g.children_[i].begin(), g.children_[i].end());
        std::sort(g.siblings_[i].begin(), g.siblings_[i].end());
    }
    return g;
}

Mask to_mask(const Admg& g, const VertexSet& s) {
    Mask m(g.size(), 0);
    for (const auto& v : s) m[g.index(v)] = 1;
    return m;
}

namespace {

Mask closure(const Admg& g, const Mask& from, bool forward) {
    Mask out(g.size(), 0);
    std::deque<std::size_t> todo;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (from[i]) todo.push_back(i);
    while (!todo.empty()) {
        std::size_t v = todo.front();
        todo.pop_front();
        for (std::size_t w : forward ? g.children(v) : g.parents(v)) {
            if (!out[w]) {
                out[w] = 1;
                todo.push_back(w);
            }
        }
    }
    return out;
}

VertexSet from_mask(const Admg& g, const Mask& m) {
    VertexSet out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (m[i]) out.insert(g.name(i));
    return out;
}

}  // namespace

Mask descendant_mask(const Admg& g, const Mask& from) { return closure(g, from, true); }
Mask ancestor_mask(const Admg& g, const Mask& from) { return closure(g, from, false); }

VertexSet ancestors(const Admg& g, const VertexSet& a) {
    return from_mask(g, ancestor_mask(g, to_mask(g, a)));
}

VertexSet descendants(const Admg& g, const VertexSet& a) {
    return from_mask(g, descendant_mask(g, to_mask(g, a)));
}

std::vector<VertexSet> districts(const Admg& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w : g.siblings(v)) parent[find(v)] = find(w);
    std::vector<VertexSet> blocks;
    std::vector<std::size_t> block_of(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t r = find(v);
        if (block_of[r] == n) {
            block_of[r] = blocks.size();
            blocks.emplace_back();
        }
        blocks[block_of[r]].insert(g.name(v));
    }
    return blocks;
}

Admg marginalize(const Admg& g, const VertexSet& keep) {
    const std::size_t n = g.size();
    Mask kept = to_mask(g, keep);

    // reach[v]: vertices reachable from v by a directed path of length >= 1
    // whose intermediates are all removed (v itself may be kept or removed).
    std::vector<Mask> reach(n, Mask(n, 0));
    for (std::size_t v = 0; v < n; ++v) {
        std::deque<std::size_t> todo{v};
        Mask seen(n, 0);
        while (!todo.empty()) {
            std::size_t u = todo.front();
            todo.pop_front();
            for (std::size_t w : g.children(u)) {
                if (reach[v][w]) continue;
                reach[v][w] = 1;
                if (!kept[w] && !seen[w]) {
                    seen[w] = 1;
                    todo.push_back(w);
                }
            }
        }
    }
    // sources[a]: a itself plus removed vertices with a directed path into a
    // through removed vertices only.
    std::vector<Mask> sources(n, Mask(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        sources[a][a] = 1;
        for (std::size_t u = 0; u < n; ++u)
            if (!kept[u] && reach[u][a]) sources[a][u] = 1;
    }

    Admg::Builder b;
    for (std::size_t v = 0; v < n; ++v)
        if (kept[v]) b.add_vertex(g.name(v), g.is_observed(v));
    for (std::size_t a = 0; a < n; ++a) {
        if (!kept[a]) continue;
        for (std::size_t c = 0; c < n; ++c)
            if (kept[c] && c != a && reach[a][c]) b.add_directed(g.name(a), g.name(c));
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (!kept[a]) continue;
        for (std::size_t c = a + 1; c < n; ++c) {
            if (!kept[c]) continue;
            bool arc = false;
            for (std::size_t u = 0; u < n && !arc; ++u)
                arc = !kept[u] && sources[a][u] && sources[c][u];
            for (std::size_t p = 0; p < n && !arc; ++p) {
                if (!sources[a][p]) continue;
                for (std::size_t q : g.siblings(p))
                    if (sources[c][q]) {
                        arc = true;
                        break;
                    }
            }
            if (arc) b.add_bidirected(g.name(a), g.name(c));
        }
    }
    return b.build();
}

}  // namespace confsel
