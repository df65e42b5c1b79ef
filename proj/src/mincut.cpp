#include <algorithm>
#include <deque>

#include "confsel/errors.hpp"
#include "confsel/expansion.hpp"

namespace confsel {

namespace {

// Undirected working graph over S ∪ {x,y}, as a dense capacity matrix.
struct WorkingGraph {
    std::vector<VertexId> names;
    std::size_t ix = 0, iy = 0;
    std::vector<std::vector<int>> kind;  // 0 none, 1 uncertain, 2 kept

    WorkingGraph(const WorkingState& st, const VertexId& x, const VertexId& y) {
        VertexSet all = st.s;
        all.insert(x);
        all.insert(y);
        names.assign(all.begin(), all.end());
        auto pos = [&](const VertexId& v) {
            return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), v) - names.begin());
        };
        ix = pos(x);
        iy = pos(y);
        const std::size_t n = names.size();
        kind.assign(n, std::vector<int>(n, 1));
        for (std::size_t i = 0; i < n; ++i) kind[i][i] = 0;
        auto mark = [&](const PairSet& ps, int k) {
            for (const auto& p : ps) {
                if (!all.count(p.first()) || !all.count(p.second()))
                    throw PreconditionError("working-state edge " + to_string(p) +
                                            " has an endpoint outside S ∪ {x,y}");
                std::size_t a = pos(p.first()), b = pos(p.second());
                kind[a][b] = kind[b][a] = k;
            }
        };
        mark(st.b_no, 0);
        mark(st.b_yes, 2);
    }

    std::size_t size() const { return names.size(); }

    bool kept_path() const {
        std::vector<char> seen(size(), 0);
        std::deque<std::size_t> todo{ix};
        seen[ix] = 1;
        while (!todo.empty()) {
            std::size_t v = todo.front();
            todo.pop_front();
            for (std::size_t w = 0; w < size(); ++w)
                if (kind[v][w] == 2 && !seen[w]) {
                    seen[w] = 1;
                    todo.push_back(w);
                }
        }
        return seen[iy];
    }

    // Max flow from x to y with unit capacity on uncertain edges and
    // effectively infinite capacity on kept ones (assumes no kept x-y path).
    std::size_t max_flow() const {
        const std::size_t n = size();
        std::size_t uncertain = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) uncertain += kind[i][j] == 1;
        const long big = static_cast<long>(uncertain) + 1;
        std::vector<std::vector<long>> residual(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                residual[i][j] = kind[i][j] == 1 ? 1 : kind[i][j] == 2 ? big : 0;
        std::size_t flow = 0;
        while (true) {
            std::vector<std::size_t> prev(n, n);
            prev[ix] = ix;
            std::deque<std::size_t> todo{ix};
            while (!todo.empty() && prev[iy] == n) {
                std::size_t v = todo.front();
                todo.pop_front();
                for (std::size_t w = 0; w < n; ++w)
                    if (residual[v][w] > 0 && prev[w] == n) {
                        prev[w] = v;
                        todo.push_back(w);
                    }
            }
            if (prev[iy] == n) return flow;
            long push = big;
            for (std::size_t v = iy; v != ix; v = prev[v]) push = std::min(push, residual[prev[v]][v]);
            for (std::size_t v = iy; v != ix; v = prev[v]) {
                residual[prev[v]][v] -= push;
                residual[v][prev[v]] += push;
            }
            flow += static_cast<std::size_t>(push);
        }
    }

    std::vector<std::size_t> distances_from_y() const {
        const std::size_t n = size();
        std::vector<std::size_t> dist(n, n + 1);
        dist[iy] = 0;
        std::deque<std::size_t> todo{iy};
        while (!todo.empty()) {
            std::size_t v = todo.front();
            todo.pop_front();
            for (std::size_t w = 0; w < n; ++w)
                if (kind[v][w] != 0 && dist[w] > dist[v] + 1) {
                    dist[w] = dist[v] + 1;
                    todo.push_back(w);
                }
        }
        return dist;
    }
};

}  // namespace

PairSet uncertain_pairs(const WorkingState& st, const VertexId& x, const VertexId& y) {
    WorkingGraph wg(st, x, y);
    PairSet out;
    for (std::size_t i = 0; i < wg.size(); ++i)
        for (std::size_t j = i + 1; j < wg.size(); ++j)
            if (wg.kind[i][j] == 1) out.insert(VertexPair(wg.names[i], wg.names[j]));
    return out;
}

CutIndex min_cut_index(const WorkingState& st, const VertexId& x, const VertexId& y) {
    if (x == y) throw PreconditionError("treatment and outcome must differ");
    WorkingGraph wg(st, x, y);
    if (wg.kept_path()) return CutIndex::infinite();
    return CutIndex(wg.max_flow());
}

const char* to_string(EdgeStrategy s) {
    return s == EdgeStrategy::MinCutClosestToY ? "min-cut" : "first";
}

EdgeStrategy parse_edge_strategy(const std::string& s) {
    if (s == "min-cut") return EdgeStrategy::MinCutClosestToY;
    if (s == "first") return EdgeStrategy::FirstUncertain;
    throw PreconditionError("unknown edge strategy '" + s + "' (expected min-cut or first)");
}

VertexPair select_edge(const WorkingState& st, const VertexId& x, const VertexId& y,
                       EdgeStrategy strategy) {
    WorkingGraph wg(st, x, y);
    const std::size_t n = wg.size();
    std::vector<std::pair<std::size_t, std::size_t>> uncertain;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (wg.kind[i][j] == 1) uncertain.emplace_back(i, j);
    if (uncertain.empty()) throw PreconditionError("no uncertain edge left to select");
    auto pair_of = [&](std::pair<std::size_t, std::size_t> e) {
        return VertexPair(wg.names[e.first], wg.names[e.second]);
    };
    if (strategy == EdgeStrategy::FirstUncertain) return pair_of(uncertain.front());

    if (wg.kept_path()) throw PreconditionError("min-cut index is infinite; nothing to select");
    const std::size_t flow = wg.max_flow();
    if (flow == 0) throw PreconditionError("x and y are already separated; nothing to select");
    const auto dist = wg.distances_from_y();

    std::optional<VertexPair> best;
    std::size_t best_dist = 0;
    for (auto e : uncertain) {
        WorkingGraph without = wg;
        without.kind[e.first][e.second] = without.kind[e.second][e.first] = 0;
        if (without.max_flow() + 1 != flow) continue;
        std::size_t d = std::min(dist[e.first], dist[e.second]);
        VertexPair p = pair_of(e);
        // Nearest to y; among equals, the greatest pair wins.
        if (!best || d < best_dist || (d == best_dist && *best < p)) {
            best = p;
            best_dist = d;
        }
    }
    if (!best) throw Error("internal: no uncertain edge lies on a minimum cut");
    return *best;
}

}  // namespace confsel
