#include "confsel/expansion.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <set>
#include <tuple>

#include "confsel/errors.hpp"

namespace confsel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_budget(const VertexSet& s, std::size_t extra, std::size_t max_vertices) {
    if (s.size() + extra > max_vertices)
        throw VertexBudgetExceeded("vertex budget of " + std::to_string(max_vertices) +
                                   " exceeded by " + to_string(s));
}

}  // namespace

VertexSetFamily find_primary(Oracle& oracle, const VertexId& a, const VertexId& b,
                             const VertexSet& base, const FindPrimaryOptions& opts) {
    if (a == b) throw PreconditionError("find_primary needs two distinct vertices");
    if (base.count(a) || base.count(b))
        throw PreconditionError("base " + to_string(base) + " contains " + a.name() + " or " + b.name());

    std::set<VertexSet, CanonicalSetOrder> pending{base};
    std::set<VertexSet> seen{base};
    VertexSetFamily out;
    auto push = [&](const VertexSet& next) {
        check_budget(next, 2, opts.max_vertices);
        if (seen.insert(next).second) pending.insert(next);
    };

    while (!pending.empty()) {
        VertexSet t = *pending.begin();
        pending.erase(pending.begin());
        std::optional<VertexId> cause = oracle.common_cause(a, b, t);
        if (!cause) {
            VertexSet found = set_difference(t, base);
            if (opts.minimal_only) {
                const VertexSet candidates = found;
                for (const auto& z : candidates) {
                    VertexSet smaller = found;
                    smaller.erase(z);
                    if (!oracle.common_cause(a, b, set_union(base, smaller))) found = std::move(smaller);
                }
            }
            out.insert(found);
            continue;
        }
        const bool observed = oracle.is_observed(*cause);
        if (observed) {
            VertexSet next = t;
            next.insert(*cause);
            push(next);
        }
        if (!observed || opts.mediators_for_observed)
            for (const auto& m : oracle.find_mediator(a, b, *cause, base)) push(set_union(t, m));
    }
    return out;
}

VertexSetFamily find_primary(Oracle& oracle, const VertexId& a, const VertexId& b,
                             const VertexSet& base, bool minimal_only) {
    FindPrimaryOptions opts;
    opts.minimal_only = minimal_only;
    return find_primary(oracle, a, b, base, opts);
}

const char* to_string(FinishStatus s) {
    switch (s) {
        case FinishStatus::Completed: return "completed";
        case FinishStatus::CapsHit: return "caps_hit";
        case FinishStatus::Aborted: return "aborted";
    }
    return "?";
}

const char* event_kind(const TraceEvent& e) {
    return std::visit(overloaded{
                          [](const StatePoppedEvent&) { return "state_popped"; },
                          [](const EdgeSelectedEvent&) { return "edge_selected"; },
                          [](const QueryIssuedEvent&) { return "query_issued"; },
                          [](const AnswerReceivedEvent&) { return "answer_received"; },
                          [](const StatePushedEvent&) { return "state_pushed"; },
                          [](const SetEmittedEvent&) { return "set_emitted"; },
                          [](const FinishedEvent&) { return "finished"; },
                      },
                      e);
}

namespace {

// Logs every question and answer, keeps the vertex universe within budget,
// and rejects answers that do not fit their question.
class RecordingOracle : public Oracle {
public:
    RecordingOracle(Oracle& inner, std::vector<TraceEvent>& log, VertexSet universe,
                    std::size_t max_vertices)
        : inner_(inner), log_(log), universe_(std::move(universe)), max_vertices_(max_vertices) {}

    std::optional<VertexId> common_cause(const VertexId& a, const VertexId& b,
                                         const VertexSet& t) override {
        auto ans = record(CommonCauseQuery{a, b, t});
        const auto& cause = std::get<CommonCauseAnswer>(ans).cause;
        if (cause && (*cause == a || *cause == b || t.count(*cause)))
            throw InvalidAnswer("common cause " + cause->name() + " must lie outside " +
                                to_string(set_union(t, VertexSet{a, b})));
        return cause;
    }

    bool is_observed(const VertexId& v) override {
        return std::get<IsObservedAnswer>(record(IsObservedQuery{v})).observed;
    }

    VertexSetFamily find_mediator(const VertexId& a, const VertexId& b, const VertexId& cause,
                                  const VertexSet& base) override {
        auto ans = record(FindMediatorQuery{a, b, cause, base});
        const auto& sets = std::get<FindMediatorAnswer>(ans).sets;
        VertexSet forbidden = set_union(base, VertexSet{a, b, cause});
        for (const auto& m : sets)
            if (m.empty() || intersects(m, forbidden))
                throw InvalidAnswer("mediator set " + to_string(m) + " must be nonempty and avoid " +
                                    to_string(forbidden));
        return sets;
    }

    std::size_t queries() const { return next_id_ - 1; }

private:
    OracleAnswer record(const OracleQuery& q) {
        admit(mentioned_vertices(q));
        const std::size_t id = next_id_++;
        log_.push_back(QueryIssuedEvent{id, q});
        OracleAnswer ans = inner_.ask(q);
        if (!answers_query(q, ans))
            throw InvalidAnswer("answer '" + to_string(ans) + "' does not fit " + to_string(q));
        admit(mentioned_vertices(ans));
        log_.push_back(AnswerReceivedEvent{id, ans});
        return ans;
    }

    void admit(const VertexSet& vs) {
        universe_.insert(vs.begin(), vs.end());
        check_budget(universe_, 0, max_vertices_);
    }

    Oracle& inner_;
    std::vector<TraceEvent>& log_;
    VertexSet universe_;
    std::size_t max_vertices_;
    std::size_t next_id_ = 1;
};

struct CapsHit {};

struct Children {
    bool no_expansion = false;  // the empty set was primary
    WorkingState blocked;       // π ruled out, S unchanged
    WorkingState keep;          // π kept
    std::vector<WorkingState> expanded;  // one per primary set, in family order
};

class Engine {
public:
    Engine(Oracle& oracle, const VertexId& x, const VertexId& y, const ExpansionConfig& config,
           std::vector<TraceEvent>* sink)
        : x_(x),
          y_(y),
          config_(config),
          log_(sink ? *sink : own_log_),
          first_event_(log_.size()),
          recorder_(oracle, log_, VertexSet{x, y}, config.max_vertices) {
        if (x == y) throw PreconditionError("treatment and outcome must differ");
        if (config.max_states == 0 || config.max_vertices < 2 || config.max_depth == 0)
            throw PreconditionError("expansion caps must be positive");
    }

    template <typename Body>
    ExpansionResult run(Body&& body) {
        FinishStatus status = FinishStatus::Completed;
        try {
            body();
        } catch (const CapsHit&) {
            status = FinishStatus::CapsHit;
        } catch (const VertexBudgetExceeded&) {
            status = FinishStatus::CapsHit;
        }
        log_.push_back(FinishedEvent{status});
        result_.exhausted = status == FinishStatus::Completed;
        result_.queries = recorder_.queries();
        result_.trace.assign(log_.begin() + static_cast<std::ptrdiff_t>(first_event_), log_.end());
        return std::move(result_);
    }

    // Registers a new state; returns its id, or nothing for a duplicate.
    std::optional<std::size_t> push(const WorkingState& st, std::optional<std::size_t> parent,
                                    CutIndex& cut) {
        if (!seen_.insert(st).second) return std::nullopt;
        if (result_.states_pushed >= config_.max_states) throw CapsHit{};
        VertexSet all = st.s;
        all.insert(x_);
        all.insert(y_);
        check_budget(all, 0, config_.max_vertices);
        const std::size_t id = ++result_.states_pushed;
        cut = min_cut_index(st, x_, y_);
        log_.push_back(StatePushedEvent{id, parent, st, cut});
        return id;
    }

    // Pops a state: returns true if it needs expanding.
    bool visit(std::size_t id, const WorkingState& st, CutIndex cut) {
        ++result_.states_popped;
        log_.push_back(StatePoppedEvent{id, st, cut});
        if (cut.is_infinite()) return false;
        if (cut.value() == 0) {
            log_.push_back(SetEmittedEvent{id, st.s});
            if (result_.sufficient_sets.insert(st.s)) result_.discovery_order.push_back(st.s);
            return false;
        }
        return true;
    }

    Children expand(std::size_t id, const WorkingState& st) {
        const VertexPair edge = select_edge(st, x_, y_, config_.strategy);
        log_.push_back(EdgeSelectedEvent{id, edge});
        VertexSet base = st.s;
        base.insert(x_);
        base.insert(y_);
        base.erase(edge.first());
        base.erase(edge.second());
        FindPrimaryOptions opts;
        opts.minimal_only = config_.minimal_only;
        opts.mediators_for_observed = config_.mediators_for_observed;
        opts.max_vertices = config_.max_vertices;
        const VertexSetFamily primary = find_primary(recorder_, edge.first(), edge.second(), base, opts);

        Children out;
        out.blocked = st;
        out.blocked.b_no.insert(edge);
        if (primary.contains_empty()) {
            out.no_expansion = true;
            return out;
        }
        out.keep = st;
        out.keep.b_yes.insert(edge);
        for (const auto& c : primary) {
            WorkingState next = out.blocked;
            next.s.insert(c.begin(), c.end());
            out.expanded.push_back(std::move(next));
        }
        return out;
    }

    const VertexId x_, y_;
    const ExpansionConfig config_;

private:
    std::vector<TraceEvent> own_log_;
    std::vector<TraceEvent>& log_;
    std::size_t first_event_;
    RecordingOracle recorder_;
    ExpansionResult result_;
    std::set<WorkingState> seen_;
};

}  // namespace

ExpansionResult confounder_select(Oracle& oracle, const VertexId& x, const VertexId& y,
                                  const ExpansionConfig& config, std::vector<TraceEvent>* sink) {
    Engine engine(oracle, x, y, config, sink);
    return engine.run([&] {
        struct Entry {
            WorkingState state;
            CutIndex cut;
            std::size_t id;
        };
        // Lowest cut first; among equal cuts, the latest push first.
        std::map<std::pair<CutIndex, std::size_t>, Entry, std::less<>> queue;
        std::size_t stamp = 0;  // decreasing, so later pushes sort first
        auto push = [&](const WorkingState& st, std::optional<std::size_t> parent) {
            CutIndex cut;
            if (auto id = engine.push(st, parent, cut))
                queue.emplace(std::make_pair(cut, --stamp), Entry{st, cut, *id});
        };
        push(WorkingState{}, std::nullopt);
        while (!queue.empty()) {
            Entry e = std::move(queue.begin()->second);
            queue.erase(queue.begin());
            if (!engine.visit(e.id, e.state, e.cut)) continue;
            Children ch = engine.expand(e.id, e.state);
            if (ch.no_expansion) {
                push(ch.blocked, e.id);
                continue;
            }
            // Keep-state first, then expansions in family order; with the
            // latest-push-first tie rule the last family member pops first.
            push(ch.keep, e.id);
            for (const auto& next : ch.expanded) push(next, e.id);
        }
    });
}

ExpansionResult confounder_select_recursive(Oracle& oracle, const VertexId& x, const VertexId& y,
                                            const ExpansionConfig& config,
                                            std::vector<TraceEvent>* sink) {
    Engine engine(oracle, x, y, config, sink);
    return engine.run([&] {
        std::function<void(std::size_t, const WorkingState&, CutIndex, std::size_t)> descend;
        descend = [&](std::size_t id, const WorkingState& st, CutIndex cut, std::size_t depth) {
            if (depth > engine.config_.max_depth) throw CapsHit{};
            if (!engine.visit(id, st, cut)) return;
            Children ch = engine.expand(id, st);
            std::vector<WorkingState> order;
            if (ch.no_expansion) {
                order.push_back(ch.blocked);
            } else {
                order = ch.expanded;
                order.push_back(ch.keep);
            }
            std::vector<std::tuple<std::size_t, WorkingState, CutIndex>> children;
            for (const auto& child : order) {
                CutIndex c;
                if (auto cid = engine.push(child, id, c)) children.emplace_back(*cid, child, c);
            }
            for (const auto& [cid, child, c] : children) descend(cid, child, c, depth + 1);
        };
        CutIndex cut;
        auto root = engine.push(WorkingState{}, std::nullopt, cut);
        descend(*root, WorkingState{}, cut, 1);
    });
}

}  // namespace confsel
