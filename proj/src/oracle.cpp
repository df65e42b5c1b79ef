#include "confsel/oracle.hpp"

#include "confsel/adjustment.hpp"
#include "confsel/errors.hpp"

namespace confsel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string to_string(const OracleQuery& q) {
    return std::visit(
        overloaded{
            [](const CommonCauseQuery& c) {
                return "CommonCause(" + c.a.name() + ", " + c.b.name() + "; " + to_string(c.t) + ")";
            },
            [](const IsObservedQuery& c) { return "IsObserved(" + c.v.name() + ")"; },
            [](const FindMediatorQuery& c) {
                return "FindMediator(" + c.a.name() + ", " + c.b.name() + "; " + c.cause.name() +
                       ", " + to_string(c.base) + ")";
            },
        },
        q);
}

std::string to_string(const OracleAnswer& a) {
    return std::visit(overloaded{
                          [](const CommonCauseAnswer& c) {
                              return c.cause ? c.cause->name() : std::string("none");
                          },
                          [](const IsObservedAnswer& c) {
                              return std::string(c.observed ? "observed" : "unobserved");
                          },
                          [](const FindMediatorAnswer& c) { return to_string(c.sets); },
                      },
                      a);
}

bool answers_query(const OracleQuery& q, const OracleAnswer& a) { return q.index() == a.index(); }

VertexSet mentioned_vertices(const OracleQuery& q) {
    return std::visit(overloaded{
                          [](const CommonCauseQuery& c) {
                              VertexSet s = c.t;
                              s.insert(c.a);
                              s.insert(c.b);
                              return s;
                          },
                          [](const IsObservedQuery& c) { return VertexSet{c.v}; },
                          [](const FindMediatorQuery& c) {
                              VertexSet s = c.base;
                              s.insert({c.a, c.b, c.cause});
                              return s;
                          },
                      },
                      q);
}

VertexSet mentioned_vertices(const OracleAnswer& a) {
    return std::visit(overloaded{
                          [](const CommonCauseAnswer& c) {
                              return c.cause ? VertexSet{*c.cause} : VertexSet{};
                          },
                          [](const IsObservedAnswer&) { return VertexSet{}; },
                          [](const FindMediatorAnswer& c) {
                              VertexSet s;
                              for (const auto& m : c.sets) s.insert(m.begin(), m.end());
                              return s;
                          },
                      },
                      a);
}

OracleAnswer Oracle::ask(const OracleQuery& q) {
    return std::visit(overloaded{
                          [this](const CommonCauseQuery& c) -> OracleAnswer {
                              return CommonCauseAnswer{common_cause(c.a, c.b, c.t)};
                          },
                          [this](const IsObservedQuery& c) -> OracleAnswer {
                              return IsObservedAnswer{is_observed(c.v)};
                          },
                          [this](const FindMediatorQuery& c) -> OracleAnswer {
                              return FindMediatorAnswer{find_mediator(c.a, c.b, c.cause, c.base)};
                          },
                      },
                      q);
}

namespace {

Admg with_witness_latents(const Admg& g) {
    Admg::Builder b;
    for (const auto& v : g.vertices()) b.add_vertex(v, g.is_observed(v));
    for (const auto& e : g.directed_edges()) b.add_directed(e.tail, e.head);
    for (const auto& p : g.bidirected_edges()) {
        std::string name = "_L_" + p.first().name() + "_" + p.second().name();
        while (b.contains(VertexId(name))) name += "_";
        VertexId latent(name);
        b.add_vertex(latent, false);
        b.add_directed(latent, p.first());
        b.add_directed(latent, p.second());
    }
    return b.build();
}

}  // namespace

GraphOracle::GraphOracle(const Admg& g) : graph_(g), witness_(with_witness_latents(g)) {}

GraphOracle::GraphOracle(const Admg& g, const VertexId& x, const VertexId& y) : GraphOracle(g) {
    targeted_ = true;
    excluded_ = descendants(g, VertexSet{x, y});
}

std::optional<VertexId> GraphOracle::common_cause(const VertexId& a, const VertexId& b,
                                                  const VertexSet& t) {
    VertexSet causes = common_causes(witness_, a, b, t);
    if (causes.empty()) return std::nullopt;
    return *causes.begin();
}

bool GraphOracle::is_observed(const VertexId& v) { return witness_.is_observed(v); }

VertexSetFamily GraphOracle::find_mediator(const VertexId& a, const VertexId& b,
                                           const VertexId& cause, const VertexSet& base) {
    MediatorEnumerationOptions opts;
    opts.exclude = excluded_;
    opts.exclude_pair_descendants = !targeted_;
    return enumerate_minimal_mediator_sets(witness_, a, b, cause, base, opts);
}

AnswerBook::AnswerBook(const std::vector<AnswerEntry>& entries) {
    for (const auto& [q, a] : entries) add(q, a);
}

void AnswerBook::add(const OracleQuery& q, const OracleAnswer& a) {
    if (!answers_query(q, a))
        throw Error("answer '" + to_string(a) + "' does not fit query " + to_string(q));
    auto [it, inserted] = answers_.emplace(q, a);
    if (!inserted && it->second != a)
        throw ReplayDivergence("conflicting answers recorded for " + to_string(q) + ": '" +
                               to_string(it->second) + "' and '" + to_string(a) + "'");
    used_.emplace(q, false);
}

const OracleAnswer* AnswerBook::find(const OracleQuery& q) {
    auto it = answers_.find(q);
    if (it == answers_.end()) return nullptr;
    used_[q] = true;
    return &it->second;
}

std::size_t AnswerBook::unused() const {
    std::size_t n = 0;
    for (const auto& [q, u] : used_) n += u ? 0 : 1;
    return n;
}

ReplayOracle::ReplayOracle(const std::vector<AnswerEntry>& entries) : book_(entries) {}

const OracleAnswer& ReplayOracle::lookup(const OracleQuery& q) {
    const OracleAnswer* a = book_.find(q);
    if (!a) throw ReplayDivergence("replay diverged: no recorded answer for " + to_string(q));
    return *a;
}

std::optional<VertexId> ReplayOracle::common_cause(const VertexId& a, const VertexId& b,
                                                   const VertexSet& t) {
    return std::get<CommonCauseAnswer>(lookup(CommonCauseQuery{a, b, t})).cause;
}

bool ReplayOracle::is_observed(const VertexId& v) {
    return std::get<IsObservedAnswer>(lookup(IsObservedQuery{v})).observed;
}

VertexSetFamily ReplayOracle::find_mediator(const VertexId& a, const VertexId& b,
                                            const VertexId& cause, const VertexSet& base) {
    return std::get<FindMediatorAnswer>(lookup(FindMediatorQuery{a, b, cause, base})).sets;
}

}  // namespace confsel
