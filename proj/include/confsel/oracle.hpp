#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "confsel/family.hpp"
#include "confsel/graph.hpp"

namespace confsel {

struct CommonCauseQuery {
    VertexId a, b;
    VertexSet t;
    friend auto operator<=>(const CommonCauseQuery&, const CommonCauseQuery&) = default;
    friend bool operator==(const CommonCauseQuery&, const CommonCauseQuery&) = default;
};

struct IsObservedQuery {
    VertexId v;
    friend auto operator<=>(const IsObservedQuery&, const IsObservedQuery&) = default;
    friend bool operator==(const IsObservedQuery&, const IsObservedQuery&) = default;
};

struct FindMediatorQuery {
    VertexId a, b, cause;
    VertexSet base;
    friend auto operator<=>(const FindMediatorQuery&, const FindMediatorQuery&) = default;
    friend bool operator==(const FindMediatorQuery&, const FindMediatorQuery&) = default;
};

using OracleQuery = std::variant<CommonCauseQuery, IsObservedQuery, FindMediatorQuery>;

struct CommonCauseAnswer {
    std::optional<VertexId> cause;
    friend auto operator<=>(const CommonCauseAnswer&, const CommonCauseAnswer&) = default;
    friend bool operator==(const CommonCauseAnswer&, const CommonCauseAnswer&) = default;
};

struct IsObservedAnswer {
    bool observed = true;
    friend auto operator<=>(const IsObservedAnswer&, const IsObservedAnswer&) = default;
    friend bool operator==(const IsObservedAnswer&, const IsObservedAnswer&) = default;
};

struct FindMediatorAnswer {
    VertexSetFamily sets;
    friend auto operator<=>(const FindMediatorAnswer&, const FindMediatorAnswer&) = default;
    friend bool operator==(const FindMediatorAnswer&, const FindMediatorAnswer&) = default;
};

using OracleAnswer = std::variant<CommonCauseAnswer, IsObservedAnswer, FindMediatorAnswer>;

std::string to_string(const OracleQuery& q);
std::string to_string(const OracleAnswer& a);
// Whether the answer has the alternative matching the query's alternative.
bool answers_query(const OracleQuery& q, const OracleAnswer& a);
// Every vertex named in the query or answer.
VertexSet mentioned_vertices(const OracleQuery& q);
VertexSet mentioned_vertices(const OracleAnswer& a);

// The structural questions the expansion procedure asks.
class Oracle {
public:
    virtual ~Oracle() = default;
    // A common cause of a and b whose influence on a and b is not cut off by t.
    virtual std::optional<VertexId> common_cause(const VertexId& a, const VertexId& b,
                                                 const VertexSet& t) = 0;
    virtual bool is_observed(const VertexId& v) = 0;
    // Observed sets that, added to base, cut the cause off from a or from b.
    virtual VertexSetFamily find_mediator(const VertexId& a, const VertexId& b,
                                          const VertexId& cause, const VertexSet& base) = 0;

    OracleAnswer ask(const OracleQuery& q);
};

// Ground-truth oracle backed by a graph. Every bidirected edge p <-> q is
// treated as an unobserved common parent of p and q (named "_L_p_q"), so
// arcs through bidirected edges surface as latent common causes whose
// mediators are the observed vertices along the arc.
class GraphOracle : public Oracle {
public:
    explicit GraphOracle(const Admg& g);
    // Without a target pair, mediator sets must be adjustment sets for the
    // queried pair. With one, they need only avoid descendants of x and y,
    // which keeps every expanded set a valid adjustment set for (x,y).
    GraphOracle(const Admg& g, const VertexId& x, const VertexId& y);

    std::optional<VertexId> common_cause(const VertexId& a, const VertexId& b,
                                         const VertexSet& t) override;
    bool is_observed(const VertexId& v) override;
    VertexSetFamily find_mediator(const VertexId& a, const VertexId& b, const VertexId& cause,
                                  const VertexSet& base) override;

    const Admg& graph() const { return graph_; }
    // The graph with bidirected edges replaced by latent common parents.
    const Admg& witness_graph() const { return witness_; }

private:
    Admg graph_;
    Admg witness_;
    VertexSet excluded_;
    bool targeted_ = false;
};

using AnswerEntry = std::pair<OracleQuery, OracleAnswer>;

// Exact-match lookup of recorded answers, independent of the order in which
// the queries were originally asked.
class AnswerBook {
public:
    AnswerBook() = default;
    explicit AnswerBook(const std::vector<AnswerEntry>& entries);

    // Throws ReplayDivergence if the query is already recorded with a
    // different answer.
    void add(const OracleQuery& q, const OracleAnswer& a);
    const OracleAnswer* find(const OracleQuery& q);
    std::size_t size() const { return answers_.size(); }
    std::size_t unused() const;

private:
    std::map<OracleQuery, OracleAnswer> answers_;
    std::map<OracleQuery, bool> used_;
};

class ReplayOracle : public Oracle {
public:
    explicit ReplayOracle(const std::vector<AnswerEntry>& entries);

    std::optional<VertexId> common_cause(const VertexId& a, const VertexId& b,
                                         const VertexSet& t) override;
    bool is_observed(const VertexId& v) override;
    VertexSetFamily find_mediator(const VertexId& a, const VertexId& b, const VertexId& cause,
                                  const VertexSet& base) override;

    // Recorded answers that were never requested.
    std::size_t unused_entries() const { return book_.unused(); }

private:
    const OracleAnswer& lookup(const OracleQuery& q);
    AnswerBook book_;
};

}  // namespace confsel
