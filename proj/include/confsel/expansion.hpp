#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "confsel/family.hpp"
#include "confsel/graph.hpp"
#include "confsel/oracle.hpp"

namespace confsel {

// Natural number or infinity.
class CutIndex {
public:
    CutIndex() = default;
    explicit CutIndex(std::size_t value) : value_(value) {}
    static CutIndex infinite() {
        CutIndex c;
        c.value_ = inf;
        return c;
    }

    bool is_infinite() const { return value_ == inf; }
    std::size_t value() const { return value_; }
    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

    friend auto operator<=>(const CutIndex&, const CutIndex&) = default;
    friend bool operator==(const CutIndex&, const CutIndex&) = default;

private:
    static constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::size_t value_ = 0;
};

// (S, B_y, B_n): the current adjustment set, the bidirected edges kept in the
// working graph and those ruled out. Every other pair over S ∪ {x,y} is
// uncertain.
struct WorkingState {
    VertexSet s;
    PairSet b_yes;
    PairSet b_no;
    friend auto operator<=>(const WorkingState&, const WorkingState&) = default;
    friend bool operator==(const WorkingState&, const WorkingState&) = default;
};

PairSet uncertain_pairs(const WorkingState& st, const VertexId& x, const VertexId& y);

// Minimum number of uncertain edges whose removal separates x from y in the
// undirected working graph over uncertain and kept edges; infinite when kept
// edges alone connect x and y.
CutIndex min_cut_index(const WorkingState& st, const VertexId& x, const VertexId& y);

enum class EdgeStrategy {
    MinCutClosestToY,  // an uncertain edge on a minimum cut, nearest to y
    FirstUncertain,    // the smallest uncertain pair
};

const char* to_string(EdgeStrategy s);
EdgeStrategy parse_edge_strategy(const std::string& s);  // "min-cut" | "first"

VertexPair select_edge(const WorkingState& st, const VertexId& x, const VertexId& y,
                       EdgeStrategy strategy);

struct FindPrimaryOptions {
    bool minimal_only = true;
    // Also branch on mediator sets when the common cause is observed. Without
    // this, primary sets that bypass an observed cause are never found.
    bool mediators_for_observed = true;
    std::size_t max_vertices = 64;
};

VertexSetFamily find_primary(Oracle& oracle, const VertexId& a, const VertexId& b,
                             const VertexSet& base, const FindPrimaryOptions& opts = {});
VertexSetFamily find_primary(Oracle& oracle, const VertexId& a, const VertexId& b,
                             const VertexSet& base, bool minimal_only);

struct ExpansionConfig {
    bool minimal_only = true;
    EdgeStrategy strategy = EdgeStrategy::MinCutClosestToY;
    std::size_t max_states = 10000;
    std::size_t max_vertices = 64;
    bool mediators_for_observed = true;
    std::size_t max_depth = 4096;  // recursive variant only

    friend bool operator==(const ExpansionConfig&, const ExpansionConfig&) = default;
};

struct StatePoppedEvent {
    std::size_t state_id = 0;
    WorkingState state;
    CutIndex mincut;
    friend bool operator==(const StatePoppedEvent&, const StatePoppedEvent&) = default;
};

struct EdgeSelectedEvent {
    std::size_t state_id = 0;
    VertexPair edge;
    friend bool operator==(const EdgeSelectedEvent&, const EdgeSelectedEvent&) = default;
};

struct QueryIssuedEvent {
    std::size_t query_id = 0;
    OracleQuery query;
    friend bool operator==(const QueryIssuedEvent&, const QueryIssuedEvent&) = default;
};

struct AnswerReceivedEvent {
    std::size_t query_id = 0;
    OracleAnswer answer;
    friend bool operator==(const AnswerReceivedEvent&, const AnswerReceivedEvent&) = default;
};

struct StatePushedEvent {
    std::size_t state_id = 0;
    std::optional<std::size_t> parent;
    WorkingState state;
    CutIndex mincut;
    friend bool operator==(const StatePushedEvent&, const StatePushedEvent&) = default;
};

struct SetEmittedEvent {
    std::size_t state_id = 0;
    VertexSet set;
    friend bool operator==(const SetEmittedEvent&, const SetEmittedEvent&) = default;
};

enum class FinishStatus { Completed, CapsHit, Aborted };
const char* to_string(FinishStatus s);

struct FinishedEvent {
    FinishStatus status = FinishStatus::Completed;
    friend bool operator==(const FinishedEvent&, const FinishedEvent&) = default;
};

using TraceEvent = std::variant<StatePoppedEvent, EdgeSelectedEvent, QueryIssuedEvent,
                                AnswerReceivedEvent, StatePushedEvent, SetEmittedEvent,
                                FinishedEvent>;

// "state_popped", "edge_selected", ...
const char* event_kind(const TraceEvent& e);

struct ExpansionResult {
    VertexSetFamily sufficient_sets;
    std::vector<VertexSet> discovery_order;
    std::vector<TraceEvent> trace;
    bool exhausted = true;  // false when a cap stopped the run early
    std::size_t states_pushed = 0;
    std::size_t states_popped = 0;
    std::size_t queries = 0;
};

// Iterative graph expansion with a priority queue keyed by min-cut index
// (ties: most recently pushed first). Events are appended to sink as they
// happen, so a caller can inspect progress even if the oracle throws.
ExpansionResult confounder_select(Oracle& oracle, const VertexId& x, const VertexId& y,
                                  const ExpansionConfig& config = {},
                                  std::vector<TraceEvent>* sink = nullptr);

// Depth-first variant of the same procedure.
ExpansionResult confounder_select_recursive(Oracle& oracle, const VertexId& x, const VertexId& y,
                                            const ExpansionConfig& config = {},
                                            std::vector<TraceEvent>* sink = nullptr);

}  // namespace confsel
