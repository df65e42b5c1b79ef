#include "confsel/wire.hpp"

#include <algorithm>

#include "confsel/errors.hpp"

namespace confsel::wire {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
    return j[key];
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw Error(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

std::size_t count_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned()) throw Error(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

bool bool_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_boolean()) throw Error(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
}

FinishStatus parse_status(const std::string& s) {
    for (auto st : {FinishStatus::Completed, FinishStatus::CapsHit, FinishStatus::Aborted})
        if (s == to_string(st)) return st;
    throw Error("unknown finish status '" + s + "'");
}

}  // namespace

void expect_keys(const Json& j, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional) {
    if (!j.is_object()) throw Error("expected an object");
    for (const char* k : required)
        if (!j.contains(k)) throw Error(std::string("missing field '") + k + "'");
    for (const auto& item : j.items()) {
        auto known = [&](std::initializer_list<const char*> keys) {
            return std::any_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; });
        };
        if (!known(required) && !known(optional)) throw Error("unknown field '" + item.key() + "'");
    }
}

Json encode(const VertexSet& s) {
    Json out = Json::array();
    for (const auto& v : s) out.push_back(v.name());
    return out;
}

Json encode(const VertexPair& p) { return Json::array({p.first().name(), p.second().name()}); }

Json encode(const PairSet& ps) {
    Json out = Json::array();
    for (const auto& p : ps) out.push_back(encode(p));
    return out;
}

Json encode(const VertexSetFamily& f) {
    Json out = Json::array();
    for (const auto& s : f) out.push_back(encode(s));
    return out;
}

Json encode(const CutIndex& c) {
    if (c.is_infinite()) return "inf";
    return c.value();
}

Json encode(const WorkingState& st) {
    Json out;
    out["s"] = encode(st.s);
    out["b_yes"] = encode(st.b_yes);
    out["b_no"] = encode(st.b_no);
    return out;
}

Json encode(const OracleQuery& q) {
    return std::visit(overloaded{
                          [](const CommonCauseQuery& c) {
                              Json j;
                              j["type"] = "common_cause";
                              j["a"] = c.a.name();
                              j["b"] = c.b.name();
                              j["t"] = encode(c.t);
                              return j;
                          },
                          [](const IsObservedQuery& c) {
                              Json j;
                              j["type"] = "is_observed";
                              j["v"] = c.v.name();
                              return j;
                          },
                          [](const FindMediatorQuery& c) {
                              Json j;
                              j["type"] = "find_mediator";
                              j["a"] = c.a.name();
                              j["b"] = c.b.name();
                              j["cause"] = c.cause.name();
                              j["base"] = encode(c.base);
                              return j;
                          },
                      },
                      q);
}

Json encode(const OracleAnswer& a) {
    return std::visit(overloaded{
                          [](const CommonCauseAnswer& c) {
                              Json j;
                              j["type"] = "common_cause";
                              j["cause"] = c.cause ? Json(c.cause->name()) : Json(nullptr);
                              return j;
                          },
                          [](const IsObservedAnswer& c) {
                              Json j;
                              j["type"] = "is_observed";
                              j["observed"] = c.observed;
                              return j;
                          },
                          [](const FindMediatorAnswer& c) {
                              Json j;
                              j["type"] = "find_mediator";
                              j["sets"] = encode(c.sets);
                              return j;
                          },
                      },
                      a);
}

Json encode(const ExpansionConfig& c) {
    Json j;
    j["minimal_only"] = c.minimal_only;
    j["strategy"] = to_string(c.strategy);
    j["max_states"] = c.max_states;
    j["max_vertices"] = c.max_vertices;
    j["mediators_for_observed"] = c.mediators_for_observed;
    j["max_depth"] = c.max_depth;
    return j;
}

Json encode(const TraceEvent& e) {
    Json j;
    j["kind"] = event_kind(e);
    std::visit(overloaded{
                   [&](const StatePoppedEvent& p) {
                       j["state_id"] = p.state_id;
                       j["state"] = encode(p.state);
                       j["mincut"] = encode(p.mincut);
                   },
                   [&](const EdgeSelectedEvent& p) {
                       j["state_id"] = p.state_id;
                       j["edge"] = encode(p.edge);
                   },
                   [&](const QueryIssuedEvent& p) {
                       j["query_id"] = p.query_id;
                       j["query"] = encode(p.query);
                   },
                   [&](const AnswerReceivedEvent& p) {
                       j["query_id"] = p.query_id;
                       j["answer"] = encode(p.answer);
                   },
                   [&](const StatePushedEvent& p) {
                       j["state_id"] = p.state_id;
                       j["parent"] = p.parent ? Json(*p.parent) : Json(nullptr);
                       j["state"] = encode(p.state);
                       j["mincut"] = encode(p.mincut);
                   },
                   [&](const SetEmittedEvent& p) {
                       j["state_id"] = p.state_id;
                       j["set"] = encode(p.set);
                   },
                   [&](const FinishedEvent& p) { j["status"] = to_string(p.status); },
               },
               e);
    return j;
}

VertexId decode_vertex(const Json& j) {
    if (!j.is_string()) throw Error("vertex names must be strings");
    return VertexId(j.get<std::string>());
}

VertexSet decode_vertex_set(const Json& j) {
    if (!j.is_array()) throw Error("a vertex set must be an array of names");
    VertexSet out;
    for (const auto& v : j)
        if (!out.insert(decode_vertex(v)).second)
            throw Error("vertex '" + v.get<std::string>() + "' listed twice");
    return out;
}

VertexPair decode_pair(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("a pair must be an array of two names");
    return VertexPair(decode_vertex(j[0]), decode_vertex(j[1]));
}

PairSet decode_pair_set(const Json& j) {
    if (!j.is_array()) throw Error("a pair set must be an array of pairs");
    PairSet out;
    for (const auto& p : j)
        if (!out.insert(decode_pair(p)).second) throw Error("pair listed twice");
    return out;
}

VertexSetFamily decode_family(const Json& j) {
    if (!j.is_array()) throw Error("a family must be an array of vertex sets");
    VertexSetFamily out;
    for (const auto& s : j)
        if (!out.insert(decode_vertex_set(s))) throw Error("set listed twice in family");
    return out;
}

CutIndex decode_cut(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return CutIndex::infinite();
    if (j.is_number_unsigned()) return CutIndex(j.get<std::size_t>());
    throw Error("a min-cut index must be a non-negative integer or \"inf\"");
}

WorkingState decode_state(const Json& j) {
    expect_keys(j, {"s", "b_yes", "b_no"});
    WorkingState st{decode_vertex_set(j["s"]), decode_pair_set(j["b_yes"]), decode_pair_set(j["b_no"])};
    for (const auto& p : st.b_yes)
        if (st.b_no.count(p)) throw Error("pair is both kept and ruled out");
    return st;
}

OracleQuery decode_query(const Json& j) {
    if (!j.is_object()) throw Error("a query must be an object");
    const std::string type = string_field(j, "type");
    if (type == "common_cause") {
        expect_keys(j, {"type", "a", "b", "t"});
        return CommonCauseQuery{decode_vertex(j["a"]), decode_vertex(j["b"]), decode_vertex_set(j["t"])};
    }
    if (type == "is_observed") {
        expect_keys(j, {"type", "v"});
        return IsObservedQuery{decode_vertex(j["v"])};
    }
    if (type == "find_mediator") {
        expect_keys(j, {"type", "a", "b", "cause", "base"});
        return FindMediatorQuery{decode_vertex(j["a"]), decode_vertex(j["b"]), decode_vertex(j["cause"]),
                                 decode_vertex_set(j["base"])};
    }
    throw Error("unknown query type '" + type + "'");
}

OracleAnswer decode_answer(const Json& j) {
    if (!j.is_object()) throw Error("an answer must be an object");
    const std::string type = string_field(j, "type");
    if (type == "common_cause") {
        expect_keys(j, {"type", "cause"});
        const Json& c = j["cause"];
        if (c.is_null()) return CommonCauseAnswer{};
        return CommonCauseAnswer{decode_vertex(c)};
    }
    if (type == "is_observed") {
        expect_keys(j, {"type", "observed"});
        return IsObservedAnswer{bool_field(j, "observed")};
    }
    if (type == "find_mediator") {
        expect_keys(j, {"type", "sets"});
        return FindMediatorAnswer{decode_family(j["sets"])};
    }
    throw Error("unknown answer type '" + type + "'");
}

ExpansionConfig decode_config(const Json& j) {
    expect_keys(j, {},
                {"minimal_only", "strategy", "max_states", "max_vertices", "mediators_for_observed",
                 "max_depth"});
    ExpansionConfig c;
    if (j.contains("minimal_only")) c.minimal_only = bool_field(j, "minimal_only");
    if (j.contains("strategy")) c.strategy = parse_edge_strategy(string_field(j, "strategy"));
    if (j.contains("max_states")) c.max_states = count_field(j, "max_states");
    if (j.contains("max_vertices")) c.max_vertices = count_field(j, "max_vertices");
    if (j.contains("mediators_for_observed"))
        c.mediators_for_observed = bool_field(j, "mediators_for_observed");
    if (j.contains("max_depth")) c.max_depth = count_field(j, "max_depth");
    if (c.max_states == 0 || c.max_vertices < 2 || c.max_depth == 0)
        throw Error("caps must be positive (max_vertices at least 2)");
    return c;
}

TraceEvent decode_event(const Json& j) {
    if (!j.is_object()) throw Error("an event must be an object");
    const std::string kind = string_field(j, "kind");
    if (kind == "state_popped") {
        expect_keys(j, {"kind", "state_id", "state", "mincut"});
        return StatePoppedEvent{count_field(j, "state_id"), decode_state(j["state"]), decode_cut(j["mincut"])};
    }
    if (kind == "edge_selected") {
        expect_keys(j, {"kind", "state_id", "edge"});
        return EdgeSelectedEvent{count_field(j, "state_id"), decode_pair(j["edge"])};
    }
    if (kind == "query_issued") {
        expect_keys(j, {"kind", "query_id", "query"});
        return QueryIssuedEvent{count_field(j, "query_id"), decode_query(j["query"])};
    }
    if (kind == "answer_received") {
        expect_keys(j, {"kind", "query_id", "answer"});
        return AnswerReceivedEvent{count_field(j, "query_id"), decode_answer(j["answer"])};
    }
    if (kind == "state_pushed") {
        expect_keys(j, {"kind", "state_id", "parent", "state", "mincut"});
        std::optional<std::size_t> parent;
        if (!j["parent"].is_null()) parent = count_field(j, "parent");
        return StatePushedEvent{count_field(j, "state_id"), parent, decode_state(j["state"]),
                                decode_cut(j["mincut"])};
    }
    if (kind == "set_emitted") {
        expect_keys(j, {"kind", "state_id", "set"});
        return SetEmittedEvent{count_field(j, "state_id"), decode_vertex_set(j["set"])};
    }
    if (kind == "finished") {
        expect_keys(j, {"kind", "status"});
        return FinishedEvent{parse_status(string_field(j, "status"))};
    }
    throw Error("unknown event kind '" + kind + "'");
}

}  // namespace confsel::wire
