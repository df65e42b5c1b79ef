#pragma once

// JSON encodings shared by transcripts and the session service. Decoders are
// strict: every object must carry exactly the documented keys with the
// documented types, otherwise they throw Error with a short description.

#include <json.hpp>

#include "confsel/expansion.hpp"
#include "confsel/oracle.hpp"

namespace confsel::wire {

using Json = nlohmann::ordered_json;

Json encode(const VertexSet& s);
Json encode(const VertexPair& p);
Json encode(const PairSet& ps);
Json encode(const VertexSetFamily& f);
Json encode(const CutIndex& c);  // number, or "inf"
Json encode(const WorkingState& st);
Json encode(const OracleQuery& q);
Json encode(const OracleAnswer& a);
Json encode(const ExpansionConfig& c);
// Event payload without the sequence number: {"kind": ..., ...}.
Json encode(const TraceEvent& e);

VertexId decode_vertex(const Json& j);
VertexSet decode_vertex_set(const Json& j);
VertexPair decode_pair(const Json& j);
PairSet decode_pair_set(const Json& j);
VertexSetFamily decode_family(const Json& j);
CutIndex decode_cut(const Json& j);
WorkingState decode_state(const Json& j);
OracleQuery decode_query(const Json& j);
OracleAnswer decode_answer(const Json& j);
// Missing keys take their defaults; unknown keys are rejected.
ExpansionConfig decode_config(const Json& j);
TraceEvent decode_event(const Json& j);

// Throws Error unless j is an object whose keys are exactly `required` plus
// any subset of `optional`.
void expect_keys(const Json& j, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {});

}  // namespace confsel::wire
