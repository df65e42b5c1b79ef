#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "confsel/adjustment.hpp"
#include "confsel/errors.hpp"
#include "confsel/expansion.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"
#include "support/reference.hpp"

using namespace confsel;
using confsel::testing::golden;

namespace {

PairSet pairs(std::initializer_list<std::pair<const char*, const char*>> ps) {
    PairSet out;
    for (const auto& [a, b] : ps) out.insert(VertexPair(a, b));
    return out;
}

VertexSetFamily family(std::initializer_list<std::initializer_list<const char*>> sets) {
    VertexSetFamily f;
    for (const auto& s : sets) f.insert(vertex_set(s));
    return f;
}

VertexSetFamily minimal(const VertexSetFamily& f) { return f.minimal_members(); }

std::vector<std::string> popped_cuts(const ExpansionResult& r) {
    std::vector<std::string> out;
    for (const auto& e : r.trace)
        if (const auto* p = std::get_if<StatePoppedEvent>(&e)) out.push_back(p->mincut.to_string());
    return out;
}

std::vector<std::string> event_kinds(const ExpansionResult& r) {
    std::vector<std::string> out;
    for (const auto& e : r.trace) out.push_back(event_kind(e));
    return out;
}

// Answers "no common cause" to everything.
class SilentOracle : public Oracle {
public:
    std::optional<VertexId> common_cause(const VertexId&, const VertexId&, const VertexSet&) override {
        return std::nullopt;
    }
    bool is_observed(const VertexId&) override { return true; }
    VertexSetFamily find_mediator(const VertexId&, const VertexId&, const VertexId&,
                                  const VertexSet&) override {
        return {};
    }
};

// Keeps inventing new observed common causes.
class EndlessOracle : public Oracle {
public:
    std::optional<VertexId> common_cause(const VertexId&, const VertexId&, const VertexSet& t) override {
        return VertexId("V" + std::to_string(t.size()));
    }
    bool is_observed(const VertexId&) override { return true; }
    VertexSetFamily find_mediator(const VertexId&, const VertexId&, const VertexId&,
                                  const VertexSet&) override {
        return {};
    }
};

}  // namespace

TEST_CASE("min-cut index of working states") {
    CHECK(min_cut_index(WorkingState{}, "X", "Y") == CutIndex(1));

    WorkingState two{vertex_set({"B", "C"}), {}, pairs({{"X", "Y"}})};
    CHECK(min_cut_index(two, "X", "Y") == CutIndex(2));

    WorkingState blocked{vertex_set({"B", "C", "D"}), {},
                         pairs({{"X", "Y"}, {"B", "X"}, {"C", "X"}, {"D", "X"}})};
    CHECK(min_cut_index(blocked, "X", "Y") == CutIndex(0));

    WorkingState kept{{}, pairs({{"X", "Y"}}), {}};
    CHECK(min_cut_index(kept, "X", "Y").is_infinite());

    // kept edges chain x to y through B
    WorkingState chain{vertex_set({"B"}), pairs({{"B", "X"}, {"B", "Y"}}), pairs({{"X", "Y"}})};
    CHECK(min_cut_index(chain, "X", "Y").is_infinite());

    // a kept edge counts as uncuttable inside a longer route
    WorkingState half{vertex_set({"B"}), pairs({{"B", "X"}}), pairs({{"X", "Y"}})};
    CHECK(min_cut_index(half, "X", "Y") == CutIndex(1));
    CHECK(uncertain_pairs(half, "X", "Y") == pairs({{"B", "Y"}}));
}

TEST_CASE("edge selection") {
    CHECK(select_edge(WorkingState{}, "X", "Y", EdgeStrategy::MinCutClosestToY) == VertexPair("X", "Y"));

    WorkingState d2{vertex_set({"B", "C"}), {}, pairs({{"X", "Y"}})};
    CHECK(select_edge(d2, "X", "Y", EdgeStrategy::MinCutClosestToY) == VertexPair("C", "Y"));
    CHECK(select_edge(d2, "X", "Y", EdgeStrategy::FirstUncertain) == VertexPair("B", "C"));

    WorkingState s2{vertex_set({"F"}), {}, pairs({{"X", "Y"}})};
    CHECK(select_edge(s2, "X", "Y", EdgeStrategy::MinCutClosestToY) == VertexPair("F", "Y"));

    CHECK(parse_edge_strategy("min-cut") == EdgeStrategy::MinCutClosestToY);
    CHECK(parse_edge_strategy("first") == EdgeStrategy::FirstUncertain);
    CHECK_THROWS_AS(parse_edge_strategy("random"), Error);

    WorkingState done{{}, {}, pairs({{"X", "Y"}})};
    CHECK_THROWS_AS(select_edge(done, "X", "Y", EdgeStrategy::FirstUncertain), PreconditionError);
}

TEST_CASE("primary sets from the graph-backed oracle") {
    Admg shrier = golden("shrier.g");
    GraphOracle o(shrier, "X", "Y");
    CHECK(find_primary(o, "X", "Y", {}, true) ==
          family({{"F"}, {"G", "T"}, {"G", "N"}, {"G", "O"}, {"D", "N"}, {"N", "W"}, {"E", "N"}}));
    CHECK(find_primary(o, "E", "Y", vertex_set({"F"}), true) == family({{}}));

    Admg d = golden("appendixD.g");
    GraphOracle od(d, "X", "Y");
    CHECK(find_primary(od, "C", "X", vertex_set({"B"}), true) == family({{"D"}}));
    CHECK(find_primary(od, "X", "Y", {}, true) == family({{"B", "C"}, {"B", "D"}}));
}

TEST_CASE("primary sets agree with brute-force enumeration") {
    std::mt19937_64 rng(11);
    testing::RandomGraphSpec spec;
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        Admg g = testing::random_admg(rng, spec);
        for (const auto& x : g.vertices())
            for (const auto& y : g.vertices()) {
                if (!(x < y)) continue;
                GraphOracle o(g, x, y);
                VertexSetFamily found = find_primary(o, x, y, {}, true);
                VertexSetFamily brute = enumerate_minimal_primary(g, x, y, {});
                // every set found is primary; every minimal primary set is found
                for (const auto& s : found) CHECK(is_primary(g, x, y, {}, s));
                for (const auto& s : brute) CHECK(found.contains(s));
                ++checked;
            }
    }
    CHECK(checked > 500);
}

TEST_CASE("butterfly expansion") {
    Admg g = golden("butterfly.g");
    GraphOracle o(g, "X", "Y");
    ExpansionResult r = confounder_select(o, "X", "Y");
    CHECK(r.exhausted);
    CHECK(minimal(r.sufficient_sets) == family({{"B", "C"}, {"B", "D"}}));
    CHECK(minimal(r.sufficient_sets) == enumerate_minimal_sufficient(g, "X", "Y"));
    for (const auto& s : r.sufficient_sets) CHECK(is_sufficient(g, "X", "Y", s));
}

TEST_CASE("shrier expansion discovers {E,F} then {T,F}") {
    Admg g = golden("shrier.g");
    GraphOracle o(g, "X", "Y");
    ExpansionResult r = confounder_select(o, "X", "Y");
    const VertexSetFamily seven =
        family({{"E", "F"}, {"T", "F"}, {"O", "G"}, {"O", "F"}, {"D", "N"}, {"N", "W"}, {"G", "T"}});
    CHECK(minimal(r.sufficient_sets) == seven);
    CHECK(enumerate_minimal_sufficient(g, "X", "Y") == seven);
    REQUIRE(r.discovery_order.size() >= 2);
    CHECK(r.discovery_order[0] == vertex_set({"E", "F"}));
    CHECK(r.discovery_order[1] == vertex_set({"T", "F"}));
    // the first three pops follow the worked example: cut 1 each
    auto cuts = popped_cuts(r);
    REQUIRE(cuts.size() >= 3);
    CHECK(cuts[0] == "1");
    CHECK(cuts[1] == "1");
    CHECK(cuts[2] == "1");
}

TEST_CASE("two-latent worked example: sets and per-pop cut sequence") {
    Admg g = golden("appendixD.g");
    GraphOracle o(g, "X", "Y");
    ExpansionResult r = confounder_select(o, "X", "Y");
    CHECK(r.sufficient_sets == family({{"B", "C", "D"}, {"B", "D"}}));
    CHECK(minimal(r.sufficient_sets) == family({{"B", "D"}}));
    CHECK(popped_cuts(r) == std::vector<std::string>{"1", "2", "2", "2", "1", "0", "2", "2", "2", "1",
                                                      "0", "3", "2", "1", "0", "inf", "inf"});
    auto kinds = event_kinds(r);
    CHECK(kinds.front() == "state_pushed");
    CHECK(kinds.back() == "finished");
}

TEST_CASE("emission and discard follow the cut index") {
    Admg g = golden("shrier.g");
    GraphOracle o(g, "X", "Y");
    ExpansionResult r = confounder_select(o, "X", "Y");
    std::size_t emitted = 0;
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto* p = std::get_if<StatePoppedEvent>(&r.trace[i]);
        if (!p) continue;
        bool emits = i + 1 < r.trace.size() && std::holds_alternative<SetEmittedEvent>(r.trace[i + 1]);
        bool selects = i + 1 < r.trace.size() && std::holds_alternative<EdgeSelectedEvent>(r.trace[i + 1]);
        CHECK(emits == (p->mincut == CutIndex(0)));
        if (p->mincut.is_infinite()) CHECK_FALSE(selects);
        emitted += emits;
    }
    CHECK(emitted >= r.sufficient_sets.size());
}

TEST_CASE("push chains grow monotonically") {
    Admg g = golden("appendixD.g");
    GraphOracle o(g, "X", "Y");
    ExpansionResult r = confounder_select(o, "X", "Y");
    std::map<std::size_t, WorkingState> states;
    for (const auto& e : r.trace) {
        const auto* p = std::get_if<StatePushedEvent>(&e);
        if (!p) continue;
        states[p->state_id] = p->state;
        if (!p->parent) continue;
        const WorkingState& parent = states.at(*p->parent);
        CHECK(is_subset(parent.s, p->state.s));
        CHECK(parent.b_yes.size() + parent.b_no.size() < p->state.b_yes.size() + p->state.b_no.size());
    }
}

TEST_CASE("unconfounded pair yields the empty set") {
    SilentOracle o;
    ExpansionResult r = confounder_select(o, "X", "Y");
    CHECK(r.sufficient_sets == family({{}}));
    SilentOracle o2;
    CHECK(confounder_select_recursive(o2, "X", "Y").sufficient_sets == family({{}}));
}

TEST_CASE("caps stop the run and are reported") {
    Admg g = golden("shrier.g");
    GraphOracle o(g, "X", "Y");
    ExpansionConfig cfg;
    cfg.max_states = 5;
    ExpansionResult r = confounder_select(o, "X", "Y", cfg);
    CHECK_FALSE(r.exhausted);
    REQUIRE(!r.trace.empty());
    const auto* fin = std::get_if<FinishedEvent>(&r.trace.back());
    REQUIRE(fin);
    CHECK(fin->status == FinishStatus::CapsHit);

    EndlessOracle endless;
    ExpansionConfig small;
    small.max_vertices = 8;
    ExpansionResult e = confounder_select(endless, "X", "Y", small);
    CHECK_FALSE(e.exhausted);

    EndlessOracle endless2;
    small.max_depth = 3;
    CHECK_FALSE(confounder_select_recursive(endless2, "X", "Y", small).exhausted);
}

TEST_CASE("sink receives the same events as the result") {
    Admg g = golden("butterfly.g");
    GraphOracle o(g, "X", "Y");
    std::vector<TraceEvent> sink;
    ExpansionResult r = confounder_select(o, "X", "Y", {}, &sink);
    CHECK(sink == r.trace);
}

TEST_CASE("queue and recursive variants agree") {
    for (const char* file : {"butterfly.g", "shrier.g", "appendixD.g"}) {
        Admg g = golden(file);
        GraphOracle o1(g, "X", "Y"), o2(g, "X", "Y");
        CHECK(confounder_select(o1, "X", "Y").sufficient_sets ==
              confounder_select_recursive(o2, "X", "Y").sufficient_sets);
    }
    std::mt19937_64 rng(5);
    testing::RandomGraphSpec spec;
    spec.max_latents = 2;
    for (int i = 0; i < 60; ++i) {
        Admg g = testing::random_admg(rng, spec);
        for (const auto& x : g.observed_set())
            for (const auto& y : g.observed_set()) {
                if (!(x < y)) continue;
                GraphOracle o1(g, x, y), o2(g, x, y);
                CHECK(confounder_select(o1, x, y).sufficient_sets ==
                      confounder_select_recursive(o2, x, y).sufficient_sets);
            }
    }
}

TEST_CASE("soundness and completeness on random graphs") {
    std::mt19937_64 rng(2024);
    testing::RandomGraphSpec spec;
    spec.max_latents = 2;
    int runs = 0;
    for (int i = 0; i < 100; ++i) {
        Admg g = testing::random_admg(rng, spec);
        for (const auto& x : g.observed_set())
            for (const auto& y : g.observed_set()) {
                if (!(x < y)) continue;
                GraphOracle o(g, x, y);
                ExpansionResult r = confounder_select(o, x, y);
                CHECK(r.exhausted);
                for (const auto& s : r.sufficient_sets) CHECK(is_sufficient(g, x, y, s));
                for (const auto& s : reference::minimal_sufficient(g, x.name(), y.name()))
                    CHECK(r.sufficient_sets.contains(s));
                ++runs;
            }
    }
    CHECK(runs > 300);
}

TEST_CASE("first-uncertain strategy reaches the same minimal sets") {
    for (const char* file : {"butterfly.g", "shrier.g", "appendixD.g"}) {
        Admg g = golden(file);
        GraphOracle o(g, "X", "Y");
        ExpansionConfig cfg;
        cfg.strategy = EdgeStrategy::FirstUncertain;
        ExpansionResult r = confounder_select(o, "X", "Y", cfg);
        CHECK(minimal(r.sufficient_sets) == enumerate_minimal_sufficient(g, "X", "Y"));
    }
}
