#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "confsel/adjustment.hpp"
#include "confsel/errors.hpp"
#include "confsel/expansion.hpp"
#include "confsel/oracle.hpp"
#include "confsel/separation.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace confsel;
using confsel::testing::golden;

TEST_CASE("common causes on the two-latent example") {
    Admg g = golden("appendixD.g");
    GraphOracle o(g);
    CHECK(o.common_cause("X", "Y", {}) == VertexId("B"));
    CHECK(o.common_cause("X", "Y", vertex_set({"B"})) == VertexId("C"));
    // D reaches Y only through B, and U1 reaches Y only through C or B
    CHECK_FALSE(o.common_cause("X", "Y", vertex_set({"B", "C"})).has_value());
    CHECK_FALSE(o.common_cause("X", "Y", vertex_set({"B", "C", "D"})).has_value());
    // agrees with the set-valued definition
    for (const auto& t : testing::all_subsets(vertex_set({"B", "C", "D"}))) {
        VertexSet all = common_causes(o.witness_graph(), "X", "Y", t);
        auto c = o.common_cause("X", "Y", t);
        CHECK(c.has_value() == !all.empty());
        if (c) CHECK(*c == *all.begin());
    }
}

TEST_CASE("no common cause across disconnected components") {
    Admg g = parse_graph("vertex A\nvertex B\nvertex C\nvertex D\nC -> A\nD -> B\n");
    GraphOracle o(g);
    CHECK_FALSE(o.common_cause("A", "B", {}).has_value());
}

TEST_CASE("observed status") {
    Admg d = golden("appendixD.g");
    GraphOracle o(d);
    CHECK_FALSE(o.is_observed("U1"));
    CHECK_FALSE(o.is_observed("U2"));
    CHECK(o.is_observed("C"));
    Admg s = golden("shrier.g");
    GraphOracle os(s);
    for (const auto& v : s.vertices()) CHECK(os.is_observed(v));
    CHECK_THROWS_AS(o.is_observed("Q"), UnknownVertex);
}

TEST_CASE("mediator sets") {
    Admg d = golden("appendixD.g");
    GraphOracle targeted(d, "X", "Y");
    // U2 -> Y is direct; towards X, either C or D intercepts U2 -> C -> D -> X
    // once B is given.
    CHECK(targeted.find_mediator("X", "Y", "U2", vertex_set({"B"})) ==
          VertexSetFamily{vertex_set({"C"}), vertex_set({"D"})});

    Admg chain = parse_graph(
        "vertex A\nvertex B\nvertex P\nvertex Q\nlatent L\nL -> P\nP -> A\nL -> Q\nQ -> B\n");
    GraphOracle oc(chain);
    CHECK(oc.find_mediator("A", "B", "L", {}) == VertexSetFamily{vertex_set({"P"}), vertex_set({"Q"})});

    Admg direct = parse_graph("vertex A\nvertex B\nlatent L\nL -> A\nL -> B\n");
    GraphOracle od(direct);
    CHECK(od.find_mediator("A", "B", "L", {}).empty());
}

TEST_CASE("bidirected edges surface as unblockable latent causes") {
    Admg g = parse_graph("vertex X\nvertex Y\nvertex Z\nX <-> Y\nZ -> X\nZ -> Y\n");
    GraphOracle o(g, "X", "Y");
    auto c = o.common_cause("X", "Y", vertex_set({"Z"}));
    REQUIRE(c.has_value());
    CHECK_FALSE(o.is_observed(*c));
    CHECK(o.find_mediator("X", "Y", *c, vertex_set({"Z"})).empty());
    // no adjustment set exists, and the expansion finds none
    CHECK(enumerate_minimal_sufficient(g, "X", "Y").empty());
    CHECK(confounder_select(o, "X", "Y").sufficient_sets.empty());
}

TEST_CASE("graph-backed oracle is a pure function of its input") {
    std::mt19937_64 rng(3);
    testing::RandomGraphSpec spec;
    spec.max_latents = 2;
    for (int i = 0; i < 30; ++i) {
        Admg g = testing::random_admg(rng, spec);
        GraphOracle o1(g), o2(g);
        for (const auto& a : g.vertices())
            for (const auto& b : g.vertices()) {
                if (!(a < b)) continue;
                OracleQuery q = CommonCauseQuery{a, b, {}};
                CHECK(o1.ask(q) == o1.ask(q));
                CHECK(o1.ask(q) == o2.ask(q));
            }
    }
}

TEST_CASE("query and answer rendering") {
    OracleQuery q = CommonCauseQuery{"X", "Y", vertex_set({"B"})};
    CHECK(to_string(q) == "CommonCause(X, Y; {B})");
    CHECK(to_string(OracleAnswer{CommonCauseAnswer{}}) == "none");
    CHECK(answers_query(q, CommonCauseAnswer{VertexId("C")}));
    CHECK_FALSE(answers_query(q, IsObservedAnswer{true}));
    CHECK(mentioned_vertices(q) == vertex_set({"B", "X", "Y"}));
}

TEST_CASE("replay oracle") {
    ReplayOracle empty({});
    CHECK_THROWS_AS(empty.common_cause("X", "Y", {}), ReplayDivergence);

    std::vector<AnswerEntry> entries{
        {CommonCauseQuery{"X", "Y", {}}, CommonCauseAnswer{VertexId("B")}},
        {IsObservedQuery{"B"}, IsObservedAnswer{true}},
        {IsObservedQuery{"Q"}, IsObservedAnswer{false}},
    };
    ReplayOracle r(entries);
    // lookup is by content, not by position
    CHECK(r.is_observed("B"));
    CHECK(r.common_cause("X", "Y", {}) == VertexId("B"));
    CHECK(r.unused_entries() == 1);
    try {
        r.common_cause("X", "Y", vertex_set({"B"}));
        FAIL("expected divergence");
    } catch (const ReplayDivergence& e) {
        CHECK(std::string(e.what()).find("CommonCause(X, Y; {B})") != std::string::npos);
    }

    AnswerBook book;
    book.add(IsObservedQuery{"B"}, IsObservedAnswer{true});
    book.add(IsObservedQuery{"B"}, IsObservedAnswer{true});
    CHECK_THROWS_AS(book.add(IsObservedQuery{"B"}, IsObservedAnswer{false}), ReplayDivergence);
}

TEST_CASE("expansion rejects answers that do not fit the question") {
    class Liar : public Oracle {
    public:
        std::optional<VertexId> common_cause(const VertexId& a, const VertexId&, const VertexSet&) override {
            return a;  // a vertex cannot be its own common cause with another
        }
        bool is_observed(const VertexId&) override { return true; }
        VertexSetFamily find_mediator(const VertexId&, const VertexId&, const VertexId&,
                                      const VertexSet&) override {
            return {};
        }
    } liar;
    CHECK_THROWS_AS(confounder_select(liar, "X", "Y"), InvalidAnswer);
}
