#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "confsel/errors.hpp"
#include "confsel/graph.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"
#include "support/reference.hpp"

using namespace confsel;
using confsel::testing::golden;

namespace {

std::size_t parse_error_line(const std::string& text) {
    try {
        parse_graph(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("vertex names follow the identifier grammar") {
    CHECK(VertexId::is_valid_name("X"));
    CHECK(VertexId::is_valid_name("_L1"));
    CHECK(VertexId::is_valid_name("age_2"));
    CHECK_FALSE(VertexId::is_valid_name(""));
    CHECK_FALSE(VertexId::is_valid_name("2bad"));
    CHECK_FALSE(VertexId::is_valid_name("a-b"));
    CHECK_THROWS_AS(VertexId("2bad"), InvalidName);
}

TEST_CASE("pairs are stored with the smaller name first") {
    VertexPair p("Y", "B");
    CHECK(p.first() == VertexId("B"));
    CHECK(p.second() == VertexId("Y"));
    CHECK(p == VertexPair("B", "Y"));
    CHECK_THROWS_AS(VertexPair("A", "A"), PreconditionError);
}

TEST_CASE("smallest valid graph") {
    Admg g = parse_graph("vertex X\nvertex Y\nX -> Y");
    CHECK(g.size() == 2);
    CHECK(g.directed_edges().size() == 1);
    CHECK(g.has_directed("X", "Y"));
    CHECK_FALSE(g.has_directed("Y", "X"));
    CHECK(g.bidirected_edges().empty());
}

TEST_CASE("butterfly file") {
    Admg g = golden("butterfly.g");
    CHECK(g.size() == 5);
    CHECK(g.directed_edges().size() == 6);
    CHECK(g.bidirected_edges().empty());
    CHECK(g.observed_set() == g.vertex_set());
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(parse_error_line("vertex X\nX -> X") == 2);
    CHECK(parse_error_line("vertex X\nX -> Y") == 2);                        // undeclared
    CHECK(parse_error_line("vertex X\n# c\n\nvertex X") == 4);               // duplicate vertex
    CHECK(parse_error_line("vertex X\nvertex Y\nX -> Y\nX->Y") == 4);        // duplicate edge
    CHECK(parse_error_line("vertex X\nvertex Y\nX <-> Y\nY <-> X") == 4);    // duplicate bidirected
    CHECK(parse_error_line("vertex A\nvertex B\nvertex C\nA -> B\nB -> C\nC -> A") == 6);  // cycle
    CHECK(parse_error_line("vertex 2bad") == 1);
    CHECK(parse_error_line("node X") == 1);
    CHECK(parse_error_line("vertex X\nX <-> X") == 2);
    CHECK_THROWS_WITH_AS(parse_graph("vertex X\nX -> X"), doctest::Contains("self-loop"), ParseError);
    CHECK_THROWS_WITH_AS(parse_graph("vertex A\nvertex B\nA -> B\nB -> A"),
                         doctest::Contains("cycle"), ParseError);
}

TEST_CASE("a pair may carry a directed and a bidirected edge") {
    Admg g = parse_graph("vertex A\nvertex B\nA -> B\nA <-> B\n");
    CHECK(g.has_directed("A", "B"));
    CHECK(g.has_bidirected("B", "A"));
}

TEST_CASE("line order does not matter once declarations precede use") {
    Admg a = parse_graph("vertex A\nvertex B\nvertex C\nA -> B\nC <-> B\nB -> C\n");
    Admg b = parse_graph("latent Z\nvertex C\nvertex B\nvertex A\nB -> C\nB <-> C\nA -> B\n");
    CHECK_FALSE(a == b);  // Z differs
    Admg c = parse_graph("vertex C\nvertex B\nvertex A\nB -> C\nB <-> C\nA -> B\n");
    CHECK(a == c);
}

TEST_CASE("serialization is canonical and round-trips") {
    for (const char* f : {"butterfly.g", "shrier.g", "appendixD.g", "tails.g", "collider_path.g"}) {
        Admg g = golden(f);
        std::string text = serialize_graph(g);
        Admg back = parse_graph(text);
        CHECK(back == g);
        CHECK(serialize_graph(back) == text);
    }
    CHECK(serialize_graph(parse_graph("vertex Y\nlatent U\nvertex X\nU -> Y\nX -> Y\nY <-> X")) ==
          "latent U\nvertex X\nvertex Y\nU -> Y\nX -> Y\nX <-> Y\n");
}

TEST_CASE("ancestors") {
    CHECK(ancestors(golden("butterfly.g"), vertex_set({"X"})) == vertex_set({"B", "C", "D"}));
    CHECK(ancestors(parse_graph("vertex V\nvertex W"), vertex_set({"V"})).empty());
    CHECK(ancestors(golden("shrier.g"), vertex_set({"Y"})) ==
          vertex_set({"X", "I", "N", "C", "W", "D", "E", "F", "G", "O", "T"}));
    CHECK_THROWS_AS(ancestors(golden("butterfly.g"), vertex_set({"Q"})), UnknownVertex);
    // a vertex is its own ancestor only through another member of the set
    Admg chain = parse_graph("vertex A\nvertex B\nA -> B");
    CHECK(ancestors(chain, vertex_set({"A", "B"})) == vertex_set({"A"}));
}

TEST_CASE("descendants") {
    CHECK(descendants(golden("butterfly.g"), vertex_set({"B"})) == vertex_set({"X", "Y"}));
    CHECK(descendants(golden("butterfly.g"), {}).empty());
    CHECK(descendants(golden("appendixD.g"), vertex_set({"C"})) == vertex_set({"B", "D", "X", "Y"}));
}

TEST_CASE("districts") {
    Admg g = parse_graph("vertex A\nvertex B\nvertex C\nvertex D\nA <-> B\nB <-> C\n");
    auto d = districts(g);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == vertex_set({"A", "B", "C"}));
    CHECK(d[1] == vertex_set({"D"}));
    CHECK(districts(golden("shrier.g")).size() == 13);
    Admg m = marginalize(golden("appendixD.g"), vertex_set({"X", "Y", "B", "C"}));
    CHECK(m.has_bidirected("C", "Y"));
    for (const auto& block : districts(m))
        if (block.count(VertexId("C"))) CHECK(block.count(VertexId("Y")));
}

TEST_CASE("marginalization reproduces the three-step example") {
    Admg g = golden("tails.g");
    CHECK(marginalize(g, g.vertex_set()) == g);
    Admg g1 = marginalize(g, vertex_set({"A", "B", "C", "D", "F"}));
    CHECK(g1 == golden("tails_margin1.g"));
    Admg g2 = marginalize(g1, vertex_set({"A", "B", "C", "D"}));
    CHECK(g2 == golden("tails_margin2.g"));
    CHECK(marginalize(golden("collider_path.g"), vertex_set({"A", "B", "C", "D"})) == golden("collider_path_margin.g"));
    CHECK_THROWS_AS(marginalize(g, vertex_set({"A", "Q"})), UnknownVertex);
}

TEST_CASE("marginal edges inherit observed flags") {
    Admg g = golden("appendixD.g");
    Admg m = marginalize(g, vertex_set({"U1", "X", "Y"}));
    CHECK_FALSE(m.is_observed("U1"));
    CHECK(m.is_observed("X"));
}

TEST_CASE("marginalization agrees with path-enumeration projection on random graphs") {
    std::mt19937_64 rng(20240611);
    confsel::testing::RandomGraphSpec spec;
    spec.max_vertices = 8;
    for (int trial = 0; trial < 200; ++trial) {
        Admg g = confsel::testing::random_admg(rng, spec);
        std::vector<VertexId> vs = g.vertices();
        std::shuffle(vs.begin(), vs.end(), rng);
        std::uniform_int_distribution<std::size_t> k1(0, vs.size()), k2(0, vs.size());
        std::size_t n1 = k1(rng), n2 = std::min(n1, k2(rng));
        VertexSet v1(vs.begin(), vs.begin() + static_cast<long>(n1));
        VertexSet v2(vs.begin(), vs.begin() + static_cast<long>(n2));
        Admg m1 = marginalize(g, v1);
        CAPTURE(serialize_graph(g));
        CAPTURE(to_string(v1));
        CHECK(reference::edges_of(m1) == reference::marginal_edges(g, v1));
        // composition
        CHECK(marginalize(m1, v2) == marginalize(g, v2));
        // trivial edge preservation
        for (const auto& e : g.directed_edges())
            if (v1.count(e.tail) && v1.count(e.head)) CHECK(m1.has_directed(e.tail, e.head));
        for (const auto& p : g.bidirected_edges())
            if (v1.count(p.first()) && v1.count(p.second())) CHECK(m1.has_bidirected(p.first(), p.second()));
        // districts partition the vertices and contain every bidirected edge
        auto ds = districts(m1);
        std::size_t total = 0;
        for (const auto& d : ds) total += d.size();
        CHECK(total == m1.size());
        for (const auto& p : m1.bidirected_edges()) {
            bool same = false;
            for (const auto& d : ds) same = same || (d.count(p.first()) && d.count(p.second()));
            CHECK(same);
        }
        // parse ∘ serialize round-trip, which also re-checks acyclicity
        CHECK(parse_graph(serialize_graph(m1)) == m1);
    }
}
