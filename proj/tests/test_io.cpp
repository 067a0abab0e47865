#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zsram/io.hpp"

using namespace zsram;

TEST_CASE("group literals") {
    CHECK(parse_group("Z2xZ4").moduli() == std::vector<int>{2, 4});
    CHECK(parse_group("Z6").moduli() == std::vector<int>{6});
    CHECK(parse_group("Z1").rank() == 0);
    CHECK(format_group(AbelianGroup({2, 4})) == "Z2xZ4");
    CHECK(format_group(AbelianGroup()) == "Z1");
    CHECK_THROWS_AS(parse_group("2x4"), Error);
    CHECK_THROWS_AS(parse_group("ZxZ2"), Error);
    for (const char* lit : {"Z2", "Z2xZ4", "Z12", "Z1", "Z2xZ2xZ2"})
        CHECK(format_group(parse_group(lit)) == lit);
}

TEST_CASE("element literals") {
    AbelianGroup g({2, 4});
    CHECK(parse_element(g, "(1,3)") == GroupElement{{1, 3}});
    CHECK(format_element(GroupElement{{1, 3}}) == "(1,3)");
    CHECK(parse_element(AbelianGroup(), "()") == GroupElement{});
    CHECK_THROWS_AS(parse_element(g, "(9,0)"), Error);
    CHECK_THROWS_AS(parse_element(g, "(1)"), Error);
}

TEST_CASE("graph json round trip") {
    Graph g = make_cycle(5);
    Graph back = graph_from_json(graph_to_json(g));
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());

    Graph txt = graph_from_text("0 1\n1 2\n# comment\n2 0\n");
    CHECK(txt.vertex_count() == 3);
    CHECK(txt.edge_count() == 3);
    CHECK_THROWS_AS(graph_from_json("{\"vertices\": 2}"), Error);
}

TEST_CASE("colouring json round trip") {
    AbelianGroup g({2, 4});
    EdgeColouring c = random_colouring(g, 7, 13);
    EdgeColouring back = colouring_from_json(colouring_to_json(c));
    for (int x = 0; x < 7; ++x)
        for (int y = x + 1; y < 7; ++y) CHECK(back.value(x, y) == c.value(x, y));

    EdgeColouring konst =
        colouring_from_json("{\"group\":\"Z2\",\"t\":4,\"all\":\"(1)\"}");
    CHECK(konst.value(0, 3) == GroupElement{{1}});
    CHECK_THROWS_AS(colouring_from_json("{\"group\":\"Z2\",\"t\":3,\"edges\":{\"0,1\":\"(0)\"}}"),
                    Error);
}

TEST_CASE("named graphs") {
    CHECK(make_cycle(4).edge_count() == 4);
    CHECK(make_complete(5).edge_count() == 10);
    CHECK(make_matching(3).edge_count() == 3);
    CHECK(make_matching(3).vertex_count() == 6);
    CHECK(make_star(4).max_degree() == 4);
}

TEST_CASE("random regular graphs are regular and seeded") {
    Graph g = random_regular(3, 50, 7);
    CHECK(g.vertex_count() == 50);
    CHECK(g.edge_count() == 75);
    for (int v = 0; v < 50; ++v) CHECK(g.degree(v) == 3);
    Graph again = random_regular(3, 50, 7);
    CHECK(again.edges() == g.edges());
    Graph other = random_regular(3, 50, 8);
    CHECK(other.edges() != g.edges());
    CHECK_THROWS_AS(random_regular(3, 5, 1), Error);  // odd degree sum
}

TEST_CASE("planted colourings contain a zero-sum copy by construction") {
    Graph g = make_cycle(4);
    AbelianGroup z4({4});
    for (unsigned long long seed = 0; seed < 10; ++seed) {
        EdgeColouring c = planted_colouring(g, z4, 12, seed);
        // Recover it: some injection must sum to zero; we only verify the
        // planted one exists by exhaustive search in the engine tests, here
        // just determinism and pool shape.
        EdgeColouring again = planted_colouring(g, z4, 12, seed);
        CHECK(c.value(0, 1) == again.value(0, 1));
        CHECK(c.pool().size() == 12);
    }
}
