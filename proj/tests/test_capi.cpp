#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>

#include "zsram/zsram.h"

using nlohmann::json;

TEST_CASE("graph handles") {
    zs_graph* g = nullptr;
    REQUIRE(zs_graph_named("cycle", 4, &g) == ZS_OK);
    CHECK(zs_graph_vertices(g) == 4);
    CHECK(zs_graph_edge_count(g) == 4);
    CHECK(zs_graph_max_degree(g) == 2);
    char* js = nullptr;
    REQUIRE(zs_graph_to_json(g, &js) == ZS_OK);
    zs_graph* back = nullptr;
    REQUIRE(zs_graph_parse(js, &back) == ZS_OK);
    CHECK(zs_graph_vertices(back) == 4);
    zs_string_free(js);
    zs_graph_free(back);
    zs_graph_free(g);

    zs_graph* bad = nullptr;
    CHECK(zs_graph_named("widget", 4, &bad) == ZS_ERR_VALIDATION);
    CHECK(std::string(zs_last_error()).find("widget") != std::string::npos);

    zs_graph* txt = nullptr;
    REQUIRE(zs_graph_parse("0 1\n1 2\n", &txt) == ZS_OK);
    CHECK(zs_graph_vertices(txt) == 3);
    zs_graph_free(txt);
}

TEST_CASE("colouring handles") {
    zs_colouring* c = nullptr;
    REQUIRE(zs_colouring_random("Z2xZ2", 6, 11, &c) == ZS_OK);
    CHECK(zs_colouring_pool_size(c) == 6);
    char* js = nullptr;
    REQUIRE(zs_colouring_to_json(c, &js) == ZS_OK);
    zs_colouring* back = nullptr;
    REQUIRE(zs_colouring_parse(js, &back) == ZS_OK);
    char* js2 = nullptr;
    REQUIRE(zs_colouring_to_json(back, &js2) == ZS_OK);
    CHECK(json::parse(js) == json::parse(js2));
    zs_string_free(js);
    zs_string_free(js2);
    zs_colouring_free(back);
    zs_colouring_free(c);

    zs_colouring* konst = nullptr;
    REQUIRE(zs_colouring_constant("Z3", 5, "(2)", &konst) == ZS_OK);
    zs_colouring_free(konst);
    CHECK(zs_colouring_constant("Z3", 5, "(7)", &konst) == ZS_ERR_VALIDATION);
}

TEST_CASE("ramsey through the C surface") {
    zs_graph* c4 = nullptr;
    REQUIRE(zs_graph_named("cycle", 4, &c4) == ZS_OK);
    zs_ramsey_result r{};
    REQUIRE(zs_ramsey(c4, "Z2", 6, 0, 0, 1, &r) == ZS_OK);
    CHECK(r.found == 1);
    CHECK(r.value == 4);
    CHECK(zs_ramsey(c4, "Z3", 6, 0, 0, 1, &r) == ZS_ERR_VALIDATION);
    zs_graph_free(c4);

    zs_graph* m2 = nullptr;
    REQUIRE(zs_graph_named("matching", 2, &m2) == ZS_OK);
    REQUIRE(zs_ramsey(m2, "Z2", 6, 0, 0, 2, &r) == ZS_OK);
    CHECK(r.value == 5);
    zs_graph_free(m2);
}

TEST_CASE("witness and copy search via C surface") {
    zs_graph* m2 = nullptr;
    REQUIRE(zs_graph_named("matching", 2, &m2) == ZS_OK);
    zs_colouring* witness = nullptr;
    REQUIRE(zs_lower_bound_witness(m2, "Z2", 4, &witness) == ZS_OK);
    REQUIRE(witness != nullptr);
    char* inj = nullptr;
    REQUIRE(zs_find_zero_sum_copy(m2, witness, &inj) == ZS_OK);
    CHECK(inj == nullptr);  // no zero-sum copy exists in a witness colouring
    zs_colouring_free(witness);
    zs_graph_free(m2);
}

TEST_CASE("embed through the C surface") {
    zs_graph* c4 = nullptr;
    REQUIRE(zs_graph_named("cycle", 4, &c4) == ZS_OK);
    zs_colouring* col = nullptr;
    REQUIRE(zs_colouring_planted(c4, "Z2", 16, 2, &col) == ZS_OK);
    zs_embed_options opt{};
    opt.alpha = 1;
    opt.beta = 2;
    char* out = nullptr;
    REQUIRE(zs_embed(c4, col, &opt, &out) == ZS_OK);
    json j = json::parse(out);
    CHECK(j["status"] == "success");
    CHECK(j["certificate"] == "(0)");
    CHECK(j["scaled"] == true);
    CHECK(j["injection"].size() == 4);
    zs_string_free(out);
    zs_colouring_free(col);
    zs_graph_free(c4);
}

TEST_CASE("check suites through the C surface") {
    char* names = nullptr;
    REQUIRE(zs_check_suite_names(&names) == ZS_OK);
    json list = json::parse(names);
    CHECK(list.size() == 8);
    zs_string_free(names);

    zs_check_options opt{};
    opt.max_order = 4;
    char* out = nullptr;
    REQUIRE(zs_check("kneser", &opt, &out) == ZS_OK);
    json j = json::parse(out);
    CHECK(j["pass"] == true);
    zs_string_free(out);
    CHECK(zs_check("no-such-suite", nullptr, &out) == ZS_ERR_VALIDATION);
}
