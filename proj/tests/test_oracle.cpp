#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zsram/io.hpp"
#include "zsram/oracle.hpp"

using namespace zsram;

namespace {

GroupElement el(std::vector<int> r) { return GroupElement{std::move(r)}; }

GroupElement copy_sum(const Graph& g, const EdgeColouring& c, const std::map<int, int>& f) {
    GroupElement acc = c.group().zero();
    for (const auto& [x, y] : g.edges()) acc = c.group().add(acc, c.value(f.at(x), f.at(y)));
    return acc;
}

}  // namespace

TEST_CASE("find_zero_sum_copy basics") {
    AbelianGroup z2({2});
    Graph c4 = make_cycle(4);

    EdgeColouring zeros = EdgeColouring::constant(VertexPool::range(5), z2, el({0}));
    auto r = find_zero_sum_copy(c4, zeros);
    REQUIRE(r.injection.has_value());
    CHECK(copy_sum(c4, zeros, *r.injection) == el({0}));

    EdgeColouring ones = EdgeColouring::constant(VertexPool::range(4), z2, el({1}));
    auto r2 = find_zero_sum_copy(c4, ones);  // 4 * 1 = 0 in Z2
    REQUIRE(r2.injection.has_value());
    CHECK(copy_sum(c4, ones, *r2.injection) == el({0}));

    // Pool smaller than the graph: no copy.
    EdgeColouring small = EdgeColouring::constant(VertexPool::range(3), z2, el({0}));
    CHECK_FALSE(find_zero_sum_copy(c4, small).injection.has_value());

    // Determinism.
    auto r3 = find_zero_sum_copy(c4, ones);
    CHECK(*r3.injection == *r2.injection);
}

TEST_CASE("all colorings of K4 give a zero-sum C4") {
    auto res = all_colorings_have_zero_sum(make_cycle(4), AbelianGroup({2}), 4);
    CHECK(res.verdict == Verdict::all_zero_sum);
    CHECK(res.colorings_examined == 64);
}

TEST_CASE("2K2 over Z2 fails at t=4 with a verified witness") {
    Graph m2 = make_matching(2);
    AbelianGroup z2({2});
    auto res = all_colorings_have_zero_sum(m2, z2, 4);
    REQUIRE(res.verdict == Verdict::counterexample);
    REQUIRE(res.witness.has_value());
    // The witness really admits no zero-sum copy.
    auto check = find_zero_sum_copy(m2, *res.witness);
    CHECK_FALSE(check.injection.has_value());
    CHECK_FALSE(check.truncated);
}

TEST_CASE("t below v(G) is an immediate counterexample") {
    auto res = all_colorings_have_zero_sum(make_cycle(4), AbelianGroup({2}), 3);
    CHECK(res.verdict == Verdict::counterexample);
}

TEST_CASE("ramsey numbers from the paper") {
    SUBCASE("R(C4, Z2) = 4") {
        auto r = ramsey_number(make_cycle(4), AbelianGroup({2}), 6);
        REQUIRE(r.value.has_value());
        CHECK(*r.value == 4);
    }
    SUBCASE("R(2K2, Z2) = 5") {
        auto r = ramsey_number(make_matching(2), AbelianGroup({2}), 6);
        REQUIRE(r.value.has_value());
        CHECK(*r.value == 5);
    }
    SUBCASE("single edge over the trivial group") {
        auto r = ramsey_number(Graph(2, {{0, 1}}), AbelianGroup(), 4);
        REQUIRE(r.value.has_value());
        CHECK(*r.value == 2);
    }
    SUBCASE("divisibility is required") {
        CHECK_THROWS_AS(ramsey_number(make_cycle(4), AbelianGroup({3}), 6), Error);
    }
}

TEST_CASE("monotonicity in t for fixed G") {
    // All-colourings truth extends upward: every K_t colouring shows up as a
    // restriction of a K_{t+1} colouring.
    Graph c4 = make_cycle(4);
    AbelianGroup z2({2});
    auto at4 = all_colorings_have_zero_sum(c4, z2, 4);
    auto at5 = all_colorings_have_zero_sum(c4, z2, 5);
    REQUIRE(at4.verdict == Verdict::all_zero_sum);
    CHECK(at5.verdict == Verdict::all_zero_sum);
}

TEST_CASE("lower bound witnesses") {
    Graph m2 = make_matching(2);
    AbelianGroup z2({2});
    auto w = lower_bound_witness(m2, z2, 4);
    REQUIRE(w.witness.has_value());
    CHECK_FALSE(find_zero_sum_copy(m2, *w.witness).injection.has_value());

    auto none = lower_bound_witness(make_cycle(4), z2, 4);
    CHECK_FALSE(none.witness.has_value());

    // |Gamma| does not divide e(G): the constant non-zero colouring wins at
    // any t with a fitting copy.
    Graph c4 = make_cycle(4);
    AbelianGroup z3({3});
    for (int t = 4; t <= 6; ++t) {
        auto w2 = lower_bound_witness(c4, z3, t);
        REQUIRE(w2.witness.has_value());
        GroupElement v = w2.witness->value(0, 1);
        CHECK_FALSE(v == z3.zero());
        for (int x = 0; x < t; ++x)
            for (int y = x + 1; y < t; ++y) CHECK(w2.witness->value(x, y) == v);
    }
}

TEST_CASE("symmetry pruning agrees with plain enumeration") {
    struct Instance {
        Graph g;
        AbelianGroup gamma;
        int t;
    };
    std::vector<Instance> instances;
    instances.push_back({make_matching(2), AbelianGroup({2}), 4});
    instances.push_back({make_matching(2), AbelianGroup({2}), 5});
    instances.push_back({make_cycle(4), AbelianGroup({2}), 4});
    instances.push_back({make_complete(3), AbelianGroup({3}), 4});
    instances.push_back({Graph(3, {{0, 1}, {1, 2}}), AbelianGroup({2}), 4});
    for (const auto& inst : instances) {
        SearchBudget plain, pruned;
        pruned.symmetry_pruning = true;
        auto a = all_colorings_have_zero_sum(inst.g, inst.gamma, inst.t, plain);
        auto b = all_colorings_have_zero_sum(inst.g, inst.gamma, inst.t, pruned);
        CHECK(a.verdict == b.verdict);
        CHECK(b.colorings_examined <= a.colorings_examined);
        if (b.witness) CHECK_FALSE(find_zero_sum_copy(inst.g, *b.witness).injection.has_value());
    }
}

TEST_CASE("thread count does not change the answer") {
    Graph m2 = make_matching(2);
    AbelianGroup z2({2});
    auto one = all_colorings_have_zero_sum(m2, z2, 4, {}, 1);
    auto four = all_colorings_have_zero_sum(m2, z2, 4, {}, 4);
    REQUIRE(one.verdict == four.verdict);
    REQUIRE(one.witness.has_value());
    REQUIRE(four.witness.has_value());
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) CHECK(one.witness->value(x, y) == four.witness->value(x, y));

    auto r1 = ramsey_number(make_cycle(4), z2, 5, {}, 1);
    auto r4 = ramsey_number(make_cycle(4), z2, 5, {}, 4);
    CHECK(r1.value == r4.value);
}

TEST_CASE("zero-sum numbers stay below the multicolour Ramsey bound") {
    // R(G, Gamma) <= R_r(G) with r = |Gamma|, checked exhaustively on tiny
    // cases via an independent classical-Ramsey evaluator.
    auto has_mono_copy = [](const Graph& g, int t, const std::vector<int>& colour_of_edge,
                            const std::vector<std::pair<int, int>>& edges) {
        std::map<std::pair<int, int>, int> colour;
        for (size_t e = 0; e < edges.size(); ++e) colour[edges[e]] = colour_of_edge[e];
        std::vector<int> f(static_cast<size_t>(g.vertex_count()), -1);
        std::vector<char> used(static_cast<size_t>(t), 0);
        std::function<bool(int, int)> rec = [&](int v, int want) {
            if (v == g.vertex_count()) return true;
            for (int p = 0; p < t; ++p) {
                if (used[static_cast<size_t>(p)]) continue;
                bool ok = true;
                for (int u : g.neighbors(v)) {
                    if (u >= v) continue;
                    int q = f[static_cast<size_t>(u)];
                    auto key = std::minmax(p, q);
                    if (colour.at({key.first, key.second}) != want) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                used[static_cast<size_t>(p)] = 1;
                f[static_cast<size_t>(v)] = p;
                if (rec(v + 1, want)) return true;
                used[static_cast<size_t>(p)] = 0;
                f[static_cast<size_t>(v)] = -1;
            }
            return false;
        };
        for (int want = 0; want < 2; ++want) {
            std::fill(f.begin(), f.end(), -1);
            std::fill(used.begin(), used.end(), 0);
            if (rec(0, want)) return true;
        }
        return false;
    };
    auto classical_r2 = [&](const Graph& g, int t_max) {
        for (int t = g.vertex_count(); t <= t_max; ++t) {
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < t; ++i)
                for (int j = i + 1; j < t; ++j) edges.push_back({i, j});
            bool all = true;
            std::vector<int> digits(edges.size(), 0);
            while (all) {
                if (!has_mono_copy(g, t, digits, edges)) {
                    all = false;
                    break;
                }
                size_t pos = digits.size();
                bool done = true;
                while (pos-- > 0) {
                    if (++digits[pos] < 2) {
                        done = false;
                        break;
                    }
                    digits[pos] = 0;
                }
                if (done) break;
            }
            if (all) return t;
        }
        return -1;
    };

    AbelianGroup z2({2});
    Graph m2 = make_matching(2);
    int classical = classical_r2(m2, 6);  // R_2(2K2)
    REQUIRE(classical > 0);
    auto zero_sum = ramsey_number(m2, z2, 6);
    REQUIRE(zero_sum.value.has_value());
    CHECK(*zero_sum.value <= classical);

    Graph p3(3, {{0, 1}, {1, 2}});
    int classical_p3 = classical_r2(p3, 6);
    REQUIRE(classical_p3 > 0);
    auto zs_p3 = ramsey_number(p3, z2, 6);
    REQUIRE(zs_p3.value.has_value());
    CHECK(*zs_p3.value <= classical_p3);
}

TEST_CASE("budgets produce explicit truncation") {
    Graph m2 = make_matching(2);
    AbelianGroup z2({2});
    SearchBudget tight;
    tight.max_colorings = 3;
    auto res = all_colorings_have_zero_sum(make_cycle(4), z2, 4, tight);
    CHECK(res.verdict == Verdict::truncated);
}
