#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "zsram/colouring.hpp"

using namespace zsram;

namespace {

GroupElement el(std::vector<int> r) { return GroupElement{std::move(r)}; }

EdgeColouring random_colouring(const VertexPool& pool, const AbelianGroup& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    return EdgeColouring::from_function(pool, g, [&](int, int) {
        return g.element_at(static_cast<long long>(rng() % static_cast<unsigned long long>(g.order())));
    });
}

// Independent Eq-(colourful) evaluation via star_sum, shared with no search code.
GroupElement colourful_value(const EdgeColouring& c, const VertexColouring& vc, const Gadget& g,
                             int v1, int v2) {
    std::vector<int> d1p = g.d1_set, d2p = g.d2_set;
    d1p.insert(d1p.end(), g.m_set.begin(), g.m_set.end());
    d2p.insert(d2p.end(), g.m_set.begin(), g.m_set.end());
    const AbelianGroup& grp = c.group();
    GroupElement acc = star_sum(c, d1p, v1, v2, d2p);
    acc = grp.add(acc, grp.scalar_mul(g.d1, vc.value(v1)));
    if (!g.simple) acc = grp.add(acc, grp.scalar_mul(g.d2, vc.value(v2)));
    return c.reduce(acc);
}

// Def-style re-verification: disjoint parts, bundle colours, value count.
void verify_gadget(const EdgeColouring& c, const VertexColouring& vc, const Gadget& g) {
    std::set<int> seen;
    auto distinct = [&](const std::vector<int>& vs) {
        for (int v : vs) REQUIRE(seen.insert(v).second);
    };
    distinct(g.d1_set);
    distinct(g.d2_set);
    distinct(g.m_set);
    distinct(g.x1);
    distinct(g.x2);
    for (const auto& [anchor, pv] : g.bundles) {
        distinct(pv);
        for (int w : pv) CHECK(vc.value(w) == vc.value(anchor));
    }
    std::set<GroupElement> vals;
    for (int v1 : g.x1)
        for (int v2 : g.x2) {
            if (g.simple) {
                // Star form: values vary over X1 against the star set.
                std::vector<int> star = g.d1_set;
                star.push_back(g.x2[0]);
                GroupElement acc = star_sum(c, {}, star[0], v1, {});
                acc = c.group().zero();
                for (int u : star) acc = c.group().add(acc, c.value(u, v1));
                acc = c.group().add(acc, c.group().scalar_mul(g.d1, vc.value(v1)));
                vals.insert(c.reduce(acc));
            } else {
                vals.insert(colourful_value(c, vc, g, v1, v2));
            }
        }
    CHECK(static_cast<int>(vals.size()) >= g.lambda);
}

}  // namespace

TEST_CASE("vertex pools") {
    VertexPool p = VertexPool::range(5);
    CHECK(p.size() == 5);
    CHECK(p.contains(4));
    CHECK_FALSE(p.contains(5));
    CHECK(p.index_of(3) == 3);
    VertexPool q({7, 3, 9});
    CHECK(q.ids() == std::vector<int>{3, 7, 9});
    CHECK(q.index_of(9) == 2);
    CHECK_THROWS_AS(VertexPool({1, 1}), Error);
    CHECK_THROWS_AS(q.index_of(4), Error);
}

TEST_CASE("star sums") {
    AbelianGroup z3({3});
    VertexPool pool = VertexPool::range(4);
    EdgeColouring ones = EdgeColouring::constant(pool, z3, el({1}));
    CHECK(star_sum(ones, {}, 1, 0, {}) == el({1}));
    CHECK(star_sum(ones, {2}, 1, 0, {3}) == el({0}));  // three unit edges

    EdgeColouring zeros = EdgeColouring::constant(pool, z3, el({0}));
    CHECK(star_sum(zeros, {2, 3}, 0, 1, {2}) == el({0}));
    CHECK_THROWS_AS(star_sum(ones, {}, 0, 0, {}), Error);
}

TEST_CASE("shift colouring") {
    AbelianGroup z4({4});
    VertexPool pool = VertexPool::range(3);
    EdgeColouring c0 = EdgeColouring::constant(pool, z4, el({3}));

    VertexColouring zero_vc = VertexColouring::constant(pool, z4, el({0}));
    EdgeColouring same = shift_colouring(c0, el({0}), zero_vc);
    CHECK(same.value(0, 1) == el({3}));

    EdgeColouring zeroed = shift_colouring(c0, el({3}), zero_vc);
    CHECK(zeroed.value(0, 2) == el({0}));

    VertexColouring vc = VertexColouring::from_function(
        pool, z4, [&](int v) { return v == 0 ? el({1}) : el({2}); });
    EdgeColouring shifted = shift_colouring(c0, el({1}), vc);
    CHECK(shifted.value(0, 1) == el({3}));  // 3 - 1 - 1 - 2 mod 4
}

TEST_CASE("shift round-trip is exact on pools up to 12") {
    AbelianGroup g({2, 4});
    VertexPool pool = VertexPool::range(12);
    EdgeColouring c0 = random_colouring(pool, g, 99);
    std::mt19937_64 rng(5);
    VertexColouring vc = VertexColouring::from_function(
        pool, g, [&](int) { return g.element_at(static_cast<long long>(rng() % 8)); });
    GroupElement s = el({1, 3});
    EdgeColouring c1 = shift_colouring(c0, s, vc);
    for (int x = 0; x < 12; ++x)
        for (int y = x + 1; y < 12; ++y) {
            GroupElement back = g.add(g.add(g.add(c1.value(x, y), s), vc.value(x)), vc.value(y));
            CHECK(back == c0.value(x, y));
        }
}

TEST_CASE("quotient colouring") {
    AbelianGroup z4({4});
    VertexPool pool = VertexPool::range(4);
    EdgeColouring c = EdgeColouring::from_function(
        pool, z4, [&](int x, int y) { return z4.element_at((x + y) % 4); });

    EdgeColouring same = quotient_colouring(c, Subgroup::trivial(z4));
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) CHECK(same.value(x, y) == c.value(x, y));

    EdgeColouring trivial = quotient_colouring(c, Subgroup::whole(z4));
    CHECK(trivial.value(1, 2) == el({0}));

    Subgroup h = generated_subgroup(z4, {el({2})});
    EdgeColouring q = quotient_colouring(c, h);
    CHECK(q.value(0, 1) == el({1}));  // 1 and 3 share the class of 1
    CHECK(q.value(0, 3) == el({1}));
    CHECK(q.value(1, 3) == el({0}));  // 0 and 2 share the class of 0
}

TEST_CASE("iterated quotients equal the psi quotient") {
    AbelianGroup g({2, 4});
    VertexPool pool = VertexPool::range(8);
    EdgeColouring c = random_colouring(pool, g, 123);

    Subgroup hp = generated_subgroup(g, {el({0, 2})});
    EdgeColouring once = quotient_colouring(c, hp);
    const QuotientGroup& q = *once.quotient_context();

    for (const auto& hsub : enumerate_quotient_subgroups(q)) {
        EdgeColouring twice = quotient_colouring(once, hsub);
        EdgeColouring direct = quotient_colouring(c, psi(q, hsub));
        for (int x = 0; x < 8; ++x)
            for (int y = x + 1; y < 8; ++y) CHECK(twice.value(x, y) == direct.value(x, y));
    }
}

TEST_CASE("pools above the dense threshold use hashed storage transparently") {
    AbelianGroup z3({3});
    VertexPool pool = VertexPool::range(1100);  // beyond the 2^10 dense limit
    EdgeColouring c = EdgeColouring::from_function(
        pool, z3, [&](int x, int y) { return z3.element_at((x * 7 + y) % 3); });
    CHECK(c.value(0, 1) == z3.element_at(1));
    CHECK(c.value(1099, 3) == z3.element_at((3 * 7 + 1099) % 3));
    CHECK(star_sum(c, {5}, 1, 0, {9}) ==
          z3.element_at(((0 * 7 + 1) + (1 * 7 + 5) + (0 * 7 + 9)) % 3));
}

TEST_CASE("find_gadget on monochromatic colourings is a proven absence") {
    AbelianGroup z2({2});
    VertexPool pool = VertexPool::range(7);
    EdgeColouring mono = EdgeColouring::constant(pool, z2, el({1}));
    VertexColouring vc = VertexColouring::constant(pool, z2, el({0}));
    auto r = find_gadget(pool.ids(), mono, vc, 2, 2, 0, 2, {});
    CHECK(r.status == SearchStatus::absent);
    auto rs = find_simple_gadget(pool.ids(), mono, vc, 2, 2, {});
    CHECK(rs.status == SearchStatus::absent);
}

TEST_CASE("lambda 1 gadgets always exist given enough vertices") {
    AbelianGroup z2({2});
    VertexPool pool = VertexPool::range(4);
    EdgeColouring mono = EdgeColouring::constant(pool, z2, el({1}));
    VertexColouring vc = VertexColouring::constant(pool, z2, el({0}));
    auto r = find_gadget(pool.ids(), mono, vc, 2, 2, 0, 1, {});
    REQUIRE(r.status == SearchStatus::found);
    verify_gadget(mono, vc, *r.gadget);
    auto rs = find_simple_gadget(pool.ids(), mono, vc, 3, 1, {});
    REQUIRE(rs.status == SearchStatus::found);
}

TEST_CASE("crafted two-path gadget is found and re-verifies") {
    AbelianGroup z2({2});
    VertexPool pool = VertexPool::range(6);
    // Exactly one odd pair colour: the two paths 0-3-2 and 0-4-2 differ.
    EdgeColouring c = EdgeColouring::from_function(pool, z2, [&](int x, int y) {
        return (x == 2 && y == 3) || (x == 3 && y == 2) ? el({1}) : el({0});
    });
    VertexColouring vc = VertexColouring::constant(pool, z2, el({0}));

    // Brute-force oracle over every vertex-set choice: some (2,2,0,2)-gadget exists.
    bool oracle_exists = false;
    auto ids = pool.ids();
    for (int a : ids)
        for (int b : ids) {
            if (a == b) continue;
            for (int w1 : ids)
                for (int w2 : ids) {
                    if (w1 >= w2 || w1 == a || w1 == b || w2 == a || w2 == b) continue;
                    for (int u : ids) {
                        if (u == a || u == b || u == w1 || u == w2) continue;
                        // X1 = {w1, w2}, X2 = {u}, D1 = {a}, D2 = {b}
                        GroupElement va = star_sum(c, {a}, w1, u, {b});
                        GroupElement vb = star_sum(c, {a}, w2, u, {b});
                        if (!(va == vb)) oracle_exists = true;
                    }
                }
        }
    REQUIRE(oracle_exists);

    auto r = find_gadget(pool.ids(), c, vc, 2, 2, 0, 2, {});
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.gadget->x1.size() == 2);
    verify_gadget(c, vc, *r.gadget);
}

TEST_CASE("simple gadget with two distinct star sums") {
    AbelianGroup z2({2});
    VertexPool pool = VertexPool::range(6);
    EdgeColouring c = EdgeColouring::from_function(pool, z2, [&](int x, int y) {
        return (x == 0 && y == 4) || (x == 4 && y == 0) ? el({1}) : el({0});
    });
    VertexColouring vc = VertexColouring::constant(pool, z2, el({0}));
    auto r = find_simple_gadget(pool.ids(), c, vc, 2, 2, {});
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.gadget->simple);
    CHECK(r.gadget->values.size() >= 2);
    verify_gadget(c, vc, *r.gadget);
}

TEST_CASE("gadget bundles come from matching colour classes") {
    AbelianGroup z2({2});
    VertexPool pool = VertexPool::range(10);
    EdgeColouring c = random_colouring(pool, z2, 17);
    VertexColouring vc = VertexColouring::from_function(
        pool, z2, [&](int v) { return el({v % 2}); });
    BundleRequest req;
    req.d1_sizes = {1};
    req.d2_sizes = {2};
    auto r = find_gadget(pool.ids(), c, vc, 2, 2, 0, 2, req);
    REQUIRE(r.status == SearchStatus::found);
    const Gadget& g = *r.gadget;
    REQUIRE(g.bundles.count(g.d1_set[0]) == 1);
    CHECK(g.bundles.at(g.d1_set[0]).size() == 1);
    REQUIRE(g.bundles.count(g.d2_set[0]) == 1);
    CHECK(g.bundles.at(g.d2_set[0]).size() == 2);
    verify_gadget(c, vc, g);
}

TEST_CASE("well-behaved tuples") {
    AbelianGroup z4({4});
    VertexPool pool = VertexPool::range(6);
    EdgeColouring c0 = random_colouring(pool, z4, 3);
    WellBehavedParams params{pool.size(), 4, 2, 640, 1280};

    WellBehavedTuple triv = trivial_tuple(pool, z4);
    CHECK(is_well_behaved(triv, 2, params, c0).all());

    // Clause (i) violated: claim the colouring is constant modulo the trivial
    // subgroup, which a random colouring is not.
    WellBehavedTuple bad = triv;
    bad.gamma = Subgroup::trivial(z4);
    auto rep = is_well_behaved(bad, 2, params, c0);
    CHECK_FALSE(rep.colour_clause);
    CHECK(rep.offending_pair.has_value());

    // Clause (ii) violated: T containing t with kappa*t outside Gamma'.
    WellBehavedTuple bad2 = triv;
    bad2.gamma = Subgroup::from_elements(z4, {el({0}), el({2})});
    bad2.t = {el({1})};
    auto rep2 = is_well_behaved(bad2, 1, params, c0);
    CHECK_FALSE(rep2.order_clause);
}

TEST_CASE("normalize_T merges coset-equal colours") {
    AbelianGroup z4({4});
    VertexPool pool = VertexPool::range(4);
    Subgroup gp = Subgroup::from_elements(z4, {el({0}), el({2})});
    WellBehavedTuple t;
    t.r = pool;
    t.gamma = gp;
    t.t = {el({1}), el({3})};
    t.vc = VertexColouring::from_function(pool, z4,
                                          [&](int v) { return v < 2 ? el({1}) : el({3}); });
    t.s = z4.zero();
    WellBehavedTuple merged = normalize_T(t);
    CHECK(merged.t == std::vector<GroupElement>{el({1})});
    for (int v = 0; v < 4; ++v) CHECK(merged.vc.value(v) == el({1}));

    // Distinct classes stay unchanged.
    WellBehavedTuple u = t;
    u.t = {el({0}), el({1})};
    u.vc = VertexColouring::from_function(pool, z4,
                                          [&](int v) { return v < 2 ? el({0}) : el({1}); });
    WellBehavedTuple same = normalize_T(u);
    CHECK(same.t == u.t);
    CHECK(same.vc.value(3) == el({1}));
}
