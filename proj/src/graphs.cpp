#include "zsram/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace zsram {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0) throw_validation("negative vertex count");
    for (auto& [u, v] : edges_) {
        if (u == v) throw_validation("loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_)
            throw_validation("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw_validation("duplicate edge");
    adj_.assign(static_cast<size_t>(vertex_count_), {});
    degree_.assign(static_cast<size_t>(vertex_count_), 0);
    for (const auto& [u, v] : edges_) {
        adj_[static_cast<size_t>(u)].push_back(v);
        adj_[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    for (int v = 0; v < vertex_count_; ++v) {
        degree_[static_cast<size_t>(v)] = static_cast<int>(adj_[static_cast<size_t>(v)].size());
        max_degree_ = std::max(max_degree_, degree_[static_cast<size_t>(v)]);
    }
}

const std::vector<int>& Graph::neighbors(int v) const {
    if (v < 0 || v >= vertex_count_) throw_validation("vertex out of range");
    return adj_[static_cast<size_t>(v)];
}

int Graph::degree(int v) const {
    if (v < 0 || v >= vertex_count_) throw_validation("vertex out of range");
    return degree_[static_cast<size_t>(v)];
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<int> BlueprintPair::zeta() const {
    std::set<int> z(first.fixed.begin(), first.fixed.end());
    z.insert(second.fixed.begin(), second.fixed.end());
    z.erase(first.free_vertex);
    z.erase(second.free_vertex);
    return {z.begin(), z.end()};
}

std::vector<int> BlueprintPair::vertex_set() const {
    std::set<int> v(first.fixed.begin(), first.fixed.end());
    v.insert(second.fixed.begin(), second.fixed.end());
    v.insert(first.free_vertex);
    v.insert(second.free_vertex);
    return {v.begin(), v.end()};
}

BlueprintPair make_blueprint_pair(const Graph& g, int x, int y) {
    if (!g.has_edge(x, y)) throw_structural("blueprint free vertices must be adjacent");
    BlueprintPair p;
    p.first = Blueprint{x, g.neighbors(x)};
    p.second = Blueprint{y, g.neighbors(y)};
    p.d1 = p.first.type_d();
    p.d2 = p.second.type_d();
    std::vector<int> common;
    std::set_intersection(p.first.fixed.begin(), p.first.fixed.end(), p.second.fixed.begin(),
                          p.second.fixed.end(), std::back_inserter(common));
    p.m = static_cast<int>(common.size());
    return p;
}

const PlanPart& BlueprintPlan::bundle_of(int pair_index, int zeta_vertex) const {
    const auto& bm = pair_bundle_part.at(static_cast<size_t>(pair_index));
    auto it = bm.find(zeta_vertex);
    if (it == bm.end()) throw_structural("no bundle for that vertex");
    return parts[static_cast<size_t>(it->second)];
}

std::pair<int, int> kappa_of(const Graph& g) {
    if (g.edge_count() == 0) throw_validation("kappa_of requires at least one edge");
    std::map<int, long long> counts;
    for (const auto& [u, v] : g.edges()) ++counts[std::gcd(g.degree(u), g.degree(v))];
    int kappa_prime = 0;
    long long best = -1;
    for (const auto& [value, count] : counts)
        if (count > best) {  // map order makes ties resolve to the smallest value
            best = count;
            kappa_prime = value;
        }
    int kappa = static_cast<int>(std::gcd(g.edge_count(), static_cast<long long>(kappa_prime)));
    return {kappa_prime, kappa};
}

std::vector<BlueprintPair> candidate_pairs(const Graph& g, int kappa_prime) {
    std::vector<BlueprintPair> out;
    for (const auto& [u, v] : g.edges())
        if (std::gcd(g.degree(u), g.degree(v)) == kappa_prime)
            out.push_back(make_blueprint_pair(g, u, v));
    if (static_cast<long long>(out.size()) * g.max_degree() < g.edge_count())
        throw_internal("candidate pair count below e(G)/Delta");
    return out;
}

std::vector<BlueprintPair> maximal_nonoverlapping(const std::vector<BlueprintPair>& pairs) {
    std::vector<BlueprintPair> kept;
    std::set<int> used;
    for (const auto& p : pairs) {
        auto vs = p.vertex_set();
        bool clash = std::any_of(vs.begin(), vs.end(), [&](int v) { return used.count(v) > 0; });
        if (clash) continue;
        used.insert(vs.begin(), vs.end());
        kept.push_back(p);
    }
    return kept;
}

PlanChecks check_plan(const BlueprintPlan& plan) {
    PlanChecks checks;
    const Graph& g = plan.graph;
    long long n = g.edge_count();
    long long delta = g.max_degree();
    long long d6 = 1;
    for (int i = 0; i < 6; ++i) d6 *= delta;
    long long d7 = d6 * delta;

    checks.size_bound_applicable = n >= 2 * d7;
    if (checks.size_bound_applicable)
        checks.size_bound = static_cast<long long>(plan.pairs.size()) * 5 * d6 >= n;

    for (const auto& p : plan.pairs)
        if (std::gcd(std::gcd(static_cast<long long>(p.d1), static_cast<long long>(p.d2)), n) !=
            plan.kappa)
            checks.pair_gcd = false;

    std::vector<int> seen(static_cast<size_t>(g.vertex_count()), 0);
    for (const auto& part : plan.parts) {
        long long dsum = 0;
        for (int v : part.vertices) {
            dsum += g.degree(v);
            ++seen[static_cast<size_t>(v)];
        }
        if (dsum % plan.kappa != 0) checks.part_degree_sums = false;
        long long limit = delta >= 2 ? delta * delta : 2;  // singletons are fine at Delta = 1
        if (static_cast<long long>(part.vertices.size()) >= limit) checks.part_sizes = false;
        if (part.kind == PlanPart::Kind::block &&
            !(static_cast<int>(part.vertices.size()) == plan.kappa || part.vertices.size() == 1))
            checks.part_sizes = false;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (seen[static_cast<size_t>(v)] != 1) checks.disjoint_cover = false;

    // Parts of distinct blueprint pairs must be disjoint; with the partition
    // verified above it suffices that no part serves two pairs.
    std::set<int> claimed;
    for (const auto& bm : plan.pair_bundle_part)
        for (const auto& [v, pi] : bm)
            if (!claimed.insert(pi).second) checks.disjoint_cover = false;
    return checks;
}

BlueprintPlan extract_blueprints(const Graph& g) {
    if (g.edge_count() == 0) throw_validation("extract_blueprints requires at least one edge");
    BlueprintPlan plan;
    plan.graph = g;
    auto [kp, k] = kappa_of(g);
    plan.kappa_prime = kp;
    plan.kappa = k;

    std::vector<BlueprintPair> k2 = maximal_nonoverlapping(candidate_pairs(g, kp));
    std::vector<char> alive(k2.size(), 1);

    // vertex -> surviving pairs containing it, for the step-5 discards
    std::vector<std::vector<int>> pairs_of_vertex(static_cast<size_t>(g.vertex_count()));
    for (size_t i = 0; i < k2.size(); ++i)
        for (int v : k2[i].vertex_set())
            pairs_of_vertex[static_cast<size_t>(v)].push_back(static_cast<int>(i));

    // Degree pools Pi_d, kept sorted for the smallest-ids-first picks.
    std::vector<std::set<int>> pool(static_cast<size_t>(g.max_degree()) + 1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) >= 1) pool[static_cast<size_t>(g.degree(v))].insert(v);

    struct AcceptedBundle {
        int anchor;
        std::vector<int> vertices;
    };
    std::vector<std::vector<AcceptedBundle>> accepted_bundles;

    for (size_t pi = 0; pi < k2.size(); ++pi) {
        if (!alive[pi]) continue;
        const BlueprintPair& pair = k2[pi];
        std::vector<int> zeta = pair.zeta();
        std::set<int> excluded(zeta.begin(), zeta.end());
        std::vector<AcceptedBundle> bundles;
        bool abandoned = false;
        for (int v : zeta) {
            AcceptedBundle b{v, {v}};
            if (g.degree(v) % plan.kappa != 0) {
                std::vector<int> extra;
                for (int cand : pool[static_cast<size_t>(g.degree(v))]) {
                    if (static_cast<int>(extra.size()) == plan.kappa - 1) break;
                    if (excluded.count(cand)) continue;
                    extra.push_back(cand);
                }
                if (static_cast<int>(extra.size()) < plan.kappa - 1) {
                    abandoned = true;  // step 3: degree class exhausted
                    break;
                }
                for (int e : extra) {
                    b.vertices.push_back(e);
                    excluded.insert(e);
                }
                std::sort(b.vertices.begin(), b.vertices.end());
            }
            bundles.push_back(std::move(b));
        }
        if (abandoned) continue;

        // Step 4: consume the bundle vertices from the pools.
        for (const auto& b : bundles)
            for (int v : b.vertices) pool[static_cast<size_t>(g.degree(v))].erase(v);
        // Step 5: discard other pairs touching any added vertex.
        for (const auto& b : bundles)
            for (int v : b.vertices)
                for (int other : pairs_of_vertex[static_cast<size_t>(v)])
                    if (other != static_cast<int>(pi)) alive[static_cast<size_t>(other)] = 0;

        plan.pairs.push_back(pair);
        accepted_bundles.push_back(std::move(bundles));
    }

    // Remove the accepted pairs' free vertices from the pools.
    for (const auto& pair : plan.pairs)
        for (int v : pair.free_vertices()) pool[static_cast<size_t>(g.degree(v))].erase(v);

    // Record bundle parts (P').
    plan.pair_bundle_part.resize(plan.pairs.size());
    for (size_t i = 0; i < plan.pairs.size(); ++i)
        for (auto& b : accepted_bundles[i]) {
            plan.pair_bundle_part[i][b.anchor] = static_cast<int>(plan.parts.size());
            plan.parts.push_back(PlanPart{PlanPart::Kind::bundle, std::move(b.vertices),
                                          static_cast<int>(i), b.anchor});
        }

    // kappa-blocks over what remains of each pool, leftovers into pi'.
    std::vector<int> leftover;
    for (int d = 1; d <= g.max_degree(); ++d) {
        std::vector<int> rest(pool[static_cast<size_t>(d)].begin(),
                              pool[static_cast<size_t>(d)].end());
        size_t full = rest.size() / static_cast<size_t>(plan.kappa);
        for (size_t j = 0; j < full; ++j)
            plan.parts.push_back(
                PlanPart{PlanPart::Kind::block,
                         std::vector<int>(rest.begin() + static_cast<long>(j * plan.kappa),
                                          rest.begin() + static_cast<long>((j + 1) * plan.kappa)),
                         -1, -1});
        leftover.insert(leftover.end(), rest.begin() + static_cast<long>(full * plan.kappa),
                        rest.end());
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0) leftover.push_back(v);  // isolated vertices land in pi'
    std::sort(leftover.begin(), leftover.end());
    if (!leftover.empty())
        plan.parts.push_back(PlanPart{PlanPart::Kind::leftover, std::move(leftover), -1, -1});

    for (size_t i = 0; i < plan.pairs.size(); ++i)
        for (int v : plan.pairs[i].free_vertices())
            plan.parts.push_back(
                PlanPart{PlanPart::Kind::free_singleton, {v}, static_cast<int>(i), v});

    plan.part_of.assign(static_cast<size_t>(g.vertex_count()), -1);
    for (size_t i = 0; i < plan.parts.size(); ++i)
        for (int v : plan.parts[i].vertices) {
            if (plan.part_of[static_cast<size_t>(v)] != -1)
                throw_internal("vertex assigned to two parts");
            plan.part_of[static_cast<size_t>(v)] = static_cast<int>(i);
        }

    PlanChecks checks = check_plan(plan);
    if (!checks.all()) throw_internal("blueprint plan violates a partition invariant");
    return plan;
}

}  // namespace zsram
