#pragma once

// Target-graph representation, the kappa'/kappa computation, and blueprint
// pair extraction with its divisibility-respecting vertex partition.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "zsram/abelian.hpp"

namespace zsram {

class Graph {
  public:
    Graph() = default;
    // Edges are unordered pairs; loops and duplicates are validation errors.
    Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return vertex_count_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    int max_degree() const { return max_degree_; }
    bool has_edge(int u, int v) const;

  private:
    int vertex_count_ = 0;
    std::vector<std::pair<int, int>> edges_;       // sorted, u < v
    std::vector<std::vector<int>> adj_;
    std::vector<int> degree_;
    int max_degree_ = 0;
};

// A closed neighborhood N[v] with designated free vertex v.
struct Blueprint {
    int free_vertex = -1;
    std::vector<int> fixed;  // N(free_vertex), sorted
    int type_d() const { return static_cast<int>(fixed.size()); }
};

struct BlueprintPair {
    Blueprint first, second;   // free vertices adjacent in G
    int d1 = 0, d2 = 0, m = 0;  // type (d1, d2, m)

    std::vector<int> free_vertices() const { return {first.free_vertex, second.free_vertex}; }
    std::vector<int> zeta() const;        // fixed vertices of the pair, sorted
    std::vector<int> vertex_set() const;  // V(Y1) u V(Y2), sorted
};

BlueprintPair make_blueprint_pair(const Graph& g, int x, int y);

struct PlanPart {
    enum class Kind { bundle, free_singleton, block, leftover };
    Kind kind;
    std::vector<int> vertices;  // sorted
    int pair_index = -1;        // for bundle / free_singleton parts
    int anchor = -1;            // the fixed vertex a bundle belongs to
};

struct BlueprintPlan {
    Graph graph;
    int kappa = 1;
    int kappa_prime = 1;
    std::vector<BlueprintPair> pairs;                 // K, in acceptance order
    std::vector<std::map<int, int>> pair_bundle_part; // per pair: zeta vertex -> part index
    std::vector<PlanPart> parts;                      // Pi_0
    std::vector<int> part_of;                         // vertex -> part index

    const PlanPart& bundle_of(int pair_index, int zeta_vertex) const;
};

// kappa' = most common gcd(d(x), d(y)) over edges (ties -> smallest value);
// kappa = gcd(e(G), kappa').
std::pair<int, int> kappa_of(const Graph& g);

// One pair per edge attaining kappa', in lexicographic edge order.
std::vector<BlueprintPair> candidate_pairs(const Graph& g, int kappa_prime);

// Greedy scan keeping a pair iff vertex-disjoint from all kept pairs.
std::vector<BlueprintPair> maximal_nonoverlapping(const std::vector<BlueprintPair>& pairs);

struct PlanChecks {
    bool size_bound = true;       // |K| >= e/(5 Delta^6), only when e >= 2 Delta^7
    bool size_bound_applicable = false;
    bool pair_gcd = true;         // gcd(d1, d2, e) = kappa for every pair
    bool part_degree_sums = true; // per part, sum of degrees == 0 mod kappa
    bool disjoint_cover = true;   // parts partition V(G); pair parts disjoint
    bool part_sizes = true;       // |part| < Delta^2; blocks of size kappa or 1
    bool all() const {
        return size_bound && pair_gcd && part_degree_sums && disjoint_cover && part_sizes;
    }
};

PlanChecks check_plan(const BlueprintPlan& plan);

// The full extraction procedure; the returned plan satisfies *all* partition
// invariants (checked, internal error otherwise).
BlueprintPlan extract_blueprints(const Graph& g);

}  // namespace zsram
