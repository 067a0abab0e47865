#include "zsram/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <numeric>
#include <thread>

namespace zsram {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point end{};
    bool active = false;
    explicit Deadline(double seconds) {
        if (seconds > 0) {
            end = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(seconds));
            active = true;
        }
    }
    bool expired() const { return active && Clock::now() > end; }
};

// Degree-descending schedule preferring vertices adjacent to the placed
// prefix; isolated remainders come last.
std::vector<int> schedule_vertices(const Graph& g) {
    int n = g.vertex_count();
    std::vector<char> placed(static_cast<size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        bool best_adjacent = false;
        for (int v = 0; v < n; ++v) {
            if (placed[static_cast<size_t>(v)]) continue;
            bool adj = false;
            for (int u : g.neighbors(v))
                if (placed[static_cast<size_t>(u)]) {
                    adj = true;
                    break;
                }
            if (best < 0 || std::make_tuple(adj, g.degree(v), -v) >
                                std::make_tuple(best_adjacent, g.degree(best), -best)) {
                best = v;
                best_adjacent = adj;
            }
        }
        placed[static_cast<size_t>(best)] = 1;
        order.push_back(best);
    }
    return order;
}

struct CopySearcher {
    const Graph& g;
    const EdgeColouring& c;
    const SearchBudget& budget;
    Deadline deadline;
    std::vector<int> order;           // schedule
    std::vector<int> pos_of;          // vertex -> schedule position
    std::vector<long long> suffix_edges;  // edges not fully placed before position i
    std::vector<int> assignment;      // schedule position -> pool vertex
    std::vector<char> pool_used;
    std::vector<int> pool_ids;
    GroupElement sum;
    long long tried = 0;
    bool truncated = false;
    std::optional<std::map<int, int>> found;

    CopySearcher(const Graph& graph, const EdgeColouring& col, const SearchBudget& b)
        : g(graph), c(col), budget(b), deadline(b.time_cap_seconds) {
        order = schedule_vertices(g);
        pos_of.assign(static_cast<size_t>(g.vertex_count()), -1);
        for (size_t i = 0; i < order.size(); ++i) pos_of[static_cast<size_t>(order[i])] = (int)i;
        suffix_edges.assign(order.size() + 1, 0);
        for (size_t i = order.size(); i-- > 0;) {
            long long later = 0;
            for (const auto& [u, v] : g.edges())
                if (std::max(pos_of[static_cast<size_t>(u)], pos_of[static_cast<size_t>(v)]) >=
                    static_cast<int>(i))
                    ++later;
            suffix_edges[i] = later;
        }
        assignment.assign(order.size(), -1);
        pool_ids = c.pool().ids();
        pool_used.assign(pool_ids.size(), 0);
        sum = c.group().zero();
    }

    bool out_of_budget() {
        if (budget.max_injections >= 0 && tried > budget.max_injections) return true;
        if ((tried & 0x3ff) == 0 && deadline.expired()) return true;
        return false;
    }

    // Completes the remaining schedule with the smallest unused pool ids;
    // valid once no unplaced edges remain.
    void complete(size_t depth) {
        std::map<int, int> f;
        for (size_t i = 0; i < depth; ++i)
            f[order[i]] = pool_ids[static_cast<size_t>(assignment[i])];
        size_t next = 0;
        for (size_t i = depth; i < order.size(); ++i) {
            while (next < pool_ids.size() && pool_used[next]) ++next;
            if (next == pool_ids.size()) return;  // pool exhausted; no completion
            f[order[i]] = pool_ids[next];
            ++next;
        }
        found = f;
    }

    void dfs(size_t depth) {
        if (found || truncated) return;
        if (suffix_edges[depth] == 0) {
            if (sum == c.group().zero()) complete(depth);
            return;
        }
        if (depth == order.size()) {
            if (sum == c.group().zero()) complete(depth);
            return;
        }
        int v = order[depth];
        for (size_t pi = 0; pi < pool_ids.size(); ++pi) {
            if (pool_used[pi]) continue;
            ++tried;
            if (out_of_budget()) {
                truncated = true;
                return;
            }
            GroupElement delta = c.group().zero();
            for (int u : g.neighbors(v)) {
                int up = pos_of[static_cast<size_t>(u)];
                if (up < static_cast<int>(depth)) {
                    delta = c.group().add(
                        delta, c.value(pool_ids[pi],
                                       pool_ids[static_cast<size_t>(assignment[(size_t)up])]));
                }
            }
            GroupElement saved = sum;
            sum = c.group().add(sum, delta);
            assignment[depth] = static_cast<int>(pi);
            pool_used[pi] = 1;
            dfs(depth + 1);
            pool_used[pi] = 0;
            assignment[depth] = -1;
            sum = saved;
            if (found || truncated) return;
        }
    }
};

}  // namespace

CopySearchResult find_zero_sum_copy(const Graph& g, const EdgeColouring& c,
                                    const SearchBudget& budget) {
    CopySearchResult result;
    if (g.vertex_count() > c.pool().size()) return result;  // no copy fits
    CopySearcher searcher(g, c, budget);
    searcher.dfs(0);
    result.injection = searcher.found;
    result.truncated = searcher.truncated;
    result.injections_tried = searcher.tried;
    return result;
}

namespace {

std::vector<std::pair<int, int>> kt_edges(int t) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) out.push_back({i, j});
    return out;
}

// Edge-index permutations induced by vertex permutations of K_t.
std::vector<std::vector<int>> edge_permutations(int t) {
    auto edges = kt_edges(t);
    std::map<std::pair<int, int>, int> index;
    for (size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
    std::vector<int> perm(static_cast<size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> ep(edges.size());
        for (size_t e = 0; e < edges.size(); ++e) {
            int a = perm[static_cast<size_t>(edges[e].first)];
            int b = perm[static_cast<size_t>(edges[e].second)];
            if (a > b) std::swap(a, b);
            ep[e] = index.at({a, b});
        }
        out.push_back(std::move(ep));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

ColoringsResult all_colorings_have_zero_sum(const Graph& g, const AbelianGroup& gamma, int t,
                                            const SearchBudget& budget, int threads) {
    ColoringsResult result;
    auto edges = kt_edges(t);
    long long base = gamma.order();
    if (t < g.vertex_count()) {
        // No copy fits, so any colouring is a counterexample.
        result.verdict = Verdict::counterexample;
        result.witness = EdgeColouring::constant(VertexPool::range(std::max(t, 0)), gamma,
                                                 gamma.zero());
        result.colorings_examined = 0;
        return result;
    }
    if (edges.empty()) {
        // K_t has no edges (t <= 1) yet a copy fits: only edgeless G reaches
        // here, whose unique empty embedding sums to zero.
        result.verdict = Verdict::all_zero_sum;
        return result;
    }

    std::vector<std::vector<int>> eperms;
    std::vector<std::vector<int>> inv_eperms;
    if (budget.symmetry_pruning) {
        eperms = edge_permutations(t);
        inv_eperms.reserve(eperms.size());
        for (const auto& ep : eperms) {
            std::vector<int> inv(ep.size());
            for (size_t e = 0; e < ep.size(); ++e) inv[static_cast<size_t>(ep[e])] = (int)e;
            inv_eperms.push_back(std::move(inv));
        }
    }

    int shard_count = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, base)));
    std::atomic<long long> examined{0};
    std::atomic<long long> budget_left{budget.max_colorings >= 0 ? budget.max_colorings
                                                                 : (1LL << 62)};
    std::atomic<int> best_witness_shard{std::numeric_limits<int>::max()};
    std::atomic<bool> truncated{false};
    std::vector<std::optional<std::vector<int>>> shard_witness(
        static_cast<size_t>(base), std::nullopt);
    Deadline deadline(budget.time_cap_seconds);

    auto run_shard_range = [&](int worker) {
        // Shard by the first edge's digit; workers take digits round-robin.
        for (long long first = worker; first < base; first += shard_count) {
            if (truncated.load()) return;
            if (static_cast<long long>(best_witness_shard.load()) < first) return;
            std::vector<int> digits(edges.size(), 0);
            digits[0] = static_cast<int>(first);
            bool done = false;
            while (!done) {
                if (truncated.load()) return;
                if (static_cast<long long>(best_witness_shard.load()) < first) return;
                if (budget_left.fetch_sub(1) <= 0) {
                    truncated.store(true);
                    return;
                }
                if (deadline.expired()) {
                    truncated.store(true);
                    return;
                }
                bool consider = true;
                if (budget.symmetry_pruning) {
                    // Keep only lexicographic minima under the vertex action;
                    // zero-sum existence is isomorphism-invariant.
                    for (const auto& inv : inv_eperms) {
                        bool smaller = false, bigger = false;
                        for (size_t e = 0; e < digits.size(); ++e) {
                            int image = digits[static_cast<size_t>(inv[e])];
                            if (image < digits[e]) {
                                smaller = true;
                                break;
                            }
                            if (image > digits[e]) {
                                bigger = true;
                                break;
                            }
                        }
                        if (smaller) {
                            consider = false;
                            break;
                        }
                        (void)bigger;
                    }
                }
                if (consider) {
                    examined.fetch_add(1);
                    EdgeColouring col = EdgeColouring::from_function(
                        VertexPool::range(t), gamma, [&](int x, int y) {
                            if (x > y) std::swap(x, y);
                            size_t e = static_cast<size_t>(
                                std::lower_bound(edges.begin(), edges.end(),
                                                 std::make_pair(x, y)) -
                                edges.begin());
                            return gamma.element_at(digits[e]);
                        });
                    SearchBudget inner = budget;
                    inner.max_colorings = -1;
                    auto copy = find_zero_sum_copy(g, col, inner);
                    if (copy.truncated) {
                        truncated.store(true);
                        return;
                    }
                    if (!copy.injection) {
                        shard_witness[static_cast<size_t>(first)] = digits;
                        int expect = best_witness_shard.load();
                        while (static_cast<long long>(expect) > first &&
                               !best_witness_shard.compare_exchange_weak(
                                   expect, static_cast<int>(first))) {
                        }
                        return;
                    }
                }
                // Advance the odometer within this first-digit block.
                size_t pos = digits.size();
                while (pos-- > 1) {
                    if (++digits[pos] < base) break;
                    digits[pos] = 0;
                    if (pos == 1) done = true;
                }
                if (digits.size() == 1) done = true;
            }
        }
    };

    std::vector<std::thread> workers;
    for (int w = 1; w < shard_count; ++w) workers.emplace_back(run_shard_range, w);
    run_shard_range(0);
    for (auto& th : workers) th.join();

    result.colorings_examined = examined.load();
    int shard = best_witness_shard.load();
    if (shard != std::numeric_limits<int>::max()) {
        const auto& digits = *shard_witness[static_cast<size_t>(shard)];
        result.verdict = Verdict::counterexample;
        result.witness = EdgeColouring::from_function(
            VertexPool::range(t), gamma, [&](int x, int y) {
                if (x > y) std::swap(x, y);
                size_t e = static_cast<size_t>(
                    std::lower_bound(edges.begin(), edges.end(), std::make_pair(x, y)) -
                    edges.begin());
                return gamma.element_at(digits[e]);
            });
        return result;
    }
    if (truncated.load()) {
        result.verdict = Verdict::truncated;
        return result;
    }
    result.verdict = Verdict::all_zero_sum;
    return result;
}

RamseyResult ramsey_number(const Graph& g, const AbelianGroup& gamma, int t_max,
                           const SearchBudget& budget, int threads) {
    if (g.edge_count() % gamma.order() != 0)
        throw_validation("group order must divide e(G) for a zero-sum Ramsey number");
    RamseyResult result;
    for (int t = g.vertex_count(); t <= t_max; ++t) {
        auto r = all_colorings_have_zero_sum(g, gamma, t, budget, threads);
        result.colorings_examined += r.colorings_examined;
        if (r.verdict == Verdict::truncated) {
            result.truncated = true;
            return result;
        }
        if (r.verdict == Verdict::all_zero_sum) {
            result.value = t;
            return result;
        }
    }
    return result;
}

WitnessResult lower_bound_witness(const Graph& g, const AbelianGroup& gamma, int t,
                                  const SearchBudget& budget) {
    WitnessResult result;
    // Constant colourings first: the sum of any copy is e(G) times the colour.
    for (long long i = 0; i < gamma.order(); ++i) {
        EdgeColouring col =
            EdgeColouring::constant(VertexPool::range(t), gamma, gamma.element_at(i));
        auto copy = find_zero_sum_copy(g, col, budget);
        if (copy.truncated) {
            result.truncated = true;
            return result;
        }
        if (!copy.injection) {
            result.witness = col;
            return result;
        }
    }
    // Exhaustive sweep; the verdict's counterexample is exactly a witness.
    auto all = all_colorings_have_zero_sum(g, gamma, t, budget, 1);
    if (all.verdict == Verdict::truncated) {
        result.truncated = true;
        return result;
    }
    if (all.verdict == Verdict::counterexample) result.witness = all.witness;
    return result;
}

}  // namespace zsram
