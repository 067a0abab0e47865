#pragma once

// Ground-truth brute force: zero-sum copy search, exact zero-sum Ramsey
// numbers on small instances, and lower-bound witness colourings. Nothing
// here may depend on the engine's code paths.

#include <map>
#include <optional>

#include "zsram/colouring.hpp"
#include "zsram/graphs.hpp"

namespace zsram {

struct SearchBudget {
    long long max_colorings = -1;   // -1 = unbounded
    long long max_injections = -1;  // per coloring; -1 = unbounded
    double time_cap_seconds = 0;    // 0 = none
    bool symmetry_pruning = false;
};

struct CopySearchResult {
    std::optional<std::map<int, int>> injection;
    bool truncated = false;
    long long injections_tried = 0;
};

// Backtracking over injections V(G) -> pool with degree-descending,
// connectivity-preferring vertex scheduling; exhaustive within the pool
// unless the budget trips.
CopySearchResult find_zero_sum_copy(const Graph& g, const EdgeColouring& c,
                                    const SearchBudget& budget = {});

enum class Verdict { all_zero_sum, counterexample, truncated };

struct ColoringsResult {
    Verdict verdict = Verdict::truncated;
    std::optional<EdgeColouring> witness;  // counterexample colouring
    long long colorings_examined = 0;
};

// Exhaustive over the |Gamma|^C(t,2) colourings of K_t (lexicographic over
// the triangular edge array), sharded deterministically across threads.
ColoringsResult all_colorings_have_zero_sum(const Graph& g, const AbelianGroup& gamma, int t,
                                            const SearchBudget& budget = {}, int threads = 1);

struct RamseyResult {
    std::optional<int> value;
    bool truncated = false;
    long long colorings_examined = 0;
};

// Least t <= t_max such that every colouring of K_t has a zero-sum copy.
// Requires |Gamma| to divide e(G).
RamseyResult ramsey_number(const Graph& g, const AbelianGroup& gamma, int t_max,
                           const SearchBudget& budget = {}, int threads = 1);

struct WitnessResult {
    std::optional<EdgeColouring> witness;
    bool truncated = false;
};

// A colouring of K_t with no zero-sum copy of G, searching constant
// colourings first and then the exhaustive order.
WitnessResult lower_bound_witness(const Graph& g, const AbelianGroup& gamma, int t,
                                  const SearchBudget& budget = {});

}  // namespace zsram
