#pragma once

// Realizations of blueprint pairs inside gadgets, the oplus chaining
// operation, and exact value-set evaluation. The family F is never
// materialized: fixed parts are constant across F, so each realized pair is
// one grid of free-pair values and c(F) is an iterated sumset.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsram/colouring.hpp"
#include "zsram/graphs.hpp"

namespace zsram {

struct FreeGrid {
    int vertex_a = -1, vertex_b = -1;       // free G-vertices of the realized pair
    std::vector<int> options_a, options_b;  // X1, X2 images in the pool
    std::vector<std::vector<GroupElement>> values;  // [i][j] full-precision value
};

class Realization {
  public:
    static Realization empty(const AbelianGroup& group);
    // A one-function realization: a fixed injection with iota(F) empty.
    static Realization singleton(const AbelianGroup& group, const Graph& g,
                                 const EdgeColouring& c, const std::map<int, int>& assignment);
    // Assemble a realization from explicit parts (serialization, tests).
    static Realization from_parts(AbelianGroup group, std::map<int, int> fixed,
                                  std::vector<FreeGrid> grids, GroupElement base);

    const std::map<int, int>& fixed_map() const { return fixed_; }
    const std::vector<FreeGrid>& grids() const { return grids_; }
    const GroupElement& base_offset() const { return base_; }
    const AbelianGroup& group() const { return group_; }
    std::vector<int> domain() const;          // V_F, sorted
    std::vector<int> free_vertices() const;   // iota(F), sorted
    std::vector<int> used_pool() const;       // every reserved pool vertex
    long long family_size() const;            // |F| (product of grid sizes)

    // {c(f) : f in F}, by iterated sumset over the grids.
    std::vector<GroupElement> value_set() const;

    std::string to_debug_json() const;

  private:
    friend Realization oplus(const Realization&, const Realization&, const Graph&,
                             const EdgeColouring&);
    friend Realization realize_from_gadget(const BlueprintPlan&, int, const Gadget&,
                                           const EdgeColouring&, const VertexColouring&,
                                           const std::vector<int>&);
    AbelianGroup group_;
    std::map<int, int> fixed_;
    std::vector<FreeGrid> grids_;
    GroupElement base_;
};

// Build the Lemma-style realization of plan.pairs[pair_index] inside the
// gadget: fixed vertices onto the gadget's slot sets, bundles onto P_v, free
// vertices ranging over X1 x X2. For the star (d,lambda) form the
// value-irrelevant fixed slots and their bundles are drawn from `available`.
// c must be the full-precision working colouring.
Realization realize_from_gadget(const BlueprintPlan& plan, int pair_index, const Gadget& gadget,
                                const EdgeColouring& c, const VertexColouring& vc,
                                const std::vector<int>& available);

// Chain two realizations on disjoint domains; the cross-boundary constant is
// the sum of colours on E(G)-edges between the two fixed parts.
Realization oplus(const Realization& a, const Realization& b, const Graph& g,
                  const EdgeColouring& c);

struct EmbedChoice {
    std::vector<std::pair<int, int>> picks;  // per grid: (options_a idx, options_b idx)
    std::map<int, int> f;                    // resolved injection on V_F
};

// Lexicographically least per-grid selection with c(f) == target, or nothing
// when target is outside value_set().
std::optional<EmbedChoice> extract_function(const Realization& r, const GroupElement& target);

}  // namespace zsram
