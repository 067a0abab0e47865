#pragma once

// Edge and vertex colourings over vertex pools, star-sum evaluation,
// colouring shifts and quotients, the gadget search, and well-behaved-tuple
// verification.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "zsram/abelian.hpp"

namespace zsram {

class VertexPool {
  public:
    VertexPool() = default;
    explicit VertexPool(std::vector<int> ids);
    static VertexPool range(int t);

    const std::vector<int>& ids() const { return ids_; }
    int size() const { return static_cast<int>(ids_.size()); }
    bool contains(int v) const;
    int index_of(int v) const;  // position in sorted id list
    bool operator==(const VertexPool&) const = default;

  private:
    std::vector<int> ids_;
};

class VertexColouring {
  public:
    VertexColouring() = default;
    static VertexColouring constant(VertexPool pool, AbelianGroup group, GroupElement value);
    static VertexColouring from_function(VertexPool pool, AbelianGroup group,
                                         const std::function<GroupElement(int)>& f);

    const VertexPool& pool() const { return pool_; }
    const AbelianGroup& group() const { return group_; }
    GroupElement value(int v) const;
    VertexColouring shifted_by(const GroupElement& r) const;  // pointwise value - r

  private:
    VertexPool pool_;
    AbelianGroup group_;
    std::vector<GroupElement> values_;
};

// A total symmetric colouring of the pairs of a pool. When built as a
// quotient, stored values are canonical representatives and sums are reduced
// through the quotient projection. Dense triangular storage for pools up to
// 2^10 vertices, hashed storage above.
class EdgeColouring {
  public:
    EdgeColouring() = default;
    static EdgeColouring constant(VertexPool pool, AbelianGroup group, GroupElement value);
    static EdgeColouring from_function(VertexPool pool, AbelianGroup group,
                                       const std::function<GroupElement(int, int)>& f);

    const VertexPool& pool() const { return pool_; }
    const AbelianGroup& group() const { return group_; }
    GroupElement value(int x, int y) const;
    // Reduce a raw sum of values to the colouring's codomain (projects when
    // the colouring is a quotient colouring).
    GroupElement reduce(const GroupElement& e) const;
    const QuotientGroup* quotient_context() const { return quot_.get(); }

  private:
    friend EdgeColouring quotient_colouring(const EdgeColouring&, QuotientGroup);
    VertexPool pool_;
    AbelianGroup group_;
    std::shared_ptr<const QuotientGroup> quot_;
    bool dense_ = true;
    std::vector<int> dense_values_;                     // element indices, triangular
    std::unordered_map<long long, int> sparse_values_;  // packed pair -> element index
    long long pair_key(int x, int y) const;
    void store(int x, int y, const GroupElement& e);
};

// c(UyxV) = c(xy) + sum_{u in U} c(uy) + sum_{v in V} c(xv).
GroupElement star_sum(const EdgeColouring& c, const std::vector<int>& u, int y, int x,
                      const std::vector<int>& v);

// Pointwise c0(xy) - s - C(x) - C(y).
EdgeColouring shift_colouring(const EdgeColouring& c0, const GroupElement& s,
                              const VertexColouring& vc);

// Projection of every value through Gamma/H (carrier = the whole group).
EdgeColouring quotient_colouring(const EdgeColouring& c, const Subgroup& h);
// Carrier-aware form used by the engine (quotients of the tuple subgroup).
EdgeColouring quotient_colouring(const EdgeColouring& c, QuotientGroup q);
// Further quotient of an already-quotiented colouring by a subgroup of the
// quotient (given as representatives); equals quotienting the base colouring
// by psi of the pair.
EdgeColouring quotient_colouring(const EdgeColouring& c,
                                 const std::vector<GroupElement>& subgroup_of_quotient);

struct Gadget {
    bool simple = false;  // (d,lambda) star form: X2 pinned, D2 empty
    int d1 = 0, d2 = 0, m = 0;
    int lambda = 0;
    std::vector<int> d1_set, d2_set, m_set;
    std::vector<int> x1, x2;
    std::map<int, std::vector<int>> bundles;  // anchor vertex -> P_v
    std::vector<GroupElement> values;         // attained Eq-(colourful) values
    std::vector<int> all_vertices() const;
};

struct BundleRequest {
    // Requested |P_v| per slot, aligned with the ascending slot order of each
    // role class. All zero (or empty) means no bundles.
    std::vector<int> d1_sizes, d2_sizes, m_sizes;
};

enum class SearchStatus { found, absent, truncated };

struct GadgetSearch {
    SearchStatus status = SearchStatus::absent;
    std::optional<Gadget> gadget;
    long long candidates = 0;
};

// Deterministic nested search for a (d1,d2,m,lambda)-gadget inside `active`:
// candidate fixed sets ascending, then greedy growth of X1/X2 keeping
// vertices that contribute new Eq-(colourful) values.
GadgetSearch find_gadget(const std::vector<int>& active, const EdgeColouring& c,
                         const VertexColouring& vc, int d1, int d2, int m, int lambda,
                         const BundleRequest& req, long long candidate_cap = 10'000'000);

// The degenerate (d,lambda) star form: one pinned endpoint, star sets of
// size d enumerated ascending.
GadgetSearch find_simple_gadget(const std::vector<int>& active, const EdgeColouring& c,
                                const VertexColouring& vc, int d, int lambda,
                                const std::vector<int>& bundle_sizes,
                                long long candidate_cap = 10'000'000);

struct WellBehavedTuple {
    VertexPool r;
    Subgroup gamma;                // subgroup of the ambient group
    std::vector<GroupElement> t;   // T, sorted
    VertexColouring vc;            // C : R -> T
    GroupElement s;
    long long size() const { return gamma.size(); }
};

WellBehavedTuple trivial_tuple(const VertexPool& r0, const AbelianGroup& g0);

struct WellBehavedParams {
    long long pool_size = 0;  // |R0|
    long long n = 0;          // e(G)
    int delta = 1;
    long long alpha = 1;
    long long beta = 2;
};

struct WellBehavedReport {
    bool colour_clause = true;  // c0(xy) - s - C(x) - C(y) in Gamma on all R-pairs
    std::optional<std::pair<int, int>> offending_pair;
    bool order_clause = true;   // kappa*t in Gamma for all t in T
    std::optional<GroupElement> offending_t;
    bool size_clause = true;    // |R| against the branch bound
    bool all() const { return colour_clause && order_clause && size_clause; }
};

WellBehavedReport is_well_behaved(const WellBehavedTuple& t, long long kappa,
                                  const WellBehavedParams& params, const EdgeColouring& c0);

// Merge vertex colours lying in one Gamma'-coset to the smallest value
// already present in T.
WellBehavedTuple normalize_T(const WellBehavedTuple& t);

}  // namespace zsram
