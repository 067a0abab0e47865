#pragma once

// The embedding engine: phase-0 tuple selection, the round loop that
// realizes blueprint pairs until the working quotient collapses, the
// leftover-vertex embedding, and zero-sum certificate extraction.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsram/colouring.hpp"
#include "zsram/graphs.hpp"
#include "zsram/realization.hpp"

namespace zsram {

struct EngineConfig {
    long long alpha = 0;  // 0 = paper value 10 * Delta^6
    long long beta = 0;   // 0 = 2 * alpha
    long long gadget_cap = 10'000'000;
    bool strict_telemetry = false;
    bool check_no_mono = false;  // pre-check for monochromatic copies on small pools
    int threads = 1;
    // Extra phase-0 candidates; the trivial tuple is always in play.
    std::function<std::vector<WellBehavedTuple>(const VertexPool&, const EdgeColouring&,
                                                long long kappa)>
        tuple_generator;
};

struct ResolvedParams {
    long long alpha = 1;
    long long beta = 2;
    bool scaled = false;  // true when the caller overrode the paper values
};

ResolvedParams resolve_params(const EngineConfig& cfg, int delta);

enum class EngineStatus {
    success,
    blueprints_exhausted,
    no_gadget,
    search_truncated,
    pool_exhausted,
};

const char* engine_status_name(EngineStatus s);

struct RoundLog {
    int round = 0;
    long long gamma_order = 0;    // |Gamma_i|
    long long subgroup_order = 0; // |H_i|
    long long lambda = 0;
    long long pairs_used = 0;
    long long vertices_used = 0;
    std::string coset_rep;
    long long quotient_after = 0;  // |Gamma_{i+1}|
    bool pair_budget_ok = true;    // section-7 per-round bound
    bool vertex_budget_ok = true;  // vertex-count lemma bound
};

struct EmbedResult {
    EngineStatus status = EngineStatus::pool_exhausted;
    std::string failure_detail;
    int failure_round = -1;
    std::map<int, int> injection;   // on success: V(G) -> pool
    GroupElement certificate;       // re-summed under c0; zero on success
    std::vector<RoundLog> transcript;
    long long alpha_used = 0, beta_used = 0;
    bool scaled = false;
    bool total_pair_budget_ok = true;  // aggregate gadget-count bound
    std::optional<bool> mono_checked;  // result of the optional pre-check
    std::string transcript_json() const;  // one JSON object per line
};

// Minimal-size valid tuple among the generator's candidates plus the trivial
// tuple, translated so the largest colour class sits at colour zero, then
// T-normalized.
WellBehavedTuple phase0(const VertexPool& r0, const EdgeColouring& c0, long long kappa,
                        const EngineConfig& cfg, long long n, int delta);

struct FinderOutcome {
    EngineStatus status = EngineStatus::blueprints_exhausted;
    std::optional<QuotientCoset> coset;  // A (rep) and H (subgroup of the quotient)
    std::vector<int> remaining_pool;
    Realization chain;                   // F, with full-precision grids
    std::vector<int> remaining_pairs;    // plan pair indices still unused
    long long pairs_used = 0;
    std::string detail;
};

// Algorithm-2 loop: realize queued pairs at multiplicity lambda, chaining
// via oplus and trimming small colour classes, until the projected value set
// contains a coset of a nontrivial subgroup of gamma_i.
FinderOutcome realization_finder(const BlueprintPlan& plan, const std::vector<int>& pool,
                                 const QuotientGroup& gamma_i, const EdgeColouring& c_i,
                                 const EdgeColouring& c1, const VertexColouring& vc,
                                 long long lambda, std::vector<int> pair_queue,
                                 const EngineConfig& cfg);

// Algorithm-1 driver over a validated tuple and the shifted colouring c1.
EmbedResult embedding_algorithm(const WellBehavedTuple& tuple, const EdgeColouring& c1,
                                const BlueprintPlan& plan, const EngineConfig& cfg);

// extract_blueprints + phase0 + shift + embedding_algorithm + certification.
EmbedResult run_embedding(const Graph& g, const EdgeColouring& c0, const EngineConfig& cfg);

// Independent re-summation of c0 over the injection's image; shares nothing
// with the engine internals above.
GroupElement certify(const std::map<int, int>& f, const Graph& g, const EdgeColouring& c0);

struct PoolSizeReport {
    long long alpha = 0;
    long long beta = 0;
    long long ramsey_colours = 0;  // r = 200 * Delta^12 (saturated)
    std::string bound;             // the symbolic pool bound
    bool outside_guaranteed_regime = true;
};

// The paper-scale pool requirement, reported symbolically; any finite desk
// run is outside the guaranteed regime.
PoolSizeReport required_pool_size(int delta, long long n);

}  // namespace zsram
