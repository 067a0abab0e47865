#include "zsram/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "zsram/io.hpp"

namespace zsram {

namespace {

long long sat_mul(long long a, long long b) {
    constexpr long long kCap = 4'000'000'000'000'000'000LL;
    if (a == 0 || b == 0) return 0;
    if (a > kCap / b) return kCap;
    return a * b;
}

long long sat_pow(long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out = sat_mul(out, base);
    return out;
}

// Quotient colouring of c1 restricted to the active pool; values of active
// pairs are guaranteed inside the carrier by the well-behaved clause.
EdgeColouring project_over(const EdgeColouring& c1, const QuotientGroup& q,
                           const std::vector<int>& active) {
    return quotient_colouring(
        EdgeColouring::from_function(VertexPool(active), c1.group(),
                                     [&](int x, int y) { return c1.value(x, y); }),
        q);
}

std::map<GroupElement, std::vector<int>> classes_of(const VertexColouring& vc,
                                                    const std::vector<int>& pool) {
    std::map<GroupElement, std::vector<int>> out;
    for (int v : pool) out[vc.value(v)].push_back(v);
    return out;
}

// Bundle size requests come from the plan, aligned with the sorted slot
// orders the searches and realize_from_gadget use.
std::vector<int> star_sizes(const BlueprintPlan& plan, int pair_index, bool vary_first) {
    const BlueprintPair& p = plan.pairs[static_cast<size_t>(pair_index)];
    const Blueprint& varied = vary_first ? p.first : p.second;
    int other_free = vary_first ? p.second.free_vertex : p.first.free_vertex;
    std::vector<int> side;
    for (int v : varied.fixed)
        if (v != other_free) side.push_back(v);
    std::vector<int> sizes;
    sizes.reserve(side.size());
    for (int v : side)
        sizes.push_back(static_cast<int>(plan.bundle_of(pair_index, v).vertices.size()) - 1);
    return sizes;
}

BundleRequest full_sizes(const BlueprintPlan& plan, int pair_index) {
    const BlueprintPair& p = plan.pairs[static_cast<size_t>(pair_index)];
    std::vector<int> shared;
    std::set_intersection(p.first.fixed.begin(), p.first.fixed.end(), p.second.fixed.begin(),
                          p.second.fixed.end(), std::back_inserter(shared));
    auto sizes_for = [&](const std::vector<int>& vs) {
        std::vector<int> out;
        for (int v : vs)
            out.push_back(static_cast<int>(plan.bundle_of(pair_index, v).vertices.size()) - 1);
        return out;
    };
    std::vector<int> only1, only2;
    for (int v : p.first.fixed)
        if (v != p.second.free_vertex && !std::binary_search(shared.begin(), shared.end(), v))
            only1.push_back(v);
    for (int v : p.second.fixed)
        if (v != p.first.free_vertex && !std::binary_search(shared.begin(), shared.end(), v))
            only2.push_back(v);
    BundleRequest req;
    req.d1_sizes = sizes_for(only1);
    req.d2_sizes = sizes_for(only2);
    req.m_sizes = sizes_for(shared);
    return req;
}

// Monochromatic copy of G inside the pool under c: plain backtracking, used
// only by the optional pre-check on small pools.
bool has_monochromatic_copy(const Graph& g, const EdgeColouring& c) {
    const auto& ids = c.pool().ids();
    for (long long ci = 0; ci < c.group().order(); ++ci) {
        GroupElement colour = c.group().element_at(ci);
        std::vector<int> assign(static_cast<size_t>(g.vertex_count()), -1);
        std::vector<char> used(ids.size(), 0);
        std::function<bool(int)> rec = [&](int v) {
            if (v == g.vertex_count()) return true;
            for (size_t pi = 0; pi < ids.size(); ++pi) {
                if (used[pi]) continue;
                bool ok = true;
                for (int u : g.neighbors(v)) {
                    if (u >= v) continue;
                    if (!(c.value(ids[pi], ids[static_cast<size_t>(
                                                assign[static_cast<size_t>(u)])]) == colour)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                used[pi] = 1;
                assign[static_cast<size_t>(v)] = static_cast<int>(pi);
                if (rec(v + 1)) return true;
                used[pi] = 0;
                assign[static_cast<size_t>(v)] = -1;
            }
            return false;
        };
        if (rec(0)) return true;
    }
    return false;
}

}  // namespace

ResolvedParams resolve_params(const EngineConfig& cfg, int delta) {
    ResolvedParams p;
    long long d6 = sat_pow(std::max(1, delta), 6);
    p.alpha = cfg.alpha > 0 ? cfg.alpha : sat_mul(10, d6);
    p.beta = cfg.beta > 0 ? cfg.beta : sat_mul(2, p.alpha);
    p.scaled = (cfg.alpha > 0 && cfg.alpha != sat_mul(10, d6)) ||
               (cfg.beta > 0 && cfg.beta != 2 * p.alpha);
    if (p.beta < 2) throw_validation("beta must be at least 2");
    return p;
}

const char* engine_status_name(EngineStatus s) {
    switch (s) {
        case EngineStatus::success: return "success";
        case EngineStatus::blueprints_exhausted: return "blueprints_exhausted";
        case EngineStatus::no_gadget: return "no_gadget";
        case EngineStatus::search_truncated: return "search_truncated";
        case EngineStatus::pool_exhausted: return "pool_exhausted";
    }
    return "unknown";
}

std::string EmbedResult::transcript_json() const {
    std::string out;
    for (const auto& r : transcript) {
        nlohmann::json j;
        j["round"] = r.round;
        j["gamma_order"] = r.gamma_order;
        j["subgroup_order"] = r.subgroup_order;
        j["lambda"] = r.lambda;
        j["pairs_used"] = r.pairs_used;
        j["vertices_used"] = r.vertices_used;
        j["coset_rep"] = r.coset_rep;
        j["quotient_after"] = r.quotient_after;
        out += j.dump();
        out += '\n';
    }
    return out;
}

WellBehavedTuple phase0(const VertexPool& r0, const EdgeColouring& c0, long long kappa,
                        const EngineConfig& cfg, long long n, int delta) {
    ResolvedParams params = resolve_params(cfg, delta);
    WellBehavedParams wp{r0.size(), n, delta, params.alpha, params.beta};

    std::vector<WellBehavedTuple> candidates{trivial_tuple(r0, c0.group())};
    if (cfg.tuple_generator) {
        auto extra = cfg.tuple_generator(r0, c0, kappa);
        candidates.insert(candidates.end(), extra.begin(), extra.end());
    }
    const WellBehavedTuple* best = nullptr;
    for (const auto& cand : candidates) {
        if (!is_well_behaved(cand, kappa, wp, c0).all()) continue;
        if (!best || cand.size() < best->size()) best = &cand;
    }
    if (!best) throw_internal("trivial tuple rejected in phase 0");
    WellBehavedTuple chosen = *best;

    // Translate so the largest colour class is the zero class.
    auto classes = classes_of(chosen.vc, chosen.r.ids());
    GroupElement shift = c0.group().zero();
    size_t largest = 0;
    for (const auto& [colour, members] : classes)
        if (members.size() > largest) {  // map order breaks ties toward smaller colours
            largest = members.size();
            shift = colour;
        }
    if (!(shift == c0.group().zero())) {
        chosen.vc = chosen.vc.shifted_by(shift);
        for (auto& tv : chosen.t) tv = c0.group().sub(tv, shift);
        std::sort(chosen.t.begin(), chosen.t.end());
        chosen.s = c0.group().add(chosen.s, c0.group().scalar_mul(2, shift));
    }
    return normalize_T(chosen);
}

FinderOutcome realization_finder(const BlueprintPlan& plan, const std::vector<int>& pool,
                                 const QuotientGroup& gamma_i, const EdgeColouring& c_i,
                                 const EdgeColouring& c1, const VertexColouring& vc,
                                 long long lambda, std::vector<int> pair_queue,
                                 const EngineConfig& cfg) {
    FinderOutcome out;
    out.chain = Realization::empty(c1.group());
    std::vector<int> active = pool;
    const Graph& g = plan.graph;
    long long delta2 = 2LL * g.max_degree() * g.max_degree();

    size_t next = 0;
    while (true) {
        // Does c(F) already contain a coset of a nontrivial subgroup?
        std::set<GroupElement> projected;
        for (const auto& v : out.chain.value_set()) projected.insert(gamma_i.project(v));
        auto hit = find_coset_in({projected.begin(), projected.end()}, gamma_i);
        if (hit) {
            out.status = EngineStatus::success;
            out.coset = *hit;
            out.remaining_pool = active;
            out.remaining_pairs.assign(pair_queue.begin() + static_cast<long>(next),
                                       pair_queue.end());
            return out;
        }
        if (next == pair_queue.size()) {
            out.status = EngineStatus::blueprints_exhausted;
            out.detail = "no blueprint pairs left before a coset appeared";
            return out;
        }
        int pair_index = pair_queue[next++];
        const BlueprintPair& pair = plan.pairs[static_cast<size_t>(pair_index)];

        // Cheapest forms first: the star form on the smaller degree, then the
        // other side, then the full (d1, d2, m, lambda) search.
        struct Attempt {
            bool simple;
            bool vary_first;
        };
        std::vector<Attempt> attempts;
        if (pair.d1 <= pair.d2) {
            attempts.push_back({true, true});
            attempts.push_back({true, false});
        } else {
            attempts.push_back({true, false});
            attempts.push_back({true, true});
        }
        attempts.push_back({false, true});

        bool any_truncated = false;
        std::optional<Realization> realized;
        for (const Attempt& at : attempts) {
            GadgetSearch search;
            if (at.simple) {
                int d = at.vary_first ? pair.d1 : pair.d2;
                search = find_simple_gadget(active, c_i, vc, d, lambda,
                                            star_sizes(plan, pair_index, at.vary_first),
                                            cfg.gadget_cap);
            } else {
                search = find_gadget(active, c_i, vc, pair.d1, pair.d2, pair.m, lambda,
                                     full_sizes(plan, pair_index), cfg.gadget_cap);
            }
            if (search.status == SearchStatus::truncated) any_truncated = true;
            if (search.status != SearchStatus::found) continue;
            try {
                realized = realize_from_gadget(plan, pair_index, *search.gadget, c1, vc, active);
                break;
            } catch (const Error&) {
                // Star-form extras can run out of spares; fall through to the
                // next gadget form.
                continue;
            }
        }
        if (!realized) {
            out.status =
                any_truncated ? EngineStatus::search_truncated : EngineStatus::no_gadget;
            out.detail = std::string("pair of type (") + std::to_string(pair.d1) + "," +
                         std::to_string(pair.d2) + "," + std::to_string(pair.m) +
                         ") not realizable at multiplicity " + std::to_string(lambda);
            return out;
        }
        out.chain = oplus(out.chain, *realized, g, c1);
        ++out.pairs_used;

        std::vector<int> used_list = realized->used_pool();
        std::set<int> used(used_list.begin(), used_list.end());
        std::vector<int> kept;
        kept.reserve(active.size());
        for (int v : active)
            if (!used.count(v)) kept.push_back(v);
        // Drop colour classes that fell below 2*Delta^2.
        auto classes = classes_of(vc, kept);
        std::vector<int> trimmed;
        trimmed.reserve(kept.size());
        for (int v : kept)
            if (static_cast<long long>(classes[vc.value(v)].size()) >= delta2)
                trimmed.push_back(v);
        active = std::move(trimmed);
    }
}

EmbedResult embedding_algorithm(const WellBehavedTuple& tuple, const EdgeColouring& c1,
                                const BlueprintPlan& plan, const EngineConfig& cfg) {
    const Graph& g = plan.graph;
    long long n = g.edge_count();
    int delta = std::max(1, g.max_degree());
    ResolvedParams params = resolve_params(cfg, delta);

    EmbedResult result;
    result.alpha_used = params.alpha;
    result.beta_used = params.beta;
    result.scaled = params.scaled;

    const AbelianGroup& g0 = c1.group();
    const Subgroup& gamma = tuple.gamma;
    long long delta2 = 2LL * delta * delta;
    long long d3 = static_cast<long long>(delta) * delta * delta;

    // Phase-0 pool restriction: the zero class in Phase 1, every big-enough
    // class in Phase 2.
    std::vector<int> active;
    if (gamma.size() * params.alpha >= n) {
        for (int v : tuple.r.ids())
            if (tuple.vc.value(v) == g0.zero()) active.push_back(v);
    } else {
        auto classes = classes_of(tuple.vc, tuple.r.ids());
        for (int v : tuple.r.ids())
            if (static_cast<long long>(classes[tuple.vc.value(v)].size()) >= delta2)
                active.push_back(v);
    }

    std::vector<int> queue(plan.pairs.size());
    for (size_t i = 0; i < queue.size(); ++i) queue[i] = static_cast<int>(i);

    Realization chain = Realization::empty(g0);
    Subgroup h_prime = Subgroup::trivial(g0);
    QuotientGroup gamma_i(gamma, h_prime);
    long long m_i = gamma_i.size();
    int round = 0;
    long long total_pairs = 0;
    long long beta_rounds = 0;
    long long m_after_beta = m_i;

    while (m_i > 1) {
        ++round;
        long long lambda = m_i * params.alpha >= n ? params.beta : 2;
        EdgeColouring c_i = project_over(c1, gamma_i, active);
        FinderOutcome outcome = realization_finder(plan, active, gamma_i, c_i, c1, tuple.vc,
                                                   lambda, queue, cfg);
        if (outcome.status != EngineStatus::success) {
            result.status = outcome.status;
            result.failure_detail = outcome.detail;
            result.failure_round = round;
            return result;
        }
        const QuotientCoset& coset = *outcome.coset;
        long long h_order = static_cast<long long>(coset.subgroup.size());
        long long vertices_used =
            static_cast<long long>(active.size() - outcome.remaining_pool.size());
        long long shrink = m_i - m_i / h_order;

        RoundLog log;
        log.round = round;
        log.gamma_order = m_i;
        log.subgroup_order = h_order;
        log.lambda = lambda;
        log.pairs_used = outcome.pairs_used;
        log.vertices_used = vertices_used;
        log.coset_rep = format_element(coset.rep);
        log.pair_budget_ok = (outcome.pairs_used - 1) * (lambda - 1) <= shrink;
        log.vertex_budget_ok = vertices_used <= 7 * d3 * shrink;
        if (cfg.strict_telemetry && !params.scaled &&
            (!log.pair_budget_ok || !log.vertex_budget_ok))
            throw_internal("per-round telemetry budget violated in strict mode");

        chain = oplus(chain, outcome.chain, g, c1);
        total_pairs += outcome.pairs_used;
        if (lambda == params.beta) ++beta_rounds;

        h_prime = psi(gamma_i, coset.subgroup);
        gamma_i = QuotientGroup(gamma, h_prime);
        if (gamma_i.size() >= m_i) throw_internal("quotient failed to shrink");
        m_i = gamma_i.size();
        if (lambda == params.beta) m_after_beta = m_i;
        log.quotient_after = m_i;
        result.transcript.push_back(log);

        active = outcome.remaining_pool;
        queue = outcome.remaining_pairs;

        if (round > 64) throw_internal("round count exceeded log2 of any admissible group");
    }

    // Aggregate gadget-count budget (strict mode only on paper parameters):
    // total <= n/(beta-1) + |Gamma/H'_{l0+1}| + l.
    long long rounds = round;
    result.total_pair_budget_ok =
        total_pairs * (params.beta - 1) <=
        n + (m_after_beta + rounds) * (params.beta - 1);
    if (cfg.strict_telemetry && !params.scaled && !result.total_pair_budget_ok)
        throw_internal("aggregate gadget budget violated in strict mode");

    // Leftover embedding: per part, one colour class, smallest ids first.
    std::vector<const PlanPart*> leftover_parts;
    std::vector<PlanPart> synthesized;
    std::set<int> unused(queue.begin(), queue.end());
    for (int idx : queue) {
        const BlueprintPair& pair = plan.pairs[static_cast<size_t>(idx)];
        PlanPart free_part;
        free_part.kind = PlanPart::Kind::free_singleton;
        free_part.vertices = pair.free_vertices();
        std::sort(free_part.vertices.begin(), free_part.vertices.end());
        synthesized.push_back(std::move(free_part));
        for (const auto& [v, part_idx] : plan.pair_bundle_part[static_cast<size_t>(idx)])
            leftover_parts.push_back(&plan.parts[static_cast<size_t>(part_idx)]);
    }
    for (const auto& part : plan.parts)
        if (part.kind == PlanPart::Kind::block || part.kind == PlanPart::Kind::leftover)
            leftover_parts.push_back(&part);
    for (const auto& part : synthesized) leftover_parts.push_back(&part);

    std::vector<int> rbar = active;
    for (const PlanPart* part : leftover_parts) {
        long long dsum = 0;
        for (int v : part->vertices) dsum += g.degree(v);
        if (dsum % plan.kappa != 0)
            throw_internal("leftover part degree sum escaped the kappa lattice");
        auto classes = classes_of(tuple.vc, rbar);
        const std::vector<int>* best = nullptr;
        for (const auto& [colour, members] : classes)
            if (!best || members.size() > best->size()) best = &members;
        if (!best || best->size() < part->vertices.size()) {
            result.status = EngineStatus::pool_exhausted;
            result.failure_detail = "no colour class large enough for a leftover part";
            result.failure_round = round;
            return result;
        }
        std::map<int, int> assignment;
        for (size_t i = 0; i < part->vertices.size(); ++i)
            assignment[part->vertices[i]] = (*best)[i];
        chain = oplus(chain, Realization::singleton(g0, g, c1, assignment), g, c1);
        std::set<int> taken((*best).begin(), (*best).begin() + static_cast<long>(
                                                  part->vertices.size()));
        std::vector<int> next_pool;
        next_pool.reserve(rbar.size());
        for (int v : rbar)
            if (!taken.count(v)) next_pool.push_back(v);
        rbar = std::move(next_pool);
    }

    // Every vertex of G is now in the domain.
    std::vector<int> dom = chain.domain();
    if (static_cast<int>(dom.size()) != g.vertex_count())
        throw_internal("chain domain does not cover V(G)");

    // g' = n*s + sum over non-free vertices of d(v) * C(f(v)).
    GroupElement g_prime = g0.scalar_mul(n, tuple.s);
    for (const auto& [v, p] : chain.fixed_map())
        g_prime = g0.add(g_prime, g0.scalar_mul(g.degree(v), tuple.vc.value(p)));
    GroupElement target = g0.neg(g_prime);
    if (!gamma.contains(target)) throw_internal("certificate target escaped the tuple group");

    auto values = chain.value_set();
    if (static_cast<long long>(values.size()) != gamma.size())
        throw_internal("final value set is not the whole working group");
    auto choice = extract_function(chain, target);
    if (!choice) throw_internal("target missing from the final value set");

    result.injection = choice->f;
    // Certificate under c0 via the shift identity.
    GroupElement cert = g0.zero();
    for (const auto& [x, y] : g.edges()) {
        int px = choice->f.at(x), py = choice->f.at(y);
        GroupElement c0xy = g0.add(
            g0.add(g0.add(c1.value(px, py), tuple.s), tuple.vc.value(px)), tuple.vc.value(py));
        cert = g0.add(cert, c0xy);
    }
    result.certificate = cert;
    if (!(cert == g0.zero())) throw_internal("nonzero certificate on a successful run");
    result.status = EngineStatus::success;
    return result;
}

EmbedResult run_embedding(const Graph& g, const EdgeColouring& c0, const EngineConfig& cfg) {
    if (c0.pool().size() < g.vertex_count())
        throw_validation("colouring pool smaller than the graph");
    BlueprintPlan plan = extract_blueprints(g);
    EngineConfig local = cfg;
    WellBehavedTuple tuple =
        phase0(c0.pool(), c0, plan.kappa, local, g.edge_count(), std::max(1, g.max_degree()));
    EdgeColouring c1 = shift_colouring(c0, tuple.s, tuple.vc);
    EmbedResult result = embedding_algorithm(tuple, c1, plan, local);
    if (cfg.check_no_mono && c0.pool().size() <= 40)
        result.mono_checked = !has_monochromatic_copy(g, c0);
    if (result.status == EngineStatus::success) {
        GroupElement cert = certify(result.injection, g, c0);
        if (!(cert == c0.group().zero()))
            throw_internal("independent certification failed");
        result.certificate = cert;
    }
    return result;
}

GroupElement certify(const std::map<int, int>& f, const Graph& g, const EdgeColouring& c0) {
    std::set<int> image;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto it = f.find(v);
        if (it == f.end()) throw_validation("injection must cover every vertex of G");
        if (!image.insert(it->second).second) throw_validation("mapping is not injective");
    }
    GroupElement acc = c0.group().zero();
    for (const auto& [x, y] : g.edges()) acc = c0.group().add(acc, c0.value(f.at(x), f.at(y)));
    return acc;
}

PoolSizeReport required_pool_size(int delta, long long n) {
    PoolSizeReport rep;
    long long d6 = sat_pow(std::max(1, delta), 6);
    rep.alpha = sat_mul(10, d6);
    rep.beta = sat_mul(2, rep.alpha);
    rep.ramsey_colours = sat_mul(200, sat_pow(std::max(1, delta), 12));
    rep.bound = "Delta^(42*Delta^6) * C'(r, Delta) * n with r = " +
                std::to_string(rep.ramsey_colours) + ", n = " + std::to_string(n) +
                "; C' is the linear multicolour Ramsey constant (not evaluated)";
    rep.outside_guaranteed_regime = true;
    return rep;
}

}  // namespace zsram
