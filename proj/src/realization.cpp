#include "zsram/realization.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace zsram {

namespace {

// Sum of colours on E(G)-edges whose endpoints are both fixed by the map.
GroupElement fixed_edge_sum(const AbelianGroup& group, const Graph& g, const EdgeColouring& c,
                            const std::map<int, int>& assignment) {
    GroupElement acc = group.zero();
    for (const auto& [x, px] : assignment)
        for (int y : g.neighbors(x)) {
            if (y <= x) continue;
            auto it = assignment.find(y);
            if (it == assignment.end()) continue;
            acc = group.add(acc, c.value(px, it->second));
        }
    return acc;
}

}  // namespace

Realization Realization::empty(const AbelianGroup& group) {
    Realization r;
    r.group_ = group;
    r.base_ = group.zero();
    return r;
}

Realization Realization::singleton(const AbelianGroup& group, const Graph& g,
                                   const EdgeColouring& c, const std::map<int, int>& assignment) {
    Realization r;
    r.group_ = group;
    r.fixed_ = assignment;
    std::set<int> images;
    for (const auto& [v, p] : assignment)
        if (!images.insert(p).second) throw_structural("singleton assignment not injective");
    r.base_ = fixed_edge_sum(group, g, c, assignment);
    return r;
}

Realization Realization::from_parts(AbelianGroup group, std::map<int, int> fixed,
                                    std::vector<FreeGrid> grids, GroupElement base) {
    Realization r;
    r.group_ = std::move(group);
    r.fixed_ = std::move(fixed);
    r.grids_ = std::move(grids);
    r.base_ = std::move(base);
    return r;
}

std::vector<int> Realization::domain() const {
    std::vector<int> out;
    for (const auto& [v, p] : fixed_) out.push_back(v);
    for (const auto& grid : grids_) {
        out.push_back(grid.vertex_a);
        out.push_back(grid.vertex_b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Realization::free_vertices() const {
    std::vector<int> out;
    for (const auto& grid : grids_) {
        out.push_back(grid.vertex_a);
        out.push_back(grid.vertex_b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Realization::used_pool() const {
    std::set<int> out;
    for (const auto& [v, p] : fixed_) out.insert(p);
    for (const auto& grid : grids_) {
        out.insert(grid.options_a.begin(), grid.options_a.end());
        out.insert(grid.options_b.begin(), grid.options_b.end());
    }
    return {out.begin(), out.end()};
}

long long Realization::family_size() const {
    long long prod = 1;
    for (const auto& grid : grids_)
        prod *= static_cast<long long>(grid.options_a.size()) *
                static_cast<long long>(grid.options_b.size());
    return prod;
}

std::vector<GroupElement> Realization::value_set() const {
    std::set<GroupElement> acc{base_};
    for (const auto& grid : grids_) {
        std::set<GroupElement> distinct;
        for (const auto& row : grid.values) distinct.insert(row.begin(), row.end());
        std::set<GroupElement> next;
        for (const auto& a : acc)
            for (const auto& v : distinct) next.insert(group_.add(a, v));
        acc = std::move(next);
    }
    return {acc.begin(), acc.end()};
}

std::string Realization::to_debug_json() const {
    nlohmann::json j;
    j["base_offset"] = base_.residues;
    j["fixed_map"] = nlohmann::json::object();
    for (const auto& [v, p] : fixed_) j["fixed_map"][std::to_string(v)] = p;
    j["grids"] = nlohmann::json::array();
    for (const auto& grid : grids_) {
        nlohmann::json jg;
        jg["free_vertices"] = {grid.vertex_a, grid.vertex_b};
        jg["x1"] = grid.options_a;
        jg["x2"] = grid.options_b;
        jg["values"] = nlohmann::json::array();
        for (const auto& row : grid.values) {
            nlohmann::json jr = nlohmann::json::array();
            for (const auto& v : row) jr.push_back(v.residues);
            jg["values"].push_back(jr);
        }
        j["grids"].push_back(jg);
    }
    return j.dump();
}

Realization realize_from_gadget(const BlueprintPlan& plan, int pair_index, const Gadget& gadget,
                                const EdgeColouring& c, const VertexColouring& vc,
                                const std::vector<int>& available) {
    if (c.quotient_context())
        throw_structural("realizations are built against the full-precision colouring");
    const Graph& g = plan.graph;
    const BlueprintPair& given = plan.pairs.at(static_cast<size_t>(pair_index));

    // Match the gadget's type against the pair, swapping roles if the gadget
    // fits the (d2, d1, m) orientation instead.
    bool swap;
    if (gadget.simple) {
        if (gadget.d1 == given.d1)
            swap = false;
        else if (gadget.d1 == given.d2)
            swap = true;
        else
            throw_structural("gadget star degree matches neither free vertex");
    } else {
        if (gadget.d1 == given.d1 && gadget.d2 == given.d2 && gadget.m == given.m)
            swap = false;
        else if (gadget.d1 == given.d2 && gadget.d2 == given.d1 && gadget.m == given.m)
            swap = true;
        else
            throw_structural("gadget type does not match the blueprint pair");
    }
    const Blueprint& bpA = swap ? given.second : given.first;  // varies over X1
    const Blueprint& bpB = swap ? given.first : given.second;  // varies over X2 (or pinned)
    int iotaA = bpA.free_vertex, iotaB = bpB.free_vertex;
    int dA = bpA.type_d(), dB = bpB.type_d();

    std::vector<int> shared;
    std::set_intersection(bpA.fixed.begin(), bpA.fixed.end(), bpB.fixed.begin(), bpB.fixed.end(),
                          std::back_inserter(shared));
    std::vector<int> onlyA, onlyB;  // zeta vertices seen by one side only
    for (int v : bpA.fixed)
        if (v != iotaB && !std::binary_search(shared.begin(), shared.end(), v)) onlyA.push_back(v);
    for (int v : bpB.fixed)
        if (v != iotaA && !std::binary_search(shared.begin(), shared.end(), v)) onlyB.push_back(v);

    std::map<int, int> assign;  // G-vertex -> pool vertex (fixed part)
    std::set<int> reserved;     // every pool vertex claimed so far
    for (int p : gadget.all_vertices()) reserved.insert(p);

    auto map_slots = [&](const std::vector<int>& zeta_side, const std::vector<int>& slots,
                         const char* what) {
        if (zeta_side.size() != slots.size())
            throw_structural(std::string("slot count mismatch for ") + what);
        for (size_t i = 0; i < zeta_side.size(); ++i) assign[zeta_side[i]] = slots[i];
    };

    // Anchored bundle check and mapping: |P_{f(u)}| must equal |pi_u| - 1.
    auto map_bundle = [&](int zeta_vertex, int slot) {
        const PlanPart& part = plan.bundle_of(pair_index, zeta_vertex);
        size_t want = part.vertices.size() - 1;
        auto it = gadget.bundles.find(slot);
        size_t have = it == gadget.bundles.end() ? 0 : it->second.size();
        if (want != have)
            throw_structural("fixed bundle has the wrong size for vertex " +
                             std::to_string(zeta_vertex));
        if (want == 0) return;
        size_t k = 0;
        for (int u : part.vertices) {
            if (u == zeta_vertex) continue;
            assign[u] = it->second[k++];
        }
    };

    if (!gadget.simple) {
        map_slots(onlyA, gadget.d1_set, "D1");
        map_slots(onlyB, gadget.d2_set, "D2");
        map_slots(shared, gadget.m_set, "M");
        for (size_t i = 0; i < onlyA.size(); ++i) map_bundle(onlyA[i], gadget.d1_set[i]);
        for (size_t i = 0; i < onlyB.size(); ++i) map_bundle(onlyB[i], gadget.d2_set[i]);
        for (size_t i = 0; i < shared.size(); ++i) map_bundle(shared[i], gadget.m_set[i]);
    } else {
        // Star form: the d-1 slots carry the whole X1-side zeta (shared
        // included); the other side's value-irrelevant vertices come from the
        // spare pool, smallest ids first, constrained only by bundle supply.
        std::vector<int> sideA = onlyA;
        sideA.insert(sideA.end(), shared.begin(), shared.end());
        std::sort(sideA.begin(), sideA.end());
        map_slots(sideA, gadget.d1_set, "star");
        for (size_t i = 0; i < sideA.size(); ++i) map_bundle(sideA[i], gadget.d1_set[i]);

        std::set<int> taken = reserved;
        std::map<GroupElement, std::vector<int>> spare_by_class;
        for (int p : available)
            if (!taken.count(p)) spare_by_class[vc.value(p)].push_back(p);
        for (int u : onlyB) {
            size_t bundle_need = plan.bundle_of(pair_index, u).vertices.size() - 1;
            int chosen = -1;
            for (int p : available) {
                if (taken.count(p)) continue;
                auto& cls = spare_by_class[vc.value(p)];
                size_t free_in_class = 0;
                for (int q : cls)
                    if (!taken.count(q)) ++free_in_class;
                if (free_in_class >= bundle_need + 1) {
                    chosen = p;
                    break;
                }
            }
            if (chosen < 0) throw_structural("no spare pool vertex for a fixed slot");
            taken.insert(chosen);
            assign[u] = chosen;
            const PlanPart& part = plan.bundle_of(pair_index, u);
            auto& cls = spare_by_class[vc.value(chosen)];
            size_t placed = 0;
            for (int q : cls) {
                if (placed == bundle_need) break;
                if (taken.count(q)) continue;
                taken.insert(q);
                for (int member : part.vertices)
                    if (member != u && !assign.count(member)) {
                        assign[member] = q;
                        break;
                    }
                ++placed;
            }
            if (placed != bundle_need) throw_structural("no spare pool vertices for a bundle");
        }
        reserved = taken;
    }

    // Also map the anchored-side bundle members' pool vertices into reserved.
    for (const auto& [v, p] : assign) reserved.insert(p);

    std::set<int> image;
    for (const auto& [v, p] : assign)
        if (!image.insert(p).second) throw_internal("fixed assignment not injective");

    Realization r;
    r.group_ = c.group();
    r.fixed_ = assign;

    FreeGrid grid;
    grid.vertex_a = iotaA;
    grid.vertex_b = iotaB;
    grid.options_a = gadget.x1;
    grid.options_b = gadget.x2;
    const AbelianGroup& grp = c.group();
    for (int w1 : grid.options_a) {
        std::vector<GroupElement> row;
        for (int w2 : grid.options_b) {
            GroupElement v = c.value(w1, w2);
            for (int u : bpA.fixed)
                if (u != iotaB) v = grp.add(v, c.value(assign.at(u), w1));
            for (int u : bpB.fixed)
                if (u != iotaA) v = grp.add(v, c.value(assign.at(u), w2));
            v = grp.add(v, grp.scalar_mul(dA, vc.value(w1)));
            v = grp.add(v, grp.scalar_mul(dB, vc.value(w2)));
            row.push_back(std::move(v));
        }
        grid.values.push_back(std::move(row));
    }
    r.grids_.push_back(std::move(grid));

    r.base_ = fixed_edge_sum(grp, g, c, assign);

    // A realized pair at multiplicity lambda must show at least lambda values.
    std::set<GroupElement> distinct;
    for (const auto& row : r.grids_[0].values) distinct.insert(row.begin(), row.end());
    if (gadget.lambda > 0) {
        std::set<GroupElement> reduced;
        for (const auto& v : distinct) reduced.insert(c.reduce(v));
        if (static_cast<int>(reduced.size()) < gadget.lambda)
            throw_internal("realized value set smaller than the gadget multiplicity");
    }
    return r;
}

Realization oplus(const Realization& a, const Realization& b, const Graph& g,
                  const EdgeColouring& c) {
    if (b.fixed_map().empty() && b.grids().empty()) return a;
    if (a.fixed_map().empty() && a.grids().empty()) return b;

    std::vector<int> da = a.domain(), db = b.domain();
    std::vector<int> overlap;
    std::set_intersection(da.begin(), da.end(), db.begin(), db.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) throw_structural("oplus requires disjoint domains");
    std::vector<int> pa = a.used_pool(), pb = b.used_pool();
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) throw_structural("oplus requires disjoint pool images");

    std::vector<int> fa = a.free_vertices(), fb = b.free_vertices();
    std::set<int> free_a(fa.begin(), fa.end());
    std::set<int> free_b(fb.begin(), fb.end());
    const AbelianGroup& grp = a.group();

    // Cross-boundary constant: E(G)-edges between the two fixed parts. A free
    // vertex can never have a neighbor outside its own realization.
    GroupElement cross = grp.zero();
    for (const auto& [x, px] : a.fixed_map())
        for (int y : g.neighbors(x)) {
            auto it = b.fixed_map().find(y);
            if (it != b.fixed_map().end()) cross = grp.add(cross, c.value(px, it->second));
            else if (free_b.count(y))
                throw_structural("free vertex adjacent to a different realization");
        }
    for (const auto& [x, px] : b.fixed_map())
        for (int y : g.neighbors(x))
            if (free_a.count(y))
                throw_structural("free vertex adjacent to a different realization");
    for (int x : free_a)
        for (int y : g.neighbors(x))
            if (std::binary_search(db.begin(), db.end(), y))
                throw_structural("free vertex adjacent to a different realization");
    for (int x : free_b)
        for (int y : g.neighbors(x))
            if (std::binary_search(da.begin(), da.end(), y))
                throw_structural("free vertex adjacent to a different realization");

    Realization out;
    out.group_ = grp;
    out.fixed_ = a.fixed_map();
    out.fixed_.insert(b.fixed_map().begin(), b.fixed_map().end());
    out.grids_ = a.grids();
    out.grids_.insert(out.grids_.end(), b.grids().begin(), b.grids().end());
    out.base_ = grp.add(grp.add(a.base_offset(), b.base_offset()), cross);
    return out;
}

std::optional<EmbedChoice> extract_function(const Realization& r, const GroupElement& target) {
    const AbelianGroup& grp = r.group();
    size_t k = r.grids().size();
    // suffix[t] = set of sums attainable from grids t..k-1.
    std::vector<std::set<GroupElement>> suffix(k + 1);
    suffix[k] = {grp.zero()};
    for (size_t t = k; t-- > 0;) {
        std::set<GroupElement> distinct;
        for (const auto& row : r.grids()[t].values) distinct.insert(row.begin(), row.end());
        for (const auto& v : distinct)
            for (const auto& s : suffix[t + 1]) suffix[t].insert(grp.add(v, s));
    }
    GroupElement rem = grp.sub(target, r.base_offset());
    if (!suffix[0].count(rem)) return std::nullopt;

    EmbedChoice choice;
    choice.f = r.fixed_map();
    for (size_t t = 0; t < k; ++t) {
        const FreeGrid& grid = r.grids()[t];
        bool placed = false;
        for (size_t i = 0; i < grid.options_a.size() && !placed; ++i)
            for (size_t j = 0; j < grid.options_b.size() && !placed; ++j) {
                GroupElement after = grp.sub(rem, grid.values[i][j]);
                if (suffix[t + 1].count(after)) {
                    choice.picks.push_back({static_cast<int>(i), static_cast<int>(j)});
                    choice.f[grid.vertex_a] = grid.options_a[i];
                    choice.f[grid.vertex_b] = grid.options_b[j];
                    rem = after;
                    placed = true;
                }
            }
        if (!placed) throw_internal("extract_function lost a feasible suffix");
    }
    if (!(rem == grp.zero())) throw_internal("extract_function residual nonzero");

    std::set<int> image;
    for (const auto& [v, p] : choice.f)
        if (!image.insert(p).second) throw_internal("resolved function not injective");
    return choice;
}

}  // namespace zsram
