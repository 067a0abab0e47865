#include "zsram/colouring.hpp"

#include <algorithm>
#include <set>

namespace zsram {

namespace {

constexpr int kDensePoolLimit = 1 << 10;

long long sat_mul(long long a, long long b) {
    constexpr long long kCap = 4'000'000'000'000'000'000LL;
    if (a == 0 || b == 0) return 0;
    if (a > kCap / b) return kCap;
    return a * b;
}

// k-subsets of `items` in ascending lexicographic order; fn returns true to
// stop the whole enumeration.
template <class Fn>
bool for_each_combination(const std::vector<int>& items, int k, Fn&& fn) {
    int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return false;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    std::vector<int> chosen(static_cast<size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i)
            chosen[static_cast<size_t>(i)] =
                items[static_cast<size_t>(idx[static_cast<size_t>(i)])];
        if (fn(chosen)) return true;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j) - 1] + 1;
    }
}

std::vector<int> minus_sorted(const std::vector<int>& base, const std::vector<int>& remove) {
    std::vector<int> out;
    out.reserve(base.size());
    std::set_difference(base.begin(), base.end(), remove.begin(), remove.end(),
                        std::back_inserter(out));
    return out;
}

}  // namespace

VertexPool::VertexPool(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
        throw_validation("duplicate vertex id in pool");
}

VertexPool VertexPool::range(int t) {
    std::vector<int> ids(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) ids[static_cast<size_t>(i)] = i;
    return VertexPool(std::move(ids));
}

bool VertexPool::contains(int v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

int VertexPool::index_of(int v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) throw_validation("vertex not in pool");
    return static_cast<int>(it - ids_.begin());
}

VertexColouring VertexColouring::constant(VertexPool pool, AbelianGroup group,
                                          GroupElement value) {
    group.require(value);
    VertexColouring vc;
    vc.pool_ = std::move(pool);
    vc.group_ = std::move(group);
    vc.values_.assign(static_cast<size_t>(vc.pool_.size()), value);
    return vc;
}

VertexColouring VertexColouring::from_function(VertexPool pool, AbelianGroup group,
                                               const std::function<GroupElement(int)>& f) {
    VertexColouring vc;
    vc.pool_ = std::move(pool);
    vc.group_ = std::move(group);
    vc.values_.reserve(static_cast<size_t>(vc.pool_.size()));
    for (int v : vc.pool_.ids()) {
        GroupElement e = f(v);
        vc.group_.require(e);
        vc.values_.push_back(std::move(e));
    }
    return vc;
}

GroupElement VertexColouring::value(int v) const {
    return values_[static_cast<size_t>(pool_.index_of(v))];
}

VertexColouring VertexColouring::shifted_by(const GroupElement& r) const {
    VertexColouring vc = *this;
    for (auto& e : vc.values_) e = group_.sub(e, r);
    return vc;
}

long long EdgeColouring::pair_key(int x, int y) const {
    int px = pool_.index_of(x), py = pool_.index_of(y);
    if (px == py) throw_validation("self-pair has no colour");
    if (px > py) std::swap(px, py);
    if (dense_) return static_cast<long long>(py) * (py - 1) / 2 + px;
    return (static_cast<long long>(px) << 32) | static_cast<unsigned>(py);
}

void EdgeColouring::store(int x, int y, const GroupElement& e) {
    group_.require(e);
    long long key = pair_key(x, y);
    if (dense_)
        dense_values_[static_cast<size_t>(key)] = static_cast<int>(group_.index_of(e));
    else
        sparse_values_[key] = static_cast<int>(group_.index_of(e));
}

EdgeColouring EdgeColouring::constant(VertexPool pool, AbelianGroup group, GroupElement value) {
    return from_function(std::move(pool), std::move(group), [&](int, int) { return value; });
}

EdgeColouring EdgeColouring::from_function(VertexPool pool, AbelianGroup group,
                                           const std::function<GroupElement(int, int)>& f) {
    EdgeColouring c;
    c.pool_ = std::move(pool);
    c.group_ = std::move(group);
    int n = c.pool_.size();
    c.dense_ = n <= kDensePoolLimit;
    if (c.dense_) c.dense_values_.assign(static_cast<size_t>(n) * (n - 1) / 2, 0);
    const auto& ids = c.pool_.ids();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            c.store(ids[static_cast<size_t>(i)], ids[static_cast<size_t>(j)],
                    f(ids[static_cast<size_t>(i)], ids[static_cast<size_t>(j)]));
    return c;
}

GroupElement EdgeColouring::value(int x, int y) const {
    long long key = pair_key(x, y);
    int idx;
    if (dense_) {
        idx = dense_values_[static_cast<size_t>(key)];
    } else {
        auto it = sparse_values_.find(key);
        if (it == sparse_values_.end()) throw_internal("missing pair colour");
        idx = it->second;
    }
    return group_.element_at(idx);
}

GroupElement EdgeColouring::reduce(const GroupElement& e) const {
    return quot_ ? quot_->project(e) : e;
}

GroupElement star_sum(const EdgeColouring& c, const std::vector<int>& u, int y, int x,
                      const std::vector<int>& v) {
    if (x == y) throw_validation("star_sum endpoints must differ");
    const AbelianGroup& g = c.group();
    GroupElement acc = c.value(x, y);
    for (int w : u) acc = g.add(acc, c.value(w, y));
    for (int w : v) acc = g.add(acc, c.value(x, w));
    return c.reduce(acc);
}

EdgeColouring shift_colouring(const EdgeColouring& c0, const GroupElement& s,
                              const VertexColouring& vc) {
    if (c0.quotient_context()) throw_structural("cannot shift a quotient colouring");
    if (!(c0.pool() == vc.pool())) throw_structural("shift requires a shared pool");
    const AbelianGroup& g = c0.group();
    return EdgeColouring::from_function(c0.pool(), g, [&](int x, int y) {
        return g.sub(g.sub(g.sub(c0.value(x, y), s), vc.value(x)), vc.value(y));
    });
}

EdgeColouring quotient_colouring(const EdgeColouring& c, QuotientGroup q) {
    EdgeColouring out = EdgeColouring::from_function(
        c.pool(), c.group(), [&](int x, int y) { return q.project(c.value(x, y)); });
    out.quot_ = std::make_shared<const QuotientGroup>(std::move(q));
    return out;
}

EdgeColouring quotient_colouring(const EdgeColouring& c, const Subgroup& h) {
    if (c.quotient_context())
        throw_structural("colouring already quotiented; pass the quotient subgroup as reps");
    return quotient_colouring(c, QuotientGroup(c.group(), h));
}

EdgeColouring quotient_colouring(const EdgeColouring& c,
                                 const std::vector<GroupElement>& subgroup_of_quotient) {
    const QuotientGroup* q = c.quotient_context();
    if (!q) throw_structural("not a quotient colouring");
    Subgroup lifted = psi(*q, subgroup_of_quotient);
    return quotient_colouring(c, QuotientGroup(q->universe(), lifted));
}

std::vector<int> Gadget::all_vertices() const {
    std::set<int> out(d1_set.begin(), d1_set.end());
    out.insert(d2_set.begin(), d2_set.end());
    out.insert(m_set.begin(), m_set.end());
    out.insert(x1.begin(), x1.end());
    out.insert(x2.begin(), x2.end());
    for (const auto& [anchor, pv] : bundles) out.insert(pv.begin(), pv.end());
    return {out.begin(), out.end()};
}

namespace {

// Eq-(colourful) value of a free pair against the fixed sets D1' and D2'.
GroupElement pair_value(const EdgeColouring& c, const VertexColouring& vc, int d1, int d2,
                        const std::vector<int>& d1p, const std::vector<int>& d2p, int v1, int v2) {
    const AbelianGroup& g = c.group();
    GroupElement acc = c.value(v1, v2);
    for (int u : d1p) acc = g.add(acc, c.value(u, v1));
    for (int u : d2p) acc = g.add(acc, c.value(v2, u));
    acc = g.add(acc, g.scalar_mul(d1, vc.value(v1)));
    acc = g.add(acc, g.scalar_mul(d2, vc.value(v2)));
    return c.reduce(acc);
}

std::optional<std::map<int, std::vector<int>>> allocate_bundles(
    const std::vector<int>& spares, const VertexColouring& vc,
    const std::vector<std::pair<int, int>>& anchor_sizes) {
    std::map<int, std::vector<int>> out;
    std::set<int> used;
    for (const auto& [anchor, size] : anchor_sizes) {
        if (size == 0) continue;
        std::vector<int> pv;
        GroupElement want = vc.value(anchor);
        for (int s : spares) {
            if (static_cast<int>(pv.size()) == size) break;
            if (used.count(s)) continue;
            if (vc.value(s) == want) {
                pv.push_back(s);
                used.insert(s);
            }
        }
        if (static_cast<int>(pv.size()) < size) return std::nullopt;
        out[anchor] = std::move(pv);
    }
    return out;
}

std::vector<std::pair<int, int>> zip_sizes(const std::vector<int>& slots,
                                           const std::vector<int>& sizes, const char* role) {
    if (!sizes.empty() && sizes.size() != slots.size())
        throw_validation(std::string("bundle size list does not match ") + role + " slot count");
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < slots.size(); ++i)
        out.push_back({slots[i], sizes.empty() ? 0 : sizes[i]});
    return out;
}

}  // namespace

GadgetSearch find_gadget(const std::vector<int>& active, const EdgeColouring& c,
                         const VertexColouring& vc, int d1, int d2, int m, int lambda,
                         const BundleRequest& req, long long candidate_cap) {
    if (lambda < 1) throw_validation("lambda must be >= 1");
    if (d1 < m + 1 || d2 < m + 1) throw_validation("gadget type requires d1, d2 >= m+1");
    std::vector<int> pool = active;
    std::sort(pool.begin(), pool.end());
    GadgetSearch result;
    int s1 = d1 - m - 1, s2 = d2 - m - 1;

    bool stopped = for_each_combination(pool, m, [&](const std::vector<int>& mset) {
        std::vector<int> after_m = minus_sorted(pool, mset);
        return for_each_combination(after_m, s1, [&](const std::vector<int>& d1set) {
            std::vector<int> after_d1 = minus_sorted(after_m, d1set);
            return for_each_combination(after_d1, s2, [&](const std::vector<int>& d2set) {
                if (++result.candidates > candidate_cap) {
                    result.status = SearchStatus::truncated;
                    return true;
                }
                std::vector<int> rest = minus_sorted(after_d1, d2set);
                if (static_cast<int>(rest.size()) < 2) return false;

                std::vector<int> d1p = d1set, d2p = d2set;
                d1p.insert(d1p.end(), mset.begin(), mset.end());
                d2p.insert(d2p.end(), mset.begin(), mset.end());

                int seed = rest[0];
                std::vector<int> x1, x2{seed};
                std::set<GroupElement> vals;
                for (size_t i = 1; i < rest.size(); ++i) {
                    if (static_cast<int>(x1.size()) == lambda) break;
                    GroupElement v = pair_value(c, vc, d1, d2, d1p, d2p, rest[i], seed);
                    if (vals.insert(v).second) x1.push_back(rest[i]);
                }
                if (x1.empty()) return false;
                std::sort(x1.begin(), x1.end());
                for (size_t i = 1; i < rest.size(); ++i) {
                    if (static_cast<int>(vals.size()) >= lambda ||
                        static_cast<int>(x2.size()) == lambda)
                        break;
                    int w = rest[i];
                    if (std::binary_search(x1.begin(), x1.end(), w)) continue;
                    bool fresh = false;
                    std::vector<GroupElement> col;
                    col.reserve(x1.size());
                    for (int a : x1) {
                        col.push_back(pair_value(c, vc, d1, d2, d1p, d2p, a, w));
                        if (!vals.count(col.back())) fresh = true;
                    }
                    if (fresh) {
                        x2.push_back(w);
                        vals.insert(col.begin(), col.end());
                    }
                }
                if (static_cast<int>(vals.size()) < lambda) return false;

                std::set<int> core(mset.begin(), mset.end());
                core.insert(d1set.begin(), d1set.end());
                core.insert(d2set.begin(), d2set.end());
                core.insert(x1.begin(), x1.end());
                core.insert(x2.begin(), x2.end());
                std::vector<int> spares;
                for (int v : pool)
                    if (!core.count(v)) spares.push_back(v);
                std::vector<std::pair<int, int>> anchor_sizes =
                    zip_sizes(d1set, req.d1_sizes, "D1");
                auto z2 = zip_sizes(d2set, req.d2_sizes, "D2");
                auto zm = zip_sizes(mset, req.m_sizes, "M");
                anchor_sizes.insert(anchor_sizes.end(), z2.begin(), z2.end());
                anchor_sizes.insert(anchor_sizes.end(), zm.begin(), zm.end());
                auto bundles = allocate_bundles(spares, vc, anchor_sizes);
                if (!bundles) return false;

                Gadget g;
                g.d1 = d1;
                g.d2 = d2;
                g.m = m;
                g.lambda = lambda;
                g.d1_set = d1set;
                g.d2_set = d2set;
                g.m_set = mset;
                std::sort(x2.begin(), x2.end());
                g.x1 = std::move(x1);
                g.x2 = std::move(x2);
                g.bundles = std::move(*bundles);
                g.values.assign(vals.begin(), vals.end());
                result.gadget = std::move(g);
                result.status = SearchStatus::found;
                return true;
            });
        });
    });
    if (!stopped) result.status = SearchStatus::absent;
    return result;
}

GadgetSearch find_simple_gadget(const std::vector<int>& active, const EdgeColouring& c,
                                const VertexColouring& vc, int d, int lambda,
                                const std::vector<int>& bundle_sizes, long long candidate_cap) {
    if (lambda < 1) throw_validation("lambda must be >= 1");
    if (d < 1) throw_validation("star degree must be >= 1");
    std::vector<int> pool = active;
    std::sort(pool.begin(), pool.end());
    GadgetSearch result;
    const AbelianGroup& grp = c.group();

    bool stopped = for_each_combination(pool, d, [&](const std::vector<int>& star) {
        if (++result.candidates > candidate_cap) {
            result.status = SearchStatus::truncated;
            return true;
        }
        std::vector<int> rest = minus_sorted(pool, star);
        if (rest.empty()) return false;
        std::vector<int> x1;
        std::set<GroupElement> vals;
        for (int w : rest) {
            if (static_cast<int>(x1.size()) == lambda) break;
            GroupElement acc = grp.scalar_mul(d, vc.value(w));
            for (int u : star) acc = grp.add(acc, c.value(u, w));
            if (vals.insert(c.reduce(acc)).second) x1.push_back(w);
        }
        if (static_cast<int>(vals.size()) < lambda) return false;

        // The largest star vertex stands in for the pinned free endpoint; the
        // others are the fixed slots carrying bundles.
        std::vector<int> slots(star.begin(), star.end() - 1);
        std::set<int> core(star.begin(), star.end());
        core.insert(x1.begin(), x1.end());
        std::vector<int> spares;
        for (int v : pool)
            if (!core.count(v)) spares.push_back(v);
        auto bundles = allocate_bundles(spares, vc, zip_sizes(slots, bundle_sizes, "star"));
        if (!bundles) return false;

        Gadget g;
        g.simple = true;
        g.d1 = d;
        g.lambda = lambda;
        g.d1_set = slots;
        g.x1 = std::move(x1);
        g.x2 = {star.back()};
        g.bundles = std::move(*bundles);
        g.values.assign(vals.begin(), vals.end());
        result.gadget = std::move(g);
        result.status = SearchStatus::found;
        return true;
    });
    if (!stopped) result.status = SearchStatus::absent;
    return result;
}

WellBehavedTuple trivial_tuple(const VertexPool& r0, const AbelianGroup& g0) {
    WellBehavedTuple t;
    t.r = r0;
    t.gamma = Subgroup::whole(g0);
    t.t = {g0.zero()};
    t.vc = VertexColouring::constant(r0, g0, g0.zero());
    t.s = g0.zero();
    return t;
}

WellBehavedReport is_well_behaved(const WellBehavedTuple& t, long long kappa,
                                  const WellBehavedParams& params, const EdgeColouring& c0) {
    WellBehavedReport rep;
    const AbelianGroup& g = c0.group();
    const auto& ids = t.r.ids();
    for (size_t j = 1; j < ids.size() && rep.colour_clause; ++j)
        for (size_t i = 0; i < j; ++i) {
            GroupElement diff =
                g.sub(g.sub(g.sub(c0.value(ids[i], ids[j]), t.s), t.vc.value(ids[i])),
                      t.vc.value(ids[j]));
            if (!t.gamma.contains(diff)) {
                rep.colour_clause = false;
                rep.offending_pair = {ids[i], ids[j]};
                break;
            }
        }
    for (const auto& tv : t.t)
        if (!t.gamma.contains(g.scalar_mul(kappa, tv))) {
            rep.order_clause = false;
            rep.offending_t = tv;
            break;
        }

    long long r = t.r.size();
    long long gamma_order = t.gamma.size();
    long long d3 = static_cast<long long>(params.delta) * params.delta * params.delta;
    if (gamma_order * params.alpha >= params.n) {
        rep.size_clause = r + 14 * d3 * (params.n - gamma_order) >= params.pool_size;
    } else {
        // |R| >= |R0|/(alpha beta^{2D}) - 14 D^3 (n - |G|) - 6 D^2 (n/|G|),
        // compared exactly after scaling by |G| and the denominator.
        long long denom = params.alpha;
        for (int i = 0; i < 2 * params.delta; ++i) denom = sat_mul(denom, params.beta);
        __int128 lhs =
            (static_cast<__int128>(r) + 14 * d3 * (params.n - gamma_order)) * gamma_order +
            static_cast<__int128>(6) * params.delta * params.delta * params.n;
        rep.size_clause = lhs * denom >= static_cast<__int128>(params.pool_size) * gamma_order;
    }
    return rep;
}

WellBehavedTuple normalize_T(const WellBehavedTuple& t) {
    const AbelianGroup& g = t.gamma.parent();
    // Each Gamma'-coset keeps its smallest value already present in T.
    std::map<GroupElement, GroupElement> kept_by_coset;
    for (const auto& tv : t.t) {
        GroupElement key = Coset{tv, t.gamma}.canonical_rep();
        auto it = kept_by_coset.find(key);
        if (it == kept_by_coset.end() || tv < it->second) kept_by_coset[key] = tv;
    }
    WellBehavedTuple out = t;
    out.vc = VertexColouring::from_function(t.r, g, [&](int v) {
        return kept_by_coset.at(Coset{t.vc.value(v), t.gamma}.canonical_rep());
    });
    std::set<GroupElement> new_t;
    for (const auto& [key, kept] : kept_by_coset) new_t.insert(kept);
    out.t.assign(new_t.begin(), new_t.end());
    return out;
}

}  // namespace zsram
