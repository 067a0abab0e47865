#include "zsram/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace zsram {

namespace {

long long checked_product(const std::vector<int>& moduli) {
    long long p = 1;
    for (int m : moduli) {
        if (m < 2) throw_validation("cyclic factor modulus must be >= 2, got " + std::to_string(m));
        p *= m;
        if (p > (1LL << 40)) throw_capacity("group order overflow");
    }
    return p;
}

int mod_reduce(long long v, int m) {
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

// Dense-position workers shared by the full-group and quotient paths.
// Elements are identified with indices 0..n-1; `add` and `neg` operate on
// indices, and index order is lexicographic element order in both cases.

template <class Add>
std::vector<int> closure_positions(int n, int zero, Add&& add, const std::vector<int>& gens) {
    std::vector<char> in(n, 0);
    std::vector<int> members;
    in[zero] = 1;
    members.push_back(zero);
    std::vector<int> frontier{zero};
    // Fold generators in one at a time; each round closes under +g.
    for (int g : gens) {
        if (in[g]) continue;
        for (size_t i = 0; i < members.size(); ++i) {
            int cur = members[i];
            int nxt = add(cur, g);
            while (!in[nxt]) {
                in[nxt] = 1;
                members.push_back(nxt);
                nxt = add(nxt, g);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

template <class Add, class Neg>
std::vector<std::vector<int>> all_subgroup_positions(int n, int zero, Add&& add, Neg&& neg) {
    // BFS over the subgroup lattice: extend each known subgroup by one new
    // generator and deduplicate on the member list.
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    std::vector<int> triv{zero};
    seen.insert(triv);
    queue.push_back(triv);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> base = queue[qi];
        std::vector<char> in_base(n, 0);
        for (int e : base) in_base[e] = 1;
        for (int g = 0; g < n; ++g) {
            if (in_base[g]) continue;
            std::vector<int> ext = closure_positions(n, zero, add, [&] {
                std::vector<int> gens = base;
                gens.push_back(g);
                return gens;
            }());
            if (seen.insert(ext).second) queue.push_back(ext);
        }
    }
    (void)neg;
    std::vector<std::vector<int>> out(queue.begin(), queue.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// Largest-subgroup coset a+H contained in S; subgroups supplied sorted by
// (size asc, lex asc); ties by enumeration order, then smallest rep.
template <class Add>
std::optional<std::pair<int, const std::vector<int>*>> find_coset_positions(
    int n, const std::vector<char>& in_s, const std::vector<std::vector<int>>& subgroups,
    Add&& add) {
    size_t best_size = 0;
    for (const auto& h : subgroups) best_size = std::max(best_size, h.size());
    for (size_t target = best_size; target >= 2; --target) {
        for (const auto& h : subgroups) {
            if (h.size() != target) continue;
            for (int a = 0; a < n; ++a) {
                bool ok = true;
                for (int e : h) {
                    if (!in_s[add(a, e)]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return std::make_pair(a, &h);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<int> moduli)
    : moduli_(std::move(moduli)), order_(checked_product(moduli_)) {}

long long AbelianGroup::exponent() const {
    long long l = 1;
    for (int m : moduli_) l = std::lcm(l, static_cast<long long>(m));
    return l;
}

bool AbelianGroup::invariant_factor_form() const {
    for (size_t i = 0; i + 1 < moduli_.size(); ++i)
        if (moduli_[i + 1] % moduli_[i] != 0) return false;
    return true;
}

bool AbelianGroup::valid(const GroupElement& e) const {
    if (e.residues.size() != moduli_.size()) return false;
    for (size_t i = 0; i < moduli_.size(); ++i)
        if (e.residues[i] < 0 || e.residues[i] >= moduli_[i]) return false;
    return true;
}

void AbelianGroup::require(const GroupElement& e) const {
    if (!valid(e)) throw_structural("element does not belong to this group");
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    require(a);
    require(b);
    GroupElement r = a;
    for (size_t i = 0; i < moduli_.size(); ++i)
        r.residues[i] = mod_reduce(static_cast<long long>(a.residues[i]) + b.residues[i], moduli_[i]);
    return r;
}

GroupElement AbelianGroup::neg(const GroupElement& a) const {
    require(a);
    GroupElement r = a;
    for (size_t i = 0; i < moduli_.size(); ++i)
        r.residues[i] = mod_reduce(-static_cast<long long>(a.residues[i]), moduli_[i]);
    return r;
}

GroupElement AbelianGroup::scalar_mul(long long k, const GroupElement& g) const {
    require(g);
    GroupElement r = g;
    for (size_t i = 0; i < moduli_.size(); ++i) {
        long long kk = mod_reduce(k, moduli_[i]);
        r.residues[i] = mod_reduce(kk * g.residues[i], moduli_[i]);
    }
    return r;
}

long long AbelianGroup::index_of(const GroupElement& e) const {
    require(e);
    long long idx = 0;
    for (size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + e.residues[i];
    return idx;
}

GroupElement AbelianGroup::element_at(long long idx) const {
    if (idx < 0 || idx >= order_) throw_structural("element index out of range");
    GroupElement e = zero();
    for (size_t i = moduli_.size(); i-- > 0;) {
        e.residues[i] = static_cast<int>(idx % moduli_[i]);
        idx /= moduli_[i];
    }
    return e;
}

std::vector<GroupElement> AbelianGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<size_t>(order_));
    for (long long i = 0; i < order_; ++i) out.push_back(element_at(i));
    return out;
}

AbelianGroup invariant_factors(const std::vector<int>& moduli) {
    checked_product(moduli);
    // Collect per-prime exponent multisets, sorted descending.
    std::map<long long, std::vector<int>> prime_exps;
    for (int m : moduli) {
        long long v = m;
        for (long long p = 2; p * p <= v; ++p) {
            if (v % p) continue;
            int e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            prime_exps[p].push_back(e);
        }
        if (v > 1) prime_exps[v].push_back(1);
    }
    size_t layers = 0;
    for (auto& [p, exps] : prime_exps) {
        std::sort(exps.rbegin(), exps.rend());
        layers = std::max(layers, exps.size());
    }
    // Invariant factor j (from the largest down) multiplies the j-th largest
    // prime power of every prime.
    std::vector<int> factors;
    for (size_t j = 0; j < layers; ++j) {
        long long f = 1;
        for (const auto& [p, exps] : prime_exps)
            if (j < exps.size())
                for (int t = 0; t < exps[j]; ++t) f *= p;
        factors.push_back(static_cast<int>(f));
    }
    std::reverse(factors.begin(), factors.end());  // ascending: m1 | m2 | ...
    return AbelianGroup(factors);
}

Subgroup Subgroup::trivial(const AbelianGroup& g) { return Subgroup(g, {g.zero()}); }

Subgroup Subgroup::whole(const AbelianGroup& g) { return Subgroup(g, g.elements()); }

Subgroup Subgroup::from_elements(const AbelianGroup& g, std::vector<GroupElement> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (const auto& e : elems) g.require(e);
    Subgroup s(g, std::move(elems));
    if (!s.contains(g.zero())) throw_structural("subgroup must contain zero");
    for (const auto& a : s.elements_) {
        if (!s.contains(g.neg(a))) throw_structural("subgroup not closed under negation");
        for (const auto& b : s.elements_)
            if (!s.contains(g.add(a, b))) throw_structural("subgroup not closed under addition");
    }
    if (g.order() % s.size() != 0) throw_structural("subgroup size violates Lagrange");
    return s;
}

bool Subgroup::contains(const GroupElement& e) const {
    return std::binary_search(elements_.begin(), elements_.end(), e);
}

bool Subgroup::contains_all(const Subgroup& other) const {
    for (const auto& e : other.elements())
        if (!contains(e)) return false;
    return true;
}

Subgroup generated_subgroup(const AbelianGroup& g, const std::vector<GroupElement>& gens) {
    for (const auto& e : gens) g.require(e);
    if (g.order() > (1LL << 31)) throw_capacity("group too large for explicit closure");
    int n = static_cast<int>(g.order());
    std::vector<int> gpos;
    gpos.reserve(gens.size());
    for (const auto& e : gens) gpos.push_back(static_cast<int>(g.index_of(e)));
    auto add = [&](int a, int b) {
        return static_cast<int>(g.index_of(g.add(g.element_at(a), g.element_at(b))));
    };
    std::vector<int> members =
        closure_positions(n, static_cast<int>(g.index_of(g.zero())), add, gpos);
    std::vector<GroupElement> elems;
    elems.reserve(members.size());
    for (int p : members) elems.push_back(g.element_at(p));
    return Subgroup(g, std::move(elems));
}

std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& g, long long order_cap) {
    if (g.order() > order_cap)
        throw_capacity("group order " + std::to_string(g.order()) +
                       " above subgroup enumeration cap " + std::to_string(order_cap));
    int n = static_cast<int>(g.order());
    auto add = [&](int a, int b) {
        return static_cast<int>(g.index_of(g.add(g.element_at(a), g.element_at(b))));
    };
    auto neg = [&](int a) { return static_cast<int>(g.index_of(g.neg(g.element_at(a)))); };
    auto subs = all_subgroup_positions(n, 0, add, neg);
    std::vector<Subgroup> out;
    out.reserve(subs.size());
    for (const auto& pos : subs) {
        std::vector<GroupElement> elems;
        elems.reserve(pos.size());
        for (int p : pos) elems.push_back(g.element_at(p));
        out.push_back(Subgroup::from_elements(g, std::move(elems)));
    }
    return out;
}

bool Coset::contains(const GroupElement& e) const {
    return subgroup.contains(subgroup.parent().sub(e, representative));
}

GroupElement Coset::canonical_rep() const {
    GroupElement best = representative;
    for (const auto& h : subgroup.elements()) {
        GroupElement cand = subgroup.parent().add(representative, h);
        if (cand < best) best = cand;
    }
    return best;
}

std::vector<GroupElement> Coset::elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<size_t>(subgroup.size()));
    for (const auto& h : subgroup.elements()) out.push_back(subgroup.parent().add(representative, h));
    std::sort(out.begin(), out.end());
    return out;
}

bool Coset::same_coset(const Coset& o) const {
    return subgroup == o.subgroup && contains(o.representative);
}

QuotientGroup::QuotientGroup(const AbelianGroup& parent, const Subgroup& divisor)
    : parent_(parent), universe_(Subgroup::whole(parent)), divisor_(divisor) {
    build();
}

QuotientGroup::QuotientGroup(const Subgroup& universe, const Subgroup& divisor)
    : parent_(universe.parent()), universe_(universe), divisor_(divisor) {
    build();
}

void QuotientGroup::build() {
    if (!(divisor_.parent() == parent_)) throw_structural("divisor from a different group");
    for (const auto& e : divisor_.elements())
        if (!universe_.contains(e)) throw_structural("divisor not contained in the carrier");
    // Each coset's canonical representative is its lexicographically smallest
    // member; sweep the carrier in sorted order so the first visit wins.
    for (const auto& e : universe_.elements()) {
        if (rep_of_.count(e)) continue;
        int idx = static_cast<int>(reps_.size());
        reps_.push_back(e);
        for (const auto& h : divisor_.elements()) {
            GroupElement member = parent_.add(e, h);
            if (!universe_.contains(member))
                throw_structural("carrier not closed under the divisor");
            rep_of_[member] = idx;
        }
    }
    if (static_cast<long long>(reps_.size()) * divisor_.size() != universe_.size())
        throw_internal("quotient size mismatch");
}

GroupElement QuotientGroup::project(const GroupElement& e) const {
    auto it = rep_of_.find(e);
    if (it == rep_of_.end()) throw_structural("element outside the quotient carrier");
    return reps_[static_cast<size_t>(it->second)];
}

int QuotientGroup::rep_index(const GroupElement& e) const {
    auto it = rep_of_.find(e);
    if (it == rep_of_.end()) throw_structural("element outside the quotient carrier");
    return it->second;
}

std::vector<std::vector<GroupElement>> enumerate_quotient_subgroups(const QuotientGroup& q,
                                                                    long long order_cap) {
    if (q.size() > order_cap) throw_capacity("quotient order above subgroup enumeration cap");
    int n = static_cast<int>(q.size());
    auto add = [&](int a, int b) { return q.rep_index(q.parent().add(q.reps()[a], q.reps()[b])); };
    auto neg = [&](int a) { return q.rep_index(q.parent().neg(q.reps()[a])); };
    auto subs = all_subgroup_positions(n, q.rep_index(q.zero()), add, neg);
    std::vector<std::vector<GroupElement>> out;
    out.reserve(subs.size());
    for (const auto& pos : subs) {
        std::vector<GroupElement> elems;
        elems.reserve(pos.size());
        for (int p : pos) elems.push_back(q.reps()[static_cast<size_t>(p)]);
        out.push_back(std::move(elems));
    }
    return out;
}

Subgroup psi(const QuotientGroup& q, const std::vector<GroupElement>& subgroup_of_quotient) {
    // Union of the cosets a_i + H'; validity of the input (a subgroup of the
    // quotient) is established by checking the union is itself a subgroup.
    std::vector<GroupElement> elems;
    std::set<GroupElement> seen_reps;
    for (const auto& a : subgroup_of_quotient) {
        GroupElement rep = q.project(a);
        if (!seen_reps.insert(rep).second)
            throw_structural("duplicate coset among quotient subgroup representatives");
        for (const auto& h : q.divisor().elements()) elems.push_back(q.parent().add(a, h));
    }
    std::sort(elems.begin(), elems.end());
    Subgroup result = [&] {
        try {
            return Subgroup::from_elements(q.parent(), elems);
        } catch (const Error&) {
            throw_structural("input is not a subgroup of the quotient");
        }
    }();
    if (result.size() !=
        static_cast<long long>(subgroup_of_quotient.size()) * q.divisor().size())
        throw_structural("input is not a subgroup of the quotient (size mismatch)");
    return result;
}

std::vector<GroupElement> sumset(const AbelianGroup& g, const std::vector<GroupElement>& a,
                                 const std::vector<GroupElement>& b) {
    std::set<GroupElement> out;
    for (const auto& x : a)
        for (const auto& y : b) out.insert(g.add(x, y));
    return {out.begin(), out.end()};
}

KneserReport kneser_check(const AbelianGroup& g, const std::vector<GroupElement>& a,
                          const std::vector<GroupElement>& b,
                          const std::vector<Subgroup>* subgroup_cache) {
    if (a.empty() || b.empty()) throw_validation("kneser_check requires nonempty sets");
    std::set<GroupElement> ua(a.begin(), a.end()), ub(b.begin(), b.end());
    std::vector<GroupElement> s = sumset(g, {ua.begin(), ua.end()}, {ub.begin(), ub.end()});
    KneserReport rep;
    rep.sumset_size = static_cast<long long>(s.size());
    long long floor = std::min(g.order(), static_cast<long long>(ua.size() + ub.size()) - 1);
    rep.cardinality = rep.sumset_size >= floor;
    rep.coset = find_coset_in(s, g, subgroup_cache);
    return rep;
}

std::optional<std::pair<GroupElement, Subgroup>> find_coset_in(
    const std::vector<GroupElement>& s, const AbelianGroup& g,
    const std::vector<Subgroup>* subgroup_cache) {
    int n = static_cast<int>(g.order());
    std::vector<char> in_s(static_cast<size_t>(n), 0);
    for (const auto& e : s) in_s[static_cast<size_t>(g.index_of(e))] = 1;
    std::vector<Subgroup> computed;
    if (!subgroup_cache) {
        computed = enumerate_subgroups(g);
        subgroup_cache = &computed;
    }
    const auto& subs = *subgroup_cache;
    std::vector<std::vector<int>> sub_pos;
    sub_pos.reserve(subs.size());
    for (const auto& h : subs) {
        std::vector<int> pos;
        pos.reserve(static_cast<size_t>(h.size()));
        for (const auto& e : h.elements()) pos.push_back(static_cast<int>(g.index_of(e)));
        sub_pos.push_back(std::move(pos));
    }
    auto add = [&](int x, int y) {
        return static_cast<int>(g.index_of(g.add(g.element_at(x), g.element_at(y))));
    };
    auto hit = find_coset_positions(n, in_s, sub_pos, add);
    if (!hit) return std::nullopt;
    size_t which = static_cast<size_t>(hit->second - sub_pos.data());
    return std::make_pair(g.element_at(hit->first), subs[which]);
}

std::optional<QuotientCoset> find_coset_in(const std::vector<GroupElement>& s_reps,
                                           const QuotientGroup& q) {
    int n = static_cast<int>(q.size());
    std::vector<char> in_s(static_cast<size_t>(n), 0);
    for (const auto& e : s_reps) in_s[static_cast<size_t>(q.rep_index(e))] = 1;
    auto subs = enumerate_quotient_subgroups(q);
    std::vector<std::vector<int>> sub_pos;
    sub_pos.reserve(subs.size());
    for (const auto& h : subs) {
        std::vector<int> pos;
        pos.reserve(h.size());
        for (const auto& e : h) pos.push_back(q.rep_index(e));
        sub_pos.push_back(std::move(pos));
    }
    auto add = [&](int x, int y) {
        return q.rep_index(q.parent().add(q.reps()[static_cast<size_t>(x)],
                                          q.reps()[static_cast<size_t>(y)]));
    };
    auto hit = find_coset_positions(n, in_s, sub_pos, add);
    if (!hit) return std::nullopt;
    size_t which = static_cast<size_t>(hit->second - sub_pos.data());
    return QuotientCoset{q.reps()[static_cast<size_t>(hit->first)], subs[which]};
}

long long order_kappa_count(const AbelianGroup& g, long long kappa) {
    if (kappa < 1) throw_validation("kappa must be >= 1");
    long long count = 1;
    for (int m : g.moduli()) count *= std::gcd(kappa, static_cast<long long>(m));
    return count;
}

BoundReport generated_bound_check(const AbelianGroup& g, long long kappa,
                                  const std::vector<GroupElement>& x) {
    BoundReport rep;
    rep.kappa = kappa;
    rep.x = static_cast<long long>(x.size());
    rep.group_order = g.order();
    rep.generated_size = generated_subgroup(g, x).size();
    rep.kappa_count = order_kappa_count(g, kappa);
    __int128 lhs = static_cast<__int128>(rep.generated_size) * rep.kappa_count;
    __int128 rhs = rep.group_order;
    for (long long i = 0; i < rep.x; ++i) rhs *= kappa;
    rep.pass = lhs <= rhs;
    return rep;
}

std::optional<std::vector<int>> egz_witness(int m, const std::vector<int>& seq) {
    if (m < 1) throw_validation("modulus must be >= 1");
    for (int v : seq)
        if (v < 0 || v >= m) throw_validation("residue out of range");
    int len = static_cast<int>(seq.size());
    if (len < m) return std::nullopt;
    // feasible[i][k][r]: some k indices in seq[i..] sum to r (mod m).
    std::vector<std::vector<std::vector<char>>> feasible(
        static_cast<size_t>(len) + 1,
        std::vector<std::vector<char>>(static_cast<size_t>(m) + 1,
                                       std::vector<char>(static_cast<size_t>(m), 0)));
    feasible[static_cast<size_t>(len)][0][0] = 1;
    for (int i = len - 1; i >= 0; --i)
        for (int k = 0; k <= m; ++k)
            for (int r = 0; r < m; ++r) {
                bool ok = feasible[static_cast<size_t>(i) + 1][static_cast<size_t>(k)]
                                  [static_cast<size_t>(r)];
                if (!ok && k > 0)
                    ok = feasible[static_cast<size_t>(i) + 1][static_cast<size_t>(k) - 1]
                                 [static_cast<size_t>(((r - seq[static_cast<size_t>(i)]) % m + m) % m)];
                feasible[static_cast<size_t>(i)][static_cast<size_t>(k)][static_cast<size_t>(r)] =
                    ok;
            }
    if (!feasible[0][static_cast<size_t>(m)][0]) return std::nullopt;
    // Greedy: taking the earliest feasible index at each step yields the
    // lexicographically smallest index set.
    std::vector<int> picked;
    int need = m, residue = 0;
    for (int i = 0; i < len && need > 0; ++i) {
        int rest = ((0 - residue - seq[static_cast<size_t>(i)]) % m + m) % m;
        if (feasible[static_cast<size_t>(i) + 1][static_cast<size_t>(need) - 1]
                    [static_cast<size_t>(rest)]) {
            picked.push_back(i);
            residue = (residue + seq[static_cast<size_t>(i)]) % m;
            --need;
        }
    }
    if (need != 0) throw_internal("egz reconstruction failed");
    return picked;
}

}  // namespace zsram
