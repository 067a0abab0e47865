#include "zsram/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "zsram/graphs.hpp"
#include "zsram/io.hpp"
#include "zsram/realization.hpp"

namespace zsram {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::string describe(const AbelianGroup& g) { return format_group(g); }

std::string describe_set(const std::vector<GroupElement>& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += format_element(s[i]);
    }
    return out + "}";
}

}  // namespace

std::vector<AbelianGroup> all_groups_up_to(int max_order) {
    std::vector<AbelianGroup> out;
    out.push_back(AbelianGroup());  // trivial
    for (int n = 2; n <= max_order; ++n) {
        // Per prime power p^a, a group is a partition of a; combine across primes.
        std::vector<std::pair<long long, int>> prime_powers;
        long long v = n;
        for (long long p = 2; p * p <= v; ++p) {
            if (v % p) continue;
            int a = 0;
            while (v % p == 0) {
                v /= p;
                ++a;
            }
            prime_powers.push_back({p, a});
        }
        if (v > 1) prime_powers.push_back({v, 1});
        std::vector<std::vector<int>> combos{{}};
        for (const auto& [p, a] : prime_powers) {
            std::vector<std::vector<int>> next;
            for (const auto& partition : partitions_of(a))
                for (const auto& base : combos) {
                    std::vector<int> moduli = base;
                    for (int part : partition) {
                        long long pw = 1;
                        for (int i = 0; i < part; ++i) pw *= p;
                        moduli.push_back(static_cast<int>(pw));
                    }
                    next.push_back(std::move(moduli));
                }
            combos = std::move(next);
        }
        for (const auto& moduli : combos) out.push_back(invariant_factors(moduli));
    }
    return out;
}

SuiteResult check_kneser(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "kneser";
    auto start = std::chrono::steady_clock::now();
    int max_order = opt.max_order > 0 ? opt.max_order : 8;
    for (const AbelianGroup& g : all_groups_up_to(max_order)) {
        int n = static_cast<int>(g.order());
        auto elems = g.elements();
        auto cache = enumerate_subgroups(g);
        for (unsigned ma = 1; ma < (1u << n); ++ma) {
            std::vector<GroupElement> a;
            for (int i = 0; i < n; ++i)
                if (ma & (1u << i)) a.push_back(elems[static_cast<size_t>(i)]);
            for (unsigned mb = 1; mb < (1u << n); ++mb) {
                std::vector<GroupElement> b;
                for (int i = 0; i < n; ++i)
                    if (mb & (1u << i)) b.push_back(elems[static_cast<size_t>(i)]);
                ++res.cases;
                if (!kneser_check(g, a, b, &cache).holds()) {
                    res.detail = describe(g) + " A=" + describe_set(a) + " B=" + describe_set(b);
                    res.seconds = seconds_since(start);
                    return res;
                }
            }
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_psi(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "psi";
    auto start = std::chrono::steady_clock::now();
    int max_order = opt.max_order > 0 ? opt.max_order : 16;
    std::mt19937_64 rng(opt.seed);
    for (const AbelianGroup& g : all_groups_up_to(max_order)) {
        for (const Subgroup& hp : enumerate_subgroups(g)) {
            QuotientGroup q(g, hp);
            for (const auto& hsub : enumerate_quotient_subgroups(q)) {
                ++res.cases;
                Subgroup lifted = psi(q, hsub);
                if (lifted.size() != static_cast<long long>(hsub.size()) * hp.size()) {
                    res.detail = describe(g) + ": |psi| != |H|*|H'|";
                    res.seconds = seconds_since(start);
                    return res;
                }
                // Representative independence: translate every rep by some
                // divisor element, deterministically and randomly.
                for (int trial = 0; trial < 3; ++trial) {
                    std::vector<GroupElement> alt;
                    alt.reserve(hsub.size());
                    for (size_t i = 0; i < hsub.size(); ++i) {
                        size_t pick = trial < 2
                                          ? (i * (trial + 1)) % hp.elements().size()
                                          : static_cast<size_t>(rng() % hp.elements().size());
                        alt.push_back(g.add(hsub[i], hp.elements()[pick]));
                    }
                    Subgroup again = psi(q, alt);
                    if (!(again.elements() == lifted.elements())) {
                        res.detail = describe(g) + ": psi depends on representatives";
                        res.seconds = seconds_since(start);
                        return res;
                    }
                }
            }
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_algebra2(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "algebra2";
    auto start = std::chrono::steady_clock::now();
    int max_order = opt.max_order > 0 ? opt.max_order : 16;
    std::mt19937_64 rng(opt.seed);
    auto groups = all_groups_up_to(max_order);
    for (const AbelianGroup& g : groups) {
        auto elems = g.elements();
        int n = static_cast<int>(elems.size());
        std::vector<long long> kappas;
        for (long long k = 1; k <= g.exponent(); ++k)
            if (g.exponent() % k == 0) kappas.push_back(k);
        // Exhaustive subsets up to max_x.
        std::vector<std::vector<GroupElement>> subsets{{}};
        std::function<void(int, std::vector<GroupElement>&)> rec = [&](int from,
                                                                       std::vector<GroupElement>&
                                                                           cur) {
            if (static_cast<int>(cur.size()) == opt.max_x) return;
            for (int i = from; i < n; ++i) {
                cur.push_back(elems[static_cast<size_t>(i)]);
                subsets.push_back(cur);
                rec(i + 1, cur);
                cur.pop_back();
            }
        };
        std::vector<GroupElement> cur;
        rec(0, cur);
        for (long long kappa : kappas)
            for (const auto& x : subsets) {
                ++res.cases;
                auto rep = generated_bound_check(g, kappa, x);
                if (!rep.pass) {
                    res.detail = describe(g) + " kappa=" + std::to_string(kappa) +
                                 " X=" + describe_set(x);
                    res.seconds = seconds_since(start);
                    return res;
                }
            }
    }
    long long random_cases = opt.random_cases > 0 ? opt.random_cases : 10'000;
    for (long long i = 0; i < random_cases; ++i) {
        const AbelianGroup& g = groups[1 + rng() % (groups.size() - 1)];
        auto elems = g.elements();
        std::vector<GroupElement> x;
        for (int j = 0; j < 4; ++j)
            x.push_back(elems[static_cast<size_t>(rng() % elems.size())]);
        long long kappa = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(
                                                         g.exponent()));
        ++res.cases;
        auto rep = generated_bound_check(g, kappa, x);
        if (!rep.pass) {
            res.detail = describe(g) + " kappa=" + std::to_string(kappa) + " X=" +
                         describe_set(x);
            res.seconds = seconds_since(start);
            return res;
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_egz(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "egz";
    auto start = std::chrono::steady_clock::now();
    auto verify = [&](int m, const std::vector<int>& seq) {
        auto w = egz_witness(m, seq);
        if (!w) return false;
        if (static_cast<int>(w->size()) != m) return false;
        int sum = 0;
        int prev = -1;
        for (int idx : *w) {
            if (idx <= prev || idx >= static_cast<int>(seq.size())) return false;
            prev = idx;
            sum = (sum + seq[static_cast<size_t>(idx)]) % m;
        }
        return sum == 0;
    };
    // Exhaustive at m = 4 over all 4^7 sequences of length 2m-1.
    {
        int m = 4, len = 7;
        std::vector<int> seq(static_cast<size_t>(len), 0);
        while (true) {
            ++res.cases;
            if (!verify(m, seq)) {
                res.detail = "m=4 seq index " + std::to_string(res.cases - 1);
                res.seconds = seconds_since(start);
                return res;
            }
            size_t pos = seq.size();
            bool done = true;
            while (pos-- > 0) {
                if (++seq[pos] < m) {
                    done = false;
                    break;
                }
                seq[pos] = 0;
            }
            if (done) break;
        }
    }
    long long random_cases = opt.random_cases > 0 ? opt.random_cases : 100'000;
    std::mt19937_64 rng(opt.seed);
    for (int m : {5, 6})
        for (long long i = 0; i < random_cases; ++i) {
            std::vector<int> seq(static_cast<size_t>(2 * m - 1));
            for (auto& v : seq) v = static_cast<int>(rng() % static_cast<unsigned>(m));
            ++res.cases;
            if (!verify(m, seq)) {
                res.detail = "m=" + std::to_string(m) + " random case " + std::to_string(i);
                res.seconds = seconds_since(start);
                return res;
            }
        }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_lemma33(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "lemma33";
    auto start = std::chrono::steady_clock::now();
    int max_order = opt.max_order > 0 ? opt.max_order : 12;
    for (const AbelianGroup& g : all_groups_up_to(max_order)) {
        int n = static_cast<int>(g.order());
        auto elems = g.elements();
        for (const Subgroup& h : enumerate_subgroups(g)) {
            QuotientGroup q(g, h);
            // coset class of every element, for the cover test
            std::vector<int> klass(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                klass[static_cast<size_t>(i)] = q.rep_index(elems[static_cast<size_t>(i)]);
            long long cosets = q.size();
            for (unsigned mb = 1; mb < (1u << n); ++mb) {
                std::set<int> hit;
                std::vector<GroupElement> b;
                for (int i = 0; i < n; ++i)
                    if (mb & (1u << i)) {
                        hit.insert(klass[static_cast<size_t>(i)]);
                        b.push_back(elems[static_cast<size_t>(i)]);
                    }
                if (static_cast<long long>(hit.size()) != cosets) continue;
                for (const auto& r : elems) {
                    ++res.cases;
                    std::vector<GroupElement> a = Coset{r, h}.elements();
                    if (static_cast<long long>(sumset(g, a, b).size()) != g.order()) {
                        res.detail = describe(g) + " H size " + std::to_string(h.size()) +
                                     " r=" + format_element(r) + " B=" + describe_set(b);
                        res.seconds = seconds_since(start);
                        return res;
                    }
                }
            }
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_invariant_factors(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "invariant-factors";
    auto start = std::chrono::steady_clock::now();
    int max_order = opt.max_order > 0 ? opt.max_order : 64;

    auto order_multiset = [](const AbelianGroup& g) {
        std::map<long long, long long> hist;
        for (const auto& e : g.elements()) {
            GroupElement cur = e;
            long long t = 1;
            while (!(cur == g.zero())) {
                cur = g.add(cur, e);
                ++t;
            }
            ++hist[t];
        }
        return hist;
    };

    // All moduli lists (non-decreasing, each >= 2) with product <= max_order.
    std::vector<std::vector<int>> inputs;
    std::function<void(long long, int, std::vector<int>&)> rec =
        [&](long long product, int min_factor, std::vector<int>& cur) {
            if (!cur.empty()) inputs.push_back(cur);
            for (int f = min_factor; product * f <= max_order; ++f) {
                cur.push_back(f);
                rec(product * f, f, cur);
                cur.pop_back();
            }
        };
    std::vector<int> cur;
    rec(1, 2, cur);

    for (const auto& moduli : inputs) {
        ++res.cases;
        AbelianGroup raw(moduli);
        AbelianGroup canon = invariant_factors(moduli);
        if (!canon.invariant_factor_form() || canon.order() != raw.order() ||
            order_multiset(raw) != order_multiset(canon)) {
            res.detail = "input " + describe(raw);
            res.seconds = seconds_since(start);
            return res;
        }
    }

    // Factor count = minimum generating set size (brute force), order <= 16.
    for (const AbelianGroup& g : all_groups_up_to(std::min(max_order, 16))) {
        ++res.cases;
        auto elems = g.elements();
        int n = static_cast<int>(elems.size());
        int expect = static_cast<int>(g.moduli().size());
        int found = -1;
        for (int k = 0; k <= n && found < 0; ++k) {
            std::vector<int> idx(static_cast<size_t>(k));
            std::function<bool(int, int)> pick = [&](int pos, int from) {
                if (pos == k) {
                    std::vector<GroupElement> gens;
                    for (int i : idx) gens.push_back(elems[static_cast<size_t>(i)]);
                    return generated_subgroup(g, gens).size() == g.order();
                }
                for (int i = from; i < n; ++i) {
                    idx[static_cast<size_t>(pos)] = i;
                    if (pick(pos + 1, i + 1)) return true;
                }
                return false;
            };
            if (pick(0, 0)) found = k;
        }
        if (found != expect) {
            res.detail = describe(g) + " min generators " + std::to_string(found);
            res.seconds = seconds_since(start);
            return res;
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_blueprints(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "blueprints";
    auto start = std::chrono::steady_clock::now();
    int count = opt.count > 0 ? opt.count : 20;
    for (int i = 0; i < count; ++i) {
        ++res.cases;
        Graph g = random_regular(opt.degree, opt.vertices, opt.seed + static_cast<unsigned>(i));
        BlueprintPlan plan = extract_blueprints(g);
        PlanChecks checks = check_plan(plan);
        bool bound_applies = g.edge_count() >= 2 * static_cast<long long>(std::pow(
                                                      g.max_degree(), 7));
        if (!checks.all() || (bound_applies && !checks.size_bound_applicable)) {
            res.detail = "instance " + std::to_string(i);
            res.seconds = seconds_since(start);
            return res;
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult check_realization_oracle(const SuiteOptions& opt) {
    SuiteResult res;
    res.name = "realization-oracle";
    auto start = std::chrono::steady_clock::now();
    int count = opt.count > 0 ? opt.count : 200;
    std::mt19937_64 rng(opt.seed);
    for (int instance = 0; instance < count; ++instance) {
        AbelianGroup g = instance % 3 == 0
                             ? AbelianGroup({8})
                             : (instance % 3 == 1 ? AbelianGroup({2, 4}) : AbelianGroup({6}));
        int grid_count = 1 + static_cast<int>(rng() % 4);
        std::vector<FreeGrid> grids;
        for (int t = 0; t < grid_count; ++t) {
            FreeGrid grid;
            grid.vertex_a = 100 + 2 * t;
            grid.vertex_b = 101 + 2 * t;
            int wa = 1 + static_cast<int>(rng() % 3), wb = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < wa; ++i) grid.options_a.push_back(16 * t + i);
            for (int j = 0; j < wb; ++j) grid.options_b.push_back(16 * t + 8 + j);
            for (int i = 0; i < wa; ++i) {
                std::vector<GroupElement> row;
                for (int j = 0; j < wb; ++j)
                    row.push_back(g.element_at(static_cast<long long>(
                        rng() % static_cast<unsigned long long>(g.order()))));
                grid.values.push_back(std::move(row));
            }
            grids.push_back(std::move(grid));
        }
        GroupElement base = g.element_at(
            static_cast<long long>(rng() % static_cast<unsigned long long>(g.order())));
        Realization r = Realization::from_parts(g, {}, std::move(grids), base);

        // Brute force over every family member.
        std::set<GroupElement> expect;
        std::function<void(size_t, GroupElement)> enumerate = [&](size_t t, GroupElement acc) {
            if (t == r.grids().size()) {
                expect.insert(acc);
                return;
            }
            for (const auto& row : r.grids()[t].values)
                for (const auto& v : row) enumerate(t + 1, g.add(acc, v));
        };
        enumerate(0, base);

        auto vs = r.value_set();
        ++res.cases;
        if (std::set<GroupElement>(vs.begin(), vs.end()) != expect) {
            res.detail = "value set mismatch at instance " + std::to_string(instance);
            res.seconds = seconds_since(start);
            return res;
        }
        for (const auto& target : vs) {
            auto choice = extract_function(r, target);
            bool ok = choice.has_value();
            if (ok) {
                GroupElement acc = base;
                for (size_t t = 0; t < r.grids().size(); ++t) {
                    auto [i, j] = choice->picks[t];
                    acc = g.add(acc, r.grids()[t].values[static_cast<size_t>(i)]
                                                        [static_cast<size_t>(j)]);
                }
                ok = acc == target;
            }
            if (!ok) {
                res.detail = "extract round-trip failed at instance " + std::to_string(instance);
                res.seconds = seconds_since(start);
                return res;
            }
        }
    }
    res.pass = true;
    res.seconds = seconds_since(start);
    return res;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
    if (name == "kneser") return check_kneser(opt);
    if (name == "psi") return check_psi(opt);
    if (name == "algebra2") return check_algebra2(opt);
    if (name == "egz") return check_egz(opt);
    if (name == "lemma33") return check_lemma33(opt);
    if (name == "invariant-factors") return check_invariant_factors(opt);
    if (name == "blueprints") return check_blueprints(opt);
    if (name == "realization-oracle") return check_realization_oracle(opt);
    throw_validation("unknown check suite: " + name);
}

std::vector<std::string> suite_names() {
    return {"kneser",  "psi",     "algebra2",   "egz",
            "lemma33", "invariant-factors", "blueprints", "realization-oracle"};
}

}  // namespace zsram
