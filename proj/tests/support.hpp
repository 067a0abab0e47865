#pragma once

// Shared test-side oracles. These deliberately re-derive results by brute
// force and must stay independent of the library code paths they check.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "zsram/abelian.hpp"

namespace test_support {

using zsram::AbelianGroup;
using zsram::GroupElement;

// Minimal t >= 1 with t*g = 0.
inline long long element_order(const AbelianGroup& g, const GroupElement& e) {
    GroupElement cur = e;
    long long t = 1;
    while (!(cur == g.zero())) {
        cur = g.add(cur, e);
        ++t;
    }
    return t;
}

inline std::map<long long, long long> order_multiset(const AbelianGroup& g) {
    std::map<long long, long long> hist;
    for (const auto& e : g.elements()) ++hist[element_order(g, e)];
    return hist;
}

// All subgroups of a small group, found by filtering every subset for the
// subgroup axioms. Exponential; keep |G| <= 16.
inline std::vector<std::vector<GroupElement>> subgroups_by_subset_filter(const AbelianGroup& g) {
    auto elems = g.elements();
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<GroupElement>> found;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<GroupElement> sub;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(elems[static_cast<size_t>(i)]);
        bool ok = std::binary_search(sub.begin(), sub.end(), g.zero());
        for (size_t i = 0; ok && i < sub.size(); ++i) {
            if (!std::binary_search(sub.begin(), sub.end(), g.neg(sub[i]))) ok = false;
            for (size_t j = 0; ok && j < sub.size(); ++j)
                if (!std::binary_search(sub.begin(), sub.end(), g.add(sub[i], sub[j]))) ok = false;
        }
        if (ok) found.push_back(sub);
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return found;
}

// Smallest k such that some k-subset generates the whole group.
inline int min_generating_set_size(const AbelianGroup& g) {
    auto elems = g.elements();
    int n = static_cast<int>(elems.size());
    if (g.order() == 1) return 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> idx(static_cast<size_t>(k));
        std::function<bool(int, int)> rec = [&](int pos, int start) {
            if (pos == k) {
                std::vector<GroupElement> gens;
                for (int i : idx) gens.push_back(elems[static_cast<size_t>(i)]);
                return zsram::generated_subgroup(g, gens).size() == g.order();
            }
            for (int i = start; i < n; ++i) {
                idx[static_cast<size_t>(pos)] = i;
                if (rec(pos + 1, i + 1)) return true;
            }
            return false;
        };
        if (rec(0, 0)) return k;
    }
    return n;
}

}  // namespace test_support
