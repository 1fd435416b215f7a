#pragma once

// Deliberately plain maximum product-free set search, kept independent of the
// library's branch-and-bound so the two can check each other.  Recursion over
// candidate elements in index order; each candidate is re-validated from
// scratch against the whole current set, with membership looked up in a flat
// flags array.

#include <cstdint>
#include <vector>

#include "qrg/group.hpp"

namespace qrg_test {

inline bool plain_product_free(const qrg::FiniteGroup& G, const std::vector<qrg::Elem>& S,
                               std::vector<char>& member) {
    std::fill(member.begin(), member.end(), 0);
    for (qrg::Elem x : S) member[x] = 1;
    for (qrg::Elem x : S)
        for (qrg::Elem y : S)
            if (member[G.mul(x, y)]) return false;
    return true;
}

inline void alpha_oracle_rec(const qrg::FiniteGroup& G, std::vector<qrg::Elem>& S,
                             qrg::Elem next, std::vector<char>& member,
                             std::size_t& best) {
    if (S.size() > best) best = S.size();
    for (qrg::Elem g = next; g < G.order(); ++g) {
        if (S.size() + (G.order() - g) <= best) return; // cannot beat best
        S.push_back(g);
        if (plain_product_free(G, S, member)) alpha_oracle_rec(G, S, g + 1, member, best);
        S.pop_back();
    }
}

// Maximum product-free set size, by exhaustive search over index-ordered
// subsets.  The identity never qualifies (e * e = e), so start at 1.
inline std::size_t alpha_oracle(const qrg::FiniteGroup& G) {
    std::vector<qrg::Elem> S;
    std::vector<char> member(G.order());
    std::size_t best = 0;
    alpha_oracle_rec(G, S, 1, member, best);
    return best;
}

} // namespace qrg_test
