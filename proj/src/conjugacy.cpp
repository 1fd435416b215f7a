#include "qrg/conjugacy.hpp"

#include <algorithm>
#include <numeric>

namespace qrg {

ConjClasses conjugacy_classes(const FiniteGroup& G) {
    const std::uint64_t n = G.order();
    std::vector<std::uint32_t> cls(n, UINT32_MAX);
    std::vector<std::vector<Elem>> members;

    // Conjugation orbits: closing under the generators suffices because
    // conjugation by a product is the composition of conjugations.
    for (Elem g = 0; g < n; ++g) {
        if (cls[g] != UINT32_MAX) continue;
        std::uint32_t id = static_cast<std::uint32_t>(members.size());
        std::vector<Elem> orbit = {g};
        cls[g] = id;
        for (std::size_t head = 0; head < orbit.size(); ++head)
            for (Elem s : G.generators()) {
                Elem c = G.mul(G.mul(s, orbit[head]), G.inv(s));
                if (cls[c] == UINT32_MAX) {
                    cls[c] = id;
                    orbit.push_back(c);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        members.push_back(std::move(orbit));
    }

    std::vector<std::uint32_t> idx(members.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::uint64_t> ord(members.size());
    for (std::size_t c = 0; c < members.size(); ++c)
        ord[c] = G.element_order(members[c][0]);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (ord[a] != ord[b]) return ord[a] < ord[b];
        if (members[a].size() != members[b].size())
            return members[a].size() < members[b].size();
        return members[a][0] < members[b][0];
    });

    ConjClasses out;
    out.of.assign(n, 0);
    std::vector<std::uint32_t> newpos(members.size());
    for (std::uint32_t newc = 0; newc < idx.size(); ++newc) {
        std::uint32_t oldc = idx[newc];
        newpos[oldc] = newc;
        out.rep.push_back(members[oldc][0]);
        out.size.push_back(members[oldc].size());
        out.elem_order.push_back(ord[oldc]);
        out.members.push_back(std::move(members[oldc]));
    }
    for (Elem g = 0; g < n; ++g) out.of[g] = newpos[cls[g]];
    out.inverse_class.resize(out.rep.size());
    for (std::uint32_t c = 0; c < out.rep.size(); ++c)
        out.inverse_class[c] = out.of[G.inv(out.rep[c])];
    return out;
}

} // namespace qrg
