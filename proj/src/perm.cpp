#include "qrg/perm.hpp"

#include <cassert>

#include "qrg/errors.hpp"

namespace qrg {

Perm perm_mul(const Perm& a, const Perm& b) {
    assert(a.degree() == b.degree());
    Perm c;
    c.p.resize(a.degree());
    for (std::uint32_t i = 0; i < a.degree(); ++i) c.p[i] = b.p[a.p[i]];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm c;
    c.p.resize(a.degree());
    for (std::uint32_t i = 0; i < a.degree(); ++i) c.p[a.p[i]] = i;
    return c;
}

Perm perm_from_cycles(std::uint32_t degree,
                      const std::vector<std::vector<std::uint32_t>>& cycles) {
    Perm g(degree);
    for (const auto& cyc : cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            std::uint32_t from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            if (from >= degree || to >= degree)
                throw InputError("cycle point out of range");
            g.p[from] = to;
        }
    }
    return g;
}

std::size_t perm_fixed_points(const Perm& a) {
    std::size_t c = 0;
    for (std::uint32_t i = 0; i < a.degree(); ++i)
        if (a.p[i] == i) ++c;
    return c;
}

bool perm_is_even(const Perm& a) {
    std::vector<bool> seen(a.degree(), false);
    bool even = true;
    for (std::uint32_t i = 0; i < a.degree(); ++i) {
        if (seen[i]) continue;
        std::uint32_t len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = a.p[j];
            ++len;
        }
        if (len % 2 == 0) even = !even;
    }
    return even;
}

StabChain::StabChain(const std::vector<Perm>& generators) {
    degree_ = generators.empty() ? 0 : generators.front().degree();
    for (const auto& g : generators)
        if (g.degree() != degree_) throw InputError("mixed permutation degrees");

    // Seed base points so every generator moves one of them, then distribute
    // generators to the levels they stabilize.
    for (const auto& g : generators) {
        if (g.is_identity()) continue;
        bool moves_base = false;
        for (auto b : base_)
            if (g.p[b] != b) {
                moves_base = true;
                break;
            }
        if (!moves_base) append_base_point(g);
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            levels_[i].gens.push_back(g);
            if (g.p[levels_[i].beta] != levels_[i].beta) break;
        }
    }
    if (levels_.empty()) return; // trivial group

    for (std::size_t i = 0; i < levels_.size(); ++i) recompute_orbit(i);

    // Verify levels bottom-up; a failed strip adds a new strong generator and
    // sends the scan back down to its level.
    std::size_t i = levels_.size();
    while (i-- > 0) {
        bool clean = true;
        Level& lv = levels_[i];
        for (std::size_t oi = 0; oi < lv.orbit.size() && clean; ++oi) {
            for (const auto& s : lv.gens) {
                std::uint32_t pt = lv.orbit[oi];
                const Perm& u = lv.transversal[oi];
                std::uint32_t image = s.p[pt];
                Perm schreier =
                    perm_mul(perm_mul(u, s),
                             perm_inverse(lv.transversal[static_cast<std::size_t>(
                                 lv.orbit_pos[image])]));
                if (schreier.is_identity()) continue;
                auto [residue, j] = strip(std::move(schreier), i + 1);
                if (residue.is_identity()) continue;
                if (j == levels_.size()) append_base_point(residue);
                for (std::size_t lvl = i + 1; lvl <= j && lvl < levels_.size(); ++lvl)
                    levels_[lvl].gens.push_back(residue);
                for (std::size_t lvl = i + 1; lvl <= j && lvl < levels_.size(); ++lvl)
                    recompute_orbit(lvl);
                i = j + 1; // will be decremented; rechecks level j first
                if (i > levels_.size()) i = levels_.size();
                clean = false;
                break;
            }
        }
        if (clean) continue;
    }
}

void StabChain::append_base_point(const Perm& witness) {
    for (std::uint32_t pt = 0; pt < degree_; ++pt)
        if (witness.p[pt] != pt) {
            base_.push_back(pt);
            Level lv;
            lv.beta = pt;
            levels_.push_back(std::move(lv));
            return;
        }
    throw InputError("identity witness cannot extend a base");
}

void StabChain::recompute_orbit(std::size_t i) {
    Level& lv = levels_[i];
    lv.orbit_pos.assign(degree_, -1);
    lv.orbit.clear();
    lv.transversal.clear();
    lv.orbit.push_back(lv.beta);
    lv.orbit_pos[lv.beta] = 0;
    lv.transversal.push_back(Perm(degree_));
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
        std::uint32_t pt = lv.orbit[head];
        for (const auto& s : lv.gens) {
            std::uint32_t image = s.p[pt];
            if (lv.orbit_pos[image] < 0) {
                lv.orbit_pos[image] = static_cast<std::int64_t>(lv.orbit.size());
                lv.orbit.push_back(image);
                lv.transversal.push_back(perm_mul(lv.transversal[head], s));
            }
        }
    }
}

std::pair<Perm, std::size_t> StabChain::strip(Perm g, std::size_t from) const {
    for (std::size_t j = from; j < levels_.size(); ++j) {
        const Level& lv = levels_[j];
        std::uint32_t image = g.p[lv.beta];
        if (lv.orbit_pos[image] < 0) return {std::move(g), j};
        g = perm_mul(g, perm_inverse(
                            lv.transversal[static_cast<std::size_t>(lv.orbit_pos[image])]));
    }
    return {std::move(g), levels_.size()};
}

std::uint64_t StabChain::order() const {
    std::uint64_t n = 1;
    for (const auto& lv : levels_) n *= lv.orbit.size();
    return n;
}

bool StabChain::contains(const Perm& g) const {
    if (g.degree() != degree_) return degree_ == 0 && g.is_identity();
    auto [residue, j] = strip(g, 0);
    return j == levels_.size() && residue.is_identity();
}

} // namespace qrg
