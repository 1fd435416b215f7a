#include "qrg/subgroups.hpp"

#include <algorithm>
#include <unordered_map>

#include "qrg/errors.hpp"
#include "qrg/perm.hpp"

namespace qrg {
namespace {

// Deduplicating accumulator keyed by member-bitset hash.
class SubgroupPool {
public:
    explicit SubgroupPool(std::uint64_t cap) : cap_(cap) {}

    // Returns true when the subgroup is new.
    bool add(SubgroupRec rec) {
        const std::uint64_t h = rec.members.hash();
        for (std::size_t i : by_hash_[h])
            if (recs_[i].members == rec.members) return false;
        if (recs_.size() >= cap_)
            throw CapExceeded("subgroup enumeration exceeded " + std::to_string(cap_) +
                              " records");
        by_hash_[h].push_back(recs_.size());
        recs_.push_back(std::move(rec));
        return true;
    }

    std::vector<SubgroupRec> take() { return std::move(recs_); }
    std::size_t size() const { return recs_.size(); }
    const SubgroupRec& operator[](std::size_t i) const { return recs_[i]; }

private:
    std::uint64_t cap_;
    std::vector<SubgroupRec> recs_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

SubgroupRec trivial_subgroup(const FiniteGroup& G) {
    SubgroupRec rec;
    rec.members = Bitset(G.order());
    rec.members.set(0);
    rec.order = 1;
    return rec;
}

// Closure of `gens`, or nothing when it is the whole group.  A proper
// subgroup has order at most n/2, so the watermark detects G early.
bool closure_proper(const FiniteGroup& G, const std::vector<Elem>& gens, SubgroupRec& out) {
    auto bits = subgroup_closure_capped(G, gens, G.order() / 2);
    if (!bits) return false;
    out.members = std::move(*bits);
    out.order = out.members.count();
    out.gens = gens;
    return true;
}

} // namespace

std::vector<SubgroupRec> point_stabilizers(const FiniteGroup& G) {
    std::vector<SubgroupRec> out;
    if (G.backend() != Backend::Permutation || !G.enumerated()) return out;
    const std::uint64_t n = G.order();
    const std::size_t deg = G.degree();
    out.reserve(deg);
    for (std::size_t pt = 0; pt < deg; ++pt) {
        SubgroupRec rec;
        rec.members = Bitset(n);
        for (Elem g = 0; g < n; ++g)
            if (G.perm(g).p[pt] == static_cast<std::uint32_t>(pt)) rec.members.set(g);
        rec.order = rec.members.count();
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<SubgroupRec> harvest_subgroups(const FiniteGroup& G, const ConjClasses& cls,
                                           std::uint64_t closure_budget) {
    if (!G.enumerated())
        throw CapExceeded("subgroup harvest needs an enumerated group");
    const std::uint64_t n = G.order();
    SubgroupPool pool(1u << 20);
    pool.add(trivial_subgroup(G));
    for (auto& st : point_stabilizers(G))
        if (st.order < n) pool.add(std::move(st));

    // Seed elements: class representatives and their pairwise products.
    std::vector<Elem> seeds;
    Bitset seen(n);
    seen.set(0);
    auto push_seed = [&](Elem g) {
        if (!seen.test(g) && seeds.size() < 128) {
            seen.set(g);
            seeds.push_back(g);
        }
    };
    for (std::size_t i = 1; i < cls.count(); ++i) push_seed(cls.rep[i]);
    for (std::size_t i = 1; i < cls.count() && seeds.size() < 128; ++i)
        for (std::size_t j = i; j < cls.count() && seeds.size() < 128; ++j)
            push_seed(G.mul(cls.rep[i], cls.rep[j]));

    std::uint64_t used = 0;
    SubgroupRec rec;
    auto try_gens = [&](const std::vector<Elem>& gens) {
        if (used >= closure_budget) return false;
        ++used;
        if (closure_proper(G, gens, rec)) pool.add(std::move(rec));
        return true;
    };
    for (std::size_t a = 0; a < seeds.size(); ++a)
        if (!try_gens({seeds[a]})) break;
    for (std::size_t a = 0; a < seeds.size(); ++a)
        for (std::size_t b = a + 1; b < seeds.size(); ++b)
            if (!try_gens({seeds[a], seeds[b]})) goto pairs_done;
pairs_done:
    for (std::size_t a = 0; a < seeds.size(); ++a)
        for (std::size_t b = a + 1; b < seeds.size(); ++b)
            for (std::size_t c = b + 1; c < seeds.size(); ++c)
                if (!try_gens({seeds[a], seeds[b], seeds[c]})) goto triples_done;
triples_done:
    return pool.take();
}

std::vector<SubgroupRec> subgroup_lattice(const FiniteGroup& G, std::uint64_t max_records) {
    if (!G.enumerated())
        throw CapExceeded("subgroup lattice needs an enumerated group");
    const std::uint64_t n = G.order();
    if (n > 2000)
        throw CapExceeded("subgroup lattice construction is limited to order 2000, got " +
                          std::to_string(n));
    SubgroupPool pool(max_records);
    pool.add(trivial_subgroup(G));
    // Breadth-first over the pool; pool indices are stable because new
    // subgroups are only appended.
    for (std::size_t qi = 0; qi < pool.size(); ++qi) {
        // Copy what the extension loop needs: pool.add() may reallocate.
        const Bitset members = pool[qi].members;
        const std::vector<Elem> gens = pool[qi].gens;
        Bitset covered = members;
        std::vector<Elem> hs = members.to_indices();
        for (Elem g = 1; g < n; ++g) {
            if (covered.test(g)) continue;
            // g represents the left coset gH; any member of it generates the
            // same extension <H, g>, so mark the whole coset as handled.
            for (Elem h : hs) covered.set(G.mul(g, h));
            std::vector<Elem> ext = gens;
            ext.push_back(g);
            SubgroupRec rec;
            if (closure_proper(G, ext, rec)) pool.add(std::move(rec));
        }
    }
    return pool.take();
}

MinIndexReport min_proper_subgroup_index(const FiniteGroup& G, const ConjClasses& cls) {
    const std::uint64_t n = G.order();
    if (n == 1) throw InputError("the trivial group has no proper subgroup");
    if (n > 10000)
        throw CapExceeded("minimal-index search is limited to order 10^4, got " +
                          std::to_string(n));
    std::vector<SubgroupRec> subs;
    MinIndexReport rep;
    if (n <= 2000) {
        subs = subgroup_lattice(G);
        rep.certified = true;
    } else {
        subs = harvest_subgroups(G, cls);
        rep.certified = false;
    }
    rep.subgroups_seen = subs.size();
    rep.best_order = 1;
    for (const auto& H : subs)
        if (H.order < n) rep.best_order = std::max(rep.best_order, H.order);
    if (n % rep.best_order != 0)
        throw TheoremViolation("subgroup order does not divide the group order");
    rep.index = n / rep.best_order;
    return rep;
}

} // namespace qrg
