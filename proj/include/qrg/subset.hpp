#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrg/bitset.hpp"
#include "qrg/group.hpp"

namespace qrg {

// Subset of an enumerated group, stored as a bitmask over element indices.
struct Subset {
    Bitset mask;
    std::uint64_t count = 0;

    Subset() = default;
    explicit Subset(std::uint64_t universe) : mask(universe) {}

    bool test(Elem g) const { return mask.test(g); }
    void add(Elem g) {
        if (!mask.test(g)) {
            mask.set(g);
            ++count;
        }
    }
    std::vector<Elem> elements() const { return mask.to_indices(); }
};

// Explicit index list.  Rejects out-of-range indices and duplicates.
Subset subset_from_indices(const FiniteGroup& G, const std::vector<Elem>& idx);

// `size` distinct elements sampled uniformly with the given seed.
Subset subset_random(const FiniteGroup& G, std::uint64_t size, std::uint64_t seed);

// Like subset_random but closed under inversion: the sample is assembled from
// whole {g, g^-1} pairs plus self-inverse elements, using the fewest
// self-inverse picks compatible with the requested size.
Subset subset_random_symmetric(const FiniteGroup& G, std::uint64_t size, std::uint64_t seed);

// Right coset H * rep of the subgroup H generated by `gens`.
Subset subset_coset(const FiniteGroup& G, const std::vector<Elem>& gens, Elem rep);

// Textual subset spec:
//   "3,17,29"                explicit element indices
//   "random:<size>:<seed>"   seeded uniform sample
//   "randsym:<size>:<seed>"  seeded symmetric (inverse-closed) sample
//   "coset:<gens>:<rep>"     right coset of <gens> (comma-separated indices)
Subset parse_subset_spec(const FiniteGroup& G, const std::string& spec);

// True when S = S^{-1}.  On failure and when witness is non-null, stores an
// element of S whose inverse is missing.
bool subset_is_symmetric(const FiniteGroup& G, const Subset& S, Elem* witness = nullptr);

} // namespace qrg
