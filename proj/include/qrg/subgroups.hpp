#pragma once

#include <cstdint>
#include <vector>

#include "qrg/bitset.hpp"
#include "qrg/conjugacy.hpp"
#include "qrg/group.hpp"

namespace qrg {

struct SubgroupRec {
    Bitset members;
    std::uint64_t order = 0;
    std::vector<Elem> gens; // some generating set (possibly empty for trivial)
};

// Stabilizers of each point, for permutation backends (empty list otherwise).
std::vector<SubgroupRec> point_stabilizers(const FiniteGroup& G);

// Heuristic subgroup harvest: closures of up to three elements drawn from the
// non-identity conjugacy-class representatives and their pairwise products,
// plus point stabilizers.  Deduplicated; proper subgroups only (plus the
// trivial one).  Deterministic; the closure budget bounds the work.
std::vector<SubgroupRec> harvest_subgroups(const FiniteGroup& G, const ConjClasses& cls,
                                           std::uint64_t closure_budget = 20000);

// Every proper subgroup (including the trivial one), built by breadth-first
// closure extension: each known subgroup H is extended by one representative
// of every left coset gH outside H, and <H, g> is recorded when proper.  Any
// subgroup is reachable through a chain of such extensions, so the result is
// the complete lattice minus G itself.  Throws CapExceeded when the order is
// above 2000 or the record cap is hit (pathological lattices).
std::vector<SubgroupRec> subgroup_lattice(const FiniteGroup& G,
                                          std::uint64_t max_records = 250000);

struct MinIndexReport {
    std::uint64_t index = 0;      // least index of a proper subgroup
    std::uint64_t best_order = 0; // order of the largest proper subgroup found
    bool certified = false;       // true when the full lattice was enumerated
    std::uint64_t subgroups_seen = 0;
};

// Least index of a proper subgroup.  Exact (certified) for order <= 2000 via
// the full lattice; heuristic above that, up to the hard cap of 10^4.
MinIndexReport min_proper_subgroup_index(const FiniteGroup& G, const ConjClasses& cls);

} // namespace qrg
