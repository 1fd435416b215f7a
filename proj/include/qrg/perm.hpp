#pragma once

#include <cstdint>
#include <vector>

namespace qrg {

// Permutation of {0, ..., degree-1}; p[i] is the image of point i.
// Products compose left to right: (a * b) moves i to b[a[i]].
struct Perm {
    std::vector<std::uint32_t> p;

    Perm() = default;
    explicit Perm(std::uint32_t degree) : p(degree) {
        for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
    }

    std::uint32_t degree() const { return static_cast<std::uint32_t>(p.size()); }
    bool is_identity() const {
        for (std::uint32_t i = 0; i < degree(); ++i)
            if (p[i] != i) return false;
        return true;
    }
    bool operator==(const Perm& o) const { return p == o.p; }
};

Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
// Builds a permutation from disjoint cycles given in one-line cycle notation,
// e.g. {{0,1,2},{3,4}} on the stated degree.
Perm perm_from_cycles(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& cycles);
std::size_t perm_fixed_points(const Perm& a);
bool perm_is_even(const Perm& a);

// Base and strong generating set computed by the deterministic Schreier-Sims
// procedure.  Supports exact order and membership queries without enumerating
// the group.
class StabChain {
public:
    StabChain() = default;
    explicit StabChain(const std::vector<Perm>& generators);

    std::uint64_t order() const;
    bool contains(const Perm& g) const;
    const std::vector<std::uint32_t>& base() const { return base_; }

private:
    struct Level {
        std::uint32_t beta = 0;              // base point
        std::vector<Perm> gens;              // generators fixing all earlier base points
        std::vector<std::int64_t> orbit_pos; // point -> index into orbit, -1 outside
        std::vector<std::uint32_t> orbit;
        std::vector<Perm> transversal;       // u with beta^u = orbit point
    };

    void recompute_orbit(std::size_t i);
    // Strips g through levels [from, end); returns the residue and the level
    // where stripping stopped (== level count when it ran through).
    std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;
    void append_base_point(const Perm& witness);

    std::uint32_t degree_ = 0;
    std::vector<std::uint32_t> base_;
    std::vector<Level> levels_;
};

} // namespace qrg
