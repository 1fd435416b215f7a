#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrg/conjugacy.hpp"
#include "qrg/group.hpp"
#include "qrg/subgroups.hpp"
#include "qrg/subset.hpp"

namespace qrg {

struct ProductOptions {
    int workers = 1;
    std::uint64_t work_cap = 2'000'000'000; // element multiplications per op
    std::uint64_t seed = 0;
    int restarts = 32; // greedy product-free restarts
};

// {a b : a in A, b in B}.  Work is |A| * |B| multiplications, split across
// workers by blocks of A with an order-independent bitwise-OR merge.
Subset product_set(const FiniteGroup& G, const Subset& A, const Subset& B,
                   const ProductOptions& opts = {});

struct CoverReport {
    std::uint64_t subset_size = 0;
    double threshold = 0;        // size above which covering is guaranteed
    bool above_threshold = false;
    bool vacuous = false;        // threshold exceeds the group order
    bool covers = false;         // B^3 = G
    std::vector<Elem> missing;   // sample of uncovered elements (<= 10)
    std::uint64_t products_computed = 0;
};

// B^3 against the k-based threshold n / k^(1/3).  Above the threshold the
// theory guarantees covering, so a non-covering result throws.
CoverReport triple_product_covers(const FiniteGroup& G, const Subset& B, std::uint64_t k,
                                  const ProductOptions& opts = {});

// B^3 against the projective-special-linear threshold 2|L| / q^((d-1)/3),
// where d is the matrix dimension.  Thresholds above |L| are flagged vacuous.
CoverReport psl_covering_check(const FiniteGroup& L, const Subset& B,
                               const ProductOptions& opts = {});

struct ProductFreeCert {
    bool product_free = false;
    Elem x = 0, y = 0, z = 0; // violating x*y = z when not product-free
};

ProductFreeCert is_product_free(const FiniteGroup& G, const Subset& S);

struct AlphaReport {
    std::uint64_t alpha = 0;
    std::vector<Elem> witness;
    std::uint64_t nodes = 0; // search-tree size
};

// Exact maximum product-free size by branch and bound (order <= 200).
AlphaReport alpha_exact(const FiniteGroup& G);

struct ProductFreeSearchReport {
    std::uint64_t best_size = 0;
    std::vector<Elem> witness;
    std::string method;               // "coset" or "greedy"
    std::uint64_t best_coset_subgroup = 0; // |H| for the best coset found
    bool lattice_certified = false;   // coset scan used the full lattice
};

// Best product-free set found by scanning nontrivial left cosets of known
// subgroups and by seeded greedy growth; the result is re-verified.
ProductFreeSearchReport product_free_search(const FiniteGroup& G, const ConjClasses& cls,
                                            const ProductOptions& opts = {});

struct CoverExponentReport {
    bool generates = false;       // <X> = G
    std::uint64_t closure_order = 0;
    std::optional<std::uint64_t> exponent; // least t with X^t = G
    std::vector<std::uint64_t> growth;     // |X^t| for t = 1, 2, ...
    bool cycle_detected = false;  // the layer sequence repeated without covering
};

// Least t with the t-fold positive product set X^t equal to G (no inverses).
// Gives up after t = n layers or a repeated layer; non-covering inputs are
// reported, not errors (singleton generators of cyclic groups never cover).
CoverExponentReport cover_exponent(const FiniteGroup& G, const Subset& X,
                                   const ProductOptions& opts = {});

struct QuasirandomProfile {
    std::uint64_t n = 0;
    bool perfect = false;     // profile semantics assume a perfect group
    std::uint64_t k = 0;      // least nontrivial irreducible degree
    std::uint64_t product_free_found = 0; // largest product-free set found
    double product_free_bound = 0;        // n / k^(1/3)
    std::uint64_t c3_empirical = 0;  // least size with 100/100 covering trials
    std::uint64_t c3_threshold = 0;  // ceil(n / k^(1/3)) + 1
    std::uint64_t min_index = 0;
    bool min_index_certified = false;
};

QuasirandomProfile quasirandomness_profile(const FiniteGroup& G,
                                           const ProductOptions& opts = {});

struct FpfReport {
    std::uint64_t points = 0;     // degree of the action
    std::uint64_t fpf_count = 0;  // fixed-point-free elements
    double proportion = 0;
    bool transitive = false;
    bool simple = false;
    bool triple_covers = false;   // F * F * F = G for the fixed-point-free set F
};

// Fixed-point-free census for a transitive permutation group, plus the exact
// check that every element is a product of three fixed-point-free ones.
FpfReport fpf_triple_check(const FiniteGroup& G, const ProductOptions& opts = {});

} // namespace qrg
