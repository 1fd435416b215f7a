#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrg/bitset.hpp"
#include "qrg/errors.hpp"
#include "qrg/gf.hpp"
#include "qrg/matgf.hpp"
#include "qrg/perm.hpp"
#include "qrg/rng.hpp"

namespace qrg {

// Element of an enumerated group, identified by its position in the canonical
// breadth-first enumeration.  Index 0 is always the identity.
using Elem = std::uint32_t;

enum class Backend { Table, Permutation, Matrix };
enum class MatFamily { GL, SL, SU, PSL, PSU };

// Lie-type data attached to matrix-family groups.  The (untwisted) rank used
// by sparse word-image thresholds is dim - 1; twisted families beyond the
// unitary ones are not constructed.
struct LieType {
    MatFamily family;
    int dim;
    std::uint64_t q;
    int rank;
};

struct GroupOptions {
    std::uint64_t cap_enum = 10'000'000; // refuse to enumerate beyond this
    std::size_t cap_table = 3000;        // full multiplication table below this
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    std::uint64_t order() const { return order_; }
    Backend backend() const { return backend_; }
    const std::string& name() const { return name_; }

    // False when the group was constructed above the enumeration cap; then
    // only the matrix-level interface (matrix_generators, random_matrix and
    // plain GFMat arithmetic) is available.
    bool enumerated() const { return enumerated_; }

    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem power(Elem g, std::int64_t e) const;
    std::uint64_t element_order(Elem g) const;

    // Indices of the defining generators, in generator order.
    const std::vector<Elem>& generators() const { return gen_idx_; }

    // Uniform over the enumerated element set.
    Elem random_element(Rng& rng) const;

    // --- permutation backend -------------------------------------------------
    std::uint32_t degree() const { return degree_; }
    Perm perm(Elem g) const;
    const StabChain& chain() const { return chain_; }

    // --- matrix backend -------------------------------------------------------
    const GFq& field() const { return *field_; }
    int dim() const { return dim_; }
    const std::optional<LieType>& lie() const { return lie_; }
    GFMat matrix(Elem g) const;
    const std::vector<GFMat>& matrix_generators() const { return gen_mats_; }
    // Projective reduction: the least row-major representative of the scalar
    // orbit.  Identity map for linear (non-projective) groups.
    GFMat canonical(GFMat m) const;
    bool unitary() const { return unitary_q_ != 0; }
    std::uint64_t unitary_q() const { return unitary_q_; }
    // Approximately uniform element by a seeded product-replacement walk.
    // Works for non-enumerated groups; this is the only sampling available
    // above the enumeration cap.
    GFMat random_matrix(Rng& rng, int walk_steps = 50) const;

    // --- construction ---------------------------------------------------------
    static GroupPtr from_table(std::vector<Elem> flat, std::uint64_t n,
                               const GroupOptions& opts = {}, std::string name = "table");
    static GroupPtr from_perm_generators(std::vector<Perm> gens, std::uint32_t degree,
                                         const GroupOptions& opts = {},
                                         std::string name = "perm",
                                         std::uint64_t expected_order = 0);
    static GroupPtr from_matrix_generators(GFqPtr field, int dim, std::vector<GFMat> gens,
                                           std::vector<GFElem> projective_scalars,
                                           std::uint64_t expected_order,
                                           const GroupOptions& opts = {},
                                           std::string name = "matrix",
                                           std::optional<LieType> lie = std::nullopt,
                                           std::uint64_t unitary_q = 0);

private:
    FiniteGroup() = default;
    void enumerate_perm(const std::vector<Perm>& gens, const GroupOptions& opts);
    void enumerate_matrix(const std::vector<GFMat>& gens, const GroupOptions& opts);
    void build_table_and_inverses(const GroupOptions& opts);
    Elem mul_raw(Elem a, Elem b) const; // backend composition without the table
    void require_enumerated() const;

    std::uint64_t order_ = 0;
    Backend backend_ = Backend::Table;
    bool enumerated_ = true;
    std::string name_;
    std::vector<Elem> gen_idx_;

    std::vector<Elem> table_; // order*order when order <= cap_table, else empty
    std::vector<Elem> inv_;

    // permutation backend
    std::uint32_t degree_ = 0;
    std::vector<std::uint32_t> perm_flat_; // order*degree images
    StabChain chain_;
    std::unordered_map<std::uint64_t, std::vector<Elem>> perm_index_;

    // matrix backend
    GFqPtr field_;
    int dim_ = 0;
    std::optional<LieType> lie_;
    std::vector<GFElem> mat_flat_; // order*dim*dim entries
    std::vector<GFElem> scalars_;  // projective scalar orbit (always contains 1)
    std::vector<GFMat> gen_mats_;
    std::uint64_t unitary_q_ = 0;
    std::unordered_map<std::uint64_t, std::vector<Elem>> mat_index_;

    std::uint64_t hash_perm_key(const std::uint32_t* img) const;
    std::uint64_t hash_mat_key(const GFElem* m) const;
    Elem lookup_perm(const std::uint32_t* img) const;
    Elem lookup_mat(const GFElem* m) const;
};

// Subgroup generated by the given elements: breadth-first closure under
// multiplication (finiteness supplies inverses).
Bitset subgroup_closure(const FiniteGroup& G, const std::vector<Elem>& gens);
// Same, but gives up and returns an empty optional once the closure exceeds
// the watermark (used for "proper or not" queries at half the group order).
std::optional<Bitset> subgroup_closure_capped(const FiniteGroup& G,
                                              const std::vector<Elem>& gens,
                                              std::uint64_t watermark);

// Derived subgroup, as the normal closure of generator commutators.
Bitset commutator_subgroup(const FiniteGroup& G);
bool is_perfect(const FiniteGroup& G);
// No nontrivial proper normal subgroup (checked through class closures).
bool is_simple(const FiniteGroup& G);
// Least common multiple of element orders.
std::uint64_t group_exponent(const FiniteGroup& G);

// External direct product, realized on the index set of pairs.
GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B, const GroupOptions& opts = {});

GroupPtr load_cayley_table(const std::string& path, const GroupOptions& opts = {});

} // namespace qrg
