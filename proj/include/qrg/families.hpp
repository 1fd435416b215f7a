#pragma once

#include "qrg/group.hpp"

namespace qrg {

// Named-family constructors.  All enumerated constructions verify the closure
// size against the expected order formula and throw TheoremViolation on
// mismatch, so a successful return certifies the generator sets.

GroupPtr make_cyclic(std::uint64_t m, const GroupOptions& opts = {});
// Dihedral group of order 2m (symmetries of the m-gon; D(1) ~ C2, D(2) ~ V4).
GroupPtr make_dihedral(std::uint64_t m, const GroupOptions& opts = {});
GroupPtr make_symmetric(std::uint32_t m, const GroupOptions& opts = {});
GroupPtr make_alternating(std::uint32_t m, const GroupOptions& opts = {});

// GL/SL/PSL over GF(q); SU/PSU over GF(q^2) with the identity-Gram hermitian
// form.  SL-family generators (elementary transvections) are complete by the
// classical generation theorem, so SL/GL/PSL work above the enumeration cap
// in matrix-only mode.  SU/PSU generator completeness is certified by
// enumeration, so those two require the order to fit under the cap.
GroupPtr make_classical(MatFamily fam, int d, std::uint64_t q,
                        const GroupOptions& opts = {});

// Exact order by the standard polynomial formulas; throws CapExceeded when
// the value does not fit in 64 bits.
std::uint64_t classical_order(MatFamily fam, int d, std::uint64_t q);

std::uint64_t factorial_checked(std::uint32_t m);

} // namespace qrg
