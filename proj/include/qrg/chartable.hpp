#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qrg/conjugacy.hpp"
#include "qrg/group.hpp"

namespace qrg {

// Complete complex irreducible character table.  Characters are ordered
// deterministically: trivial character first, then by increasing degree with
// ties broken by the modular value vectors.  Column c corresponds to class c
// of the ConjClasses ordering.
struct CharacterTable {
    std::uint64_t n = 0;
    std::uint64_t ell = 0; // modular prime used internally
    std::vector<std::uint64_t> degrees;
    std::vector<std::vector<std::complex<double>>> values; // [character][class]
    double row_residual = 0;  // max |row orthogonality defect|
    double col_residual = 0;  // max |column orthogonality defect|
};

// Character table by the modular (prime-field) class-matrix method: the class
// multiplication matrices are simultaneously diagonalized over F_ell with
// ell = 1 mod exponent(G), ell > 2 sqrt(n), and the eigenvalue data is lifted
// to complex character values through the root-of-unity correspondence.
CharacterTable character_table(const FiniteGroup& G, const ConjClasses& cls);

// Least degree of a nontrivial irreducible character ("k").  Throws
// InputError for the trivial group, which has no nontrivial character.
std::uint64_t min_nontrivial_degree(const CharacterTable& table);
std::uint64_t min_nontrivial_degree(const FiniteGroup& G);

} // namespace qrg
