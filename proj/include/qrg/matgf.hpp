#pragma once

#include <cstdint>
#include <vector>

#include "qrg/gf.hpp"

namespace qrg {

// Small square matrix over a finite field, row-major.  Dimensions stay tiny
// (the classical-group constructors go up to a handful), so everything is
// plain O(d^3) arithmetic without blocking tricks.
struct GFMat {
    int d = 0;
    std::vector<GFElem> a; // d*d entries, row-major

    GFMat() = default;
    GFMat(int dim) : d(dim), a(static_cast<std::size_t>(dim) * dim, 0) {}

    GFElem& at(int i, int j) { return a[static_cast<std::size_t>(i) * d + j]; }
    GFElem at(int i, int j) const { return a[static_cast<std::size_t>(i) * d + j]; }

    bool operator==(const GFMat& o) const { return d == o.d && a == o.a; }
    bool operator<(const GFMat& o) const { return a < o.a; } // row-major encoding order
};

GFMat mat_identity(const GFq& F, int d);
GFMat mat_mul(const GFq& F, const GFMat& x, const GFMat& y);
GFMat mat_scalar_mul(const GFq& F, GFElem s, const GFMat& x);
GFElem mat_det(const GFq& F, GFMat x);
// Throws InputError when singular.
GFMat mat_inverse(const GFq& F, const GFMat& x);
// Entry-wise e-th power map; with e = p this is the Frobenius twist.
GFMat mat_entrywise_pow(const GFq& F, const GFMat& x, std::uint64_t e);
GFMat mat_transpose(const GFMat& x);

// Characteristic polynomial det(tI - x), monic of degree d, via the
// Samuelson-Berkowitz recursion (division free, valid in any characteristic).
GFPoly mat_charpoly(const GFq& F, const GFMat& x);

// Distinct eigenvalues in every extension, i.e. squarefree characteristic
// polynomial.
bool mat_regular_semisimple(const GFq& F, const GFMat& x);

} // namespace qrg
