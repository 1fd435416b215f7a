#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qrg/errors.hpp"

namespace qrg {

// Field elements are encoded as integers in [0, q).  For q = p^f the element
// a_0 + a_1*x + ... + a_{f-1}*x^{f-1} (x = residue of the modulus variable)
// is encoded as sum a_i * p^i, so 0 and 1 are the additive and multiplicative
// identities and the encoding order doubles as the total order used whenever
// a deterministic "least" choice is needed.
using GFElem = std::uint16_t;

// Dense polynomial over a GFq, coefficient of x^i at position i.
// Normalized form has no trailing zero coefficients; {} is the zero polynomial.
using GFPoly = std::vector<GFElem>;

class GFq {
public:
    // q must be a prime power p^f with q <= 1024.  The modulus for f > 1 is
    // the least monic irreducible of degree f over GF(p) in encoding order.
    explicit GFq(std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint64_t p() const { return p_; }
    int f() const { return f_; }

    GFElem add(GFElem a, GFElem b) const { return add_[idx(a, b)]; }
    GFElem mul(GFElem a, GFElem b) const { return mul_[idx(a, b)]; }
    GFElem neg(GFElem a) const { return neg_[a]; }
    GFElem sub(GFElem a, GFElem b) const { return add(a, neg(b)); }
    GFElem inv(GFElem a) const;
    GFElem pow(GFElem a, std::uint64_t e) const;

    // x -> x^p, the field's arithmetic Frobenius.
    GFElem frob(GFElem a) const { return pow(a, p_); }

    // Modulus coefficients (degree f), over the prime subfield.
    const std::vector<GFElem>& modulus() const { return modulus_; }

    // Least element of multiplicative order q-1.
    GFElem primitive_element() const;

    bool operator==(const GFq& o) const { return q_ == o.q_; }

private:
    std::size_t idx(GFElem a, GFElem b) const { return static_cast<std::size_t>(a) * q_ + b; }

    std::uint64_t q_ = 0, p_ = 0;
    int f_ = 0;
    std::vector<GFElem> modulus_;
    std::vector<GFElem> add_, mul_, neg_, inv_;
};

using GFqPtr = std::shared_ptr<const GFq>;
GFqPtr make_field(std::uint64_t q);

// Returns (p, f) with q = p^f, or throws InputError.
std::pair<std::uint64_t, int> prime_power_split(std::uint64_t q);

// --- polynomial helpers -----------------------------------------------------

int poly_degree(const GFPoly& a); // -1 for the zero polynomial
void poly_normalize(GFPoly& a);
GFPoly poly_add(const GFq& F, const GFPoly& a, const GFPoly& b);
GFPoly poly_mul(const GFq& F, const GFPoly& a, const GFPoly& b);
// Division with remainder by a nonzero divisor; returns {quotient, remainder}.
std::pair<GFPoly, GFPoly> poly_divmod(const GFq& F, const GFPoly& a, const GFPoly& b);
GFPoly poly_mod(const GFq& F, const GFPoly& a, const GFPoly& b);
// Monic gcd.
GFPoly poly_gcd(const GFq& F, GFPoly a, GFPoly b);
GFPoly poly_derivative(const GFq& F, const GFPoly& a);
GFElem poly_eval(const GFq& F, const GFPoly& a, GFElem x);

// True iff a (nonconstant) has no repeated roots in any extension.
// Handles the vanishing-derivative case: a' = 0 means a is a p-th power.
bool poly_is_squarefree(const GFq& F, const GFPoly& a);

// Trial-division irreducibility test; intended for small degrees.
bool poly_is_irreducible(const GFq& F, const GFPoly& a);

// Factor a monic polynomial into monic irreducibles (with multiplicity),
// by trial division in encoding order.  Small degrees only.
std::vector<GFPoly> poly_factor(const GFq& F, GFPoly a);

} // namespace qrg
