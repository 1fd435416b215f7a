#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrg/group.hpp"
#include "qrg/subset.hpp"

namespace qrg {

struct SpectralOptions {
    std::uint64_t cap_dense = 4096; // dense eigensolve up to this order
    double tol = 1e-10;             // iterative eigenvalue tolerance
    double verify_slack = 1e-6;     // allowance when checking the mixing bound
    std::uint64_t max_iters = 10000;
    int workers = 1;
};

// Adjacency operator of the bi-Cayley structure on a symmetric subset B:
// the n x n 0/1 matrix X with x[g][h] = 1 exactly when h^{-1} g lies in B.
// Rows and columns each sum to |B|; X is symmetric because B = B^{-1}.
struct ConvolutionOperator {
    const FiniteGroup* G = nullptr;
    Subset B;
    std::vector<Elem> b_elems;     // ascending
    std::vector<Elem> b_inv;       // inverses, aligned with b_elems
    bool dense = false;            // n <= cap_dense: eigensolve materializes X
    SpectralOptions opts;

    std::uint64_t n() const { return G->order(); }
    std::uint64_t b_size() const { return B.count; }

    // y = X v, rows split across opts.workers (identical results for any
    // worker count: each row is an independent fixed-order sum).
    void apply(const std::vector<double>& v, std::vector<double>& y) const;
};

// Verifies B = B^{-1} (error names a violating element) and the constant
// row sums, then fixes the dense/matrix-free route from cap_dense.
ConvolutionOperator build_operator(const FiniteGroup& G, const Subset& B,
                                   const SpectralOptions& opts = {});

struct SpectralReport {
    std::uint64_t n = 0;
    std::uint64_t b_size = 0;
    std::uint64_t k = 0;
    double lambda1 = 0;        // top eigenvalue; equals |B| (verified)
    double max_abs_ideal = 0;  // max |eigenvalue| over the augmentation ideal
    double bound = 0;          // sqrt(n |B| / k)
    bool bound_holds = false;  // (max_abs_ideal)^2 <= n|B|/k + slack
    double margin = 0;         // n|B|/k - (max_abs_ideal)^2
    bool trace_exact = false;  // tr(X^2) == n |B| as integers
    bool rowsum_exact = false; // X e == |B| e as integers
    std::string method;        // "dense" or "lanczos"
    std::uint64_t iterations = 0;
    double tolerance = 0;
};

// Extremal spectrum on the augmentation ideal (the orthogonal complement of
// the all-ones vector).  k is the least nontrivial irreducible degree of G;
// the operator's eigenvalue bound on the ideal is n|B|/k >= lambda^2.
SpectralReport spectrum_on_ideal(const ConvolutionOperator& op, std::uint64_t k);

// Convenience wrapper: build + solve + check the bound.  The bound is a
// theorem, so bound_holds == false indicates an implementation bug.
SpectralReport verify_mixing_bound(const FiniteGroup& G, const Subset& B, std::uint64_t k,
                                   const SpectralOptions& opts = {});

struct TripleWitness {
    bool found = false;
    Elem a = 0, b = 0, c = 0;   // a*b = c with a in A, b in B, c in C
    bool guaranteed = false;    // |A||B||C| > n^3 / k
    std::uint64_t pairs_scanned = 0;
};

// First witness (a,b,c) in A x B (index order) with ab in C, or
// certified-none after the exhaustive scan.  When |A||B||C| > n^3/k a witness
// is guaranteed; failing to find one in that regime throws TheoremViolation.
TripleWitness mixing_triple_witness(const FiniteGroup& G, const Subset& A, const Subset& B,
                                    const Subset& C, std::uint64_t k);

} // namespace qrg
