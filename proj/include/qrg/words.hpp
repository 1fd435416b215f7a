#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrg/group.hpp"
#include "qrg/product.hpp"
#include "qrg/subset.hpp"

namespace qrg {

struct WordTerm {
    int letter = 0;           // 0-based
    long long exponent = 0;   // nonzero
};

// Freely reduced group word.  Adjacent terms always use distinct letters.
struct Word {
    std::vector<WordTerm> terms;
    int arity = 0; // letters x1..x_arity (= max letter index + 1)

    bool trivial() const { return terms.empty(); }
};

// Grammar: one or more factors; factor := atom ('^' integer)?;
// atom := letter | '[' word ',' word ']' (commutator u^-1 v^-1 u v, nestable);
// letter := x1..x9 | a..z (an 'x' followed by a digit is the indexed form).
// Whitespace between factors is ignored.  Errors carry a position.
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

// Substitute tuple[i] for letter i.  The tuple must cover the arity.
Elem evaluate_word(const FiniteGroup& G, const Word& w, const std::vector<Elem>& tuple);

struct WordValueOptions {
    std::uint64_t work_cap = 1'000'000'000; // tuples in exact mode
    std::uint64_t trials = 1'000'000;       // sampled mode
    std::uint64_t seed = 0;
    int workers = 1;
};

struct WordValueSet {
    bool exact = false;
    Subset mask;                      // exact mode only
    std::uint64_t size = 0;           // |w(G)| (exact) or distinct values seen
    double density = 0;               // size / n
    double radius = 0;                // 3-sigma binomial radius (sampled mode)
    std::uint64_t trials = 0;         // sampled mode
};

// Intersection of the value sets of the given nontrivial words.  Exact when
// every word's tuple space fits the work cap (arity-1 words enumerate one
// element per conjugacy class and close under conjugation); otherwise the
// density is estimated from seeded random tuples.  Exact masks are verified
// to contain the identity and to be closed under conjugation.
WordValueSet word_value_set(const FiniteGroup& G, const std::vector<Word>& ws,
                            const WordValueOptions& opts = {});

struct WaringReport {
    std::uint64_t wbar_size = 0;     // |w̄(L)|
    bool sparse = false;
    std::uint64_t sparse_size = 0;   // ceil(|w̄(L)| / q^(r/13)) when sparse
    CoverReport cover;               // W^3 coverage for the chosen W
    bool empirical = true;           // small-order non-coverage is data, not error
    bool distinct_checked = false;
    bool distinct_covers = false;    // every g = h1 h2 h3 with pairwise distinct h_i
    std::uint64_t distinct_failures = 0;
};

// Cube-covering check for W = w̄(L) (or a seeded sparse sample of it sized by
// the q^(r/13) rule, which needs Lie-type parameters).  Optionally scans for
// distinct-factor triples for every group element.
WaringReport waring_check(const FiniteGroup& L, const std::vector<Word>& ws, bool sparse,
                          bool check_distinct, const WordValueOptions& opts = {});

// Squarefree characteristic polynomial = distinct eigenvalues in the closure.
bool is_regular_semisimple(const FiniteGroup& G, Elem g);

struct RsFraction {
    bool exact = false;
    std::uint64_t hits = 0;
    std::uint64_t total = 0;  // n (exact) or sample count
    double fraction = 0;
    double radius = 0;        // 3-sigma binomial radius (Monte Carlo)
    std::uint64_t q = 0;      // field size, for the 1 - C/q comparison
};

// Fraction of regular semisimple elements: exhaustive when the group is
// enumerated, otherwise Monte Carlo over a product-replacement walk.
RsFraction rs_fraction(const FiniteGroup& G, const WordValueOptions& opts = {});

struct GenProbReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double frequency = 0;
    std::uint64_t wbar_size = 0;
};

// Fraction of seeded trials in which two uniform elements of w̄(L) generate L.
// Closure early-exits once it exceeds n/2 (no proper subgroup is larger).
GenProbReport random_pair_generates(const FiniteGroup& L, const std::vector<Word>& ws,
                                    std::uint64_t trials, const WordValueOptions& opts = {});

} // namespace qrg
