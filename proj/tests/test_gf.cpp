#include <doctest.h>

#include <set>

#include "qrg/errors.hpp"
#include "qrg/gf.hpp"

using namespace qrg;

TEST_CASE("field axioms hold exhaustively for small prime powers") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
        CAPTURE(q);
        const GFq F(q);
        REQUIRE(F.q() == q);
        for (GFElem a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.mul(a, 0) == 0);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            for (GFElem b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                for (GFElem c = 0; c < q; ++c) {
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                    CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
                }
            }
        }
    }
}

TEST_CASE("multiplicative group has order q-1") {
    for (std::uint64_t q : {4, 8, 9, 16, 25, 49}) {
        const GFq F(q);
        const GFElem g = F.primitive_element();
        std::set<GFElem> powers;
        GFElem x = 1;
        for (std::uint64_t i = 0; i + 1 < q; ++i) {
            powers.insert(x);
            x = F.mul(x, g);
        }
        CHECK(powers.size() == q - 1);
        CHECK(x == 1); // g^(q-1) = 1
    }
}

TEST_CASE("frobenius is a field automorphism fixing the prime subfield") {
    const GFq F(9);
    for (GFElem a = 0; a < 9; ++a)
        for (GFElem b = 0; b < 9; ++b) {
            CHECK(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
            CHECK(F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)));
        }
    for (GFElem a = 0; a < 3; ++a) CHECK(F.frob(a) == a); // GF(3) inside GF(9)
    for (GFElem a = 0; a < 9; ++a) CHECK(F.frob(F.frob(a)) == a); // order 2
}

TEST_CASE("prime power split accepts p^f and rejects everything else") {
    CHECK(prime_power_split(7) == std::pair<std::uint64_t, int>{7, 1});
    CHECK(prime_power_split(8) == std::pair<std::uint64_t, int>{2, 3});
    CHECK(prime_power_split(121) == std::pair<std::uint64_t, int>{11, 2});
    CHECK_THROWS_AS(prime_power_split(1), InputError);
    CHECK_THROWS_AS(prime_power_split(6), InputError);
    CHECK_THROWS_AS(prime_power_split(12), InputError);
    CHECK_THROWS_AS(prime_power_split(100), InputError);
}

TEST_CASE("polynomial division, gcd and evaluation are consistent") {
    const GFq F(5);
    const GFPoly a = {1, 0, 2, 3}; // 3x^3 + 2x^2 + 1
    const GFPoly b = {4, 1};       // x + 4
    auto [quot, rem] = poly_divmod(F, a, b);
    // a == quot * b + rem, checked pointwise
    for (GFElem x = 0; x < 5; ++x) {
        const GFElem lhs = poly_eval(F, a, x);
        const GFElem rhs =
            F.add(F.mul(poly_eval(F, quot, x), poly_eval(F, b, x)), poly_eval(F, rem, x));
        CHECK(lhs == rhs);
    }
    CHECK(poly_degree(rem) < poly_degree(b));

    // gcd of (x-1)(x-2) and (x-2)(x-3) is x-2 up to normalization (monic)
    const GFPoly f = poly_mul(F, GFPoly{4, 1}, GFPoly{3, 1}); // (x+4)(x+3) = (x-1)(x-2)
    const GFPoly g = poly_mul(F, GFPoly{3, 1}, GFPoly{2, 1}); // (x-2)(x-3)
    CHECK(poly_gcd(F, f, g) == GFPoly{3, 1});
}

TEST_CASE("squarefree detection matches factor multiplicities") {
    const GFq F(3);
    const GFPoly sq = poly_mul(F, GFPoly{1, 1}, GFPoly{1, 1}); // (x+1)^2
    CHECK_FALSE(poly_is_squarefree(F, sq));
    CHECK(poly_is_squarefree(F, GFPoly{1, 0, 1})); // x^2 + 1, irreducible over GF(3)
    // x^3 - x = x(x-1)(x+1): squarefree although its derivative is constant
    CHECK(poly_is_squarefree(F, GFPoly{0, 2, 0, 1}));
    // x^3 + 2: derivative vanishes; equals (x + 2)^3 in characteristic 3
    CHECK_FALSE(poly_is_squarefree(F, GFPoly{2, 0, 0, 1}));
}

TEST_CASE("factorization multiplies back and flags irreducibles") {
    const GFq F(2);
    // x^4 + x + 1 is irreducible over GF(2)
    CHECK(poly_is_irreducible(F, GFPoly{1, 1, 0, 0, 1}));
    // x^4 + 1 = (x+1)^4 over GF(2)
    const auto factors = poly_factor(F, GFPoly{1, 0, 0, 0, 1});
    REQUIRE(factors.size() == 4);
    for (const auto& f : factors) CHECK(f == GFPoly{1, 1});

    const GFq F7(7);
    GFPoly prod = {1};
    const GFPoly target = {3, 0, 5, 1}; // x^3 + 5x^2 + 3
    for (const auto& f : poly_factor(F7, target)) {
        CHECK(poly_is_irreducible(F7, f));
        prod = poly_mul(F7, prod, f);
    }
    CHECK(prod == target);
}

TEST_CASE("field construction rejects non prime powers and oversized q") {
    CHECK_THROWS_AS(GFq(6), InputError);
    CHECK_THROWS_AS(GFq(1), InputError);
    CHECK_THROWS_AS(GFq(2048), CapExceeded);
}
