#include <doctest.h>

#include "alpha_oracle.hpp"
#include "qrg/chartable.hpp"
#include "qrg/conjugacy.hpp"
#include "qrg/errors.hpp"
#include "qrg/families.hpp"
#include "qrg/product.hpp"
#include "qrg/subset.hpp"

using namespace qrg;

TEST_CASE("product sets match a direct double loop") {
    const GroupPtr G = make_symmetric(4);
    const Subset A = subset_from_indices(*G, {1, 5, 9, 20});
    const Subset B = subset_from_indices(*G, {0, 2, 3, 17});
    const Subset got = product_set(*G, A, B);
    Bitset expect(G->order());
    for (Elem a : A.elements())
        for (Elem b : B.elements()) expect.set(G->mul(a, b));
    CHECK(got.mask == expect);
    CHECK(got.count == expect.count());

    ProductOptions threaded;
    threaded.workers = 4;
    CHECK(product_set(*G, A, B, threaded).mask == expect);
}

TEST_CASE("product work cap is enforced") {
    const GroupPtr G = make_alternating(5);
    const Subset A = subset_random(*G, 50, 1);
    ProductOptions tiny;
    tiny.work_cap = 100;
    CHECK_THROWS_AS(product_set(*G, A, A, tiny), CapExceeded);
}

TEST_CASE("exact product-free maxima agree with the plain oracle on all fixtures") {
    std::vector<GroupPtr> fixtures;
    for (std::uint64_t m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 24})
        fixtures.push_back(make_cyclic(m));
    for (std::uint64_t m : {2, 3, 4, 5, 6, 7, 8, 12}) fixtures.push_back(make_dihedral(m));
    fixtures.push_back(make_symmetric(3));
    fixtures.push_back(make_symmetric(4));
    fixtures.push_back(make_alternating(4));
    fixtures.push_back(load_cayley_table(QRG_FIXTURE_DIR "/q8.txt"));
    for (const GroupPtr& G : fixtures) {
        CAPTURE(G->order());
        const AlphaReport a = alpha_exact(*G);
        CHECK(a.alpha == qrg_test::alpha_oracle(*G));
        CHECK(a.witness.size() == a.alpha);
        const Subset W = subset_from_indices(*G, a.witness);
        CHECK(is_product_free(*G, W).product_free);
    }
}

TEST_CASE("known product-free maxima") {
    CHECK(alpha_exact(*make_cyclic(3)).alpha == 1);
    CHECK(alpha_exact(*make_cyclic(5)).alpha == 2);  // e.g. {1, 4}
    CHECK(alpha_exact(*make_symmetric(3)).alpha == 3); // the transpositions
    CHECK(alpha_exact(*make_symmetric(4)).alpha == 12); // the odd permutations
    // regression value, computed by this code and confirmed by the plain
    // oracle and by a randomized greedy search
    CHECK(alpha_exact(*make_alternating(5)).alpha == 18);
}

TEST_CASE("product-free certificates name a violating triple") {
    const GroupPtr C = make_cyclic(12);
    const Subset bad = subset_from_indices(*C, {1, 2, 3});
    const ProductFreeCert cert = is_product_free(*C, bad);
    REQUIRE_FALSE(cert.product_free);
    CHECK(C->mul(cert.x, cert.y) == cert.z);
    CHECK(bad.test(cert.x));
    CHECK(bad.test(cert.y));
    CHECK(bad.test(cert.z));

    const Subset good = subset_from_indices(*C, {4, 5, 6, 7});
    CHECK(is_product_free(*C, good).product_free);
}

TEST_CASE("search in PSL(2,7) finds the order-24 coset and stays verified") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 7);
    const ConjClasses cls = conjugacy_classes(*G);
    const ProductFreeSearchReport r = product_free_search(*G, cls);
    CHECK(r.best_size >= 24);
    CHECK(r.best_coset_subgroup == 24);
    CHECK(r.lattice_certified);
    CHECK(r.best_size <= 116); // ceiling n / k^(1/3) = 116.48...
    const Subset W = subset_from_indices(*G, r.witness);
    CHECK(is_product_free(*G, W).product_free);
}

TEST_CASE("search results verify on more groups") {
    for (const GroupPtr& G : {make_alternating(5), make_symmetric(4), make_dihedral(9)}) {
        const ProductFreeSearchReport r = product_free_search(*G, conjugacy_classes(*G));
        CHECK(r.best_size >= 1);
        const Subset W = subset_from_indices(*G, r.witness);
        CHECK(is_product_free(*G, W).product_free);
    }
}

TEST_CASE("covering threshold logic on PSL(2,7)") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 7);
    const std::uint64_t k = 3;

    const Subset big = subset_random(*G, 117, 42);
    const CoverReport above = triple_product_covers(*G, big, k);
    CHECK(above.above_threshold); // 117 > 168 / 3^(1/3) = 116.48
    CHECK(above.covers);
    CHECK(above.missing.empty());
    CHECK(above.threshold == doctest::Approx(116.4846940909).epsilon(1e-9));

    const Subset small = subset_from_indices(*G, {1, 2});
    const CoverReport below = triple_product_covers(*G, small, k);
    CHECK_FALSE(below.above_threshold);
    CHECK_FALSE(below.covers);
    CHECK_FALSE(below.missing.empty());
}

TEST_CASE("k = 1 makes the covering threshold vacuous") {
    const GroupPtr C = make_cyclic(12);
    const Subset B = subset_from_indices(*C, {1, 11});
    const CoverReport r = triple_product_covers(*C, B, 1);
    // threshold n / 1 = n can never be exceeded by a subset
    CHECK(r.threshold == doctest::Approx(12.0));
    CHECK_FALSE(r.above_threshold);
    CHECK_FALSE(r.covers);
}

TEST_CASE("projective covering rule on PSL(2,13) and its vacuous regime") {
    const GroupPtr L = make_classical(MatFamily::PSL, 2, 13);
    const Subset B = subset_random(*L, 960, 7);
    const CoverReport r = psl_covering_check(*L, B);
    CHECK(r.above_threshold); // 960 >= 2 * 1092 / 13^(1/3) = 928.8
    CHECK(r.covers);
    CHECK(r.threshold == doctest::Approx(928.834168698).epsilon(1e-9));

    // PSL(2,2) has order 6 < threshold 12 / 2^(1/3): nothing is ever certified
    const GroupPtr S = make_classical(MatFamily::PSL, 2, 2);
    const Subset all = subset_random(*S, 6, 1);
    const CoverReport v = psl_covering_check(*S, all);
    CHECK(v.vacuous);
    CHECK(v.covers); // B = G covers regardless

    CHECK_THROWS_AS(psl_covering_check(*make_symmetric(4), B), InputError);
}

TEST_CASE("cover exponent of generators of PSL(2,5)") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 5);
    Subset X(G->order());
    for (Elem g : G->generators()) X.add(g);
    const CoverExponentReport r = cover_exponent(*G, X);
    CHECK(r.generates);
    CHECK(r.closure_order == 60);
    REQUIRE(r.exponent.has_value());
    CHECK(*r.exponent == 9);
    CHECK(r.growth == std::vector<std::uint64_t>{2, 4, 8, 16, 28, 43, 53, 59, 60});
}

TEST_CASE("positive powers of a single rotation can never cover") {
    const GroupPtr C = make_cyclic(5);
    const Subset X = subset_from_indices(*C, {1});
    const CoverExponentReport r = cover_exponent(*C, X);
    CHECK(r.generates); // <g> = C5 with inverses allowed
    CHECK_FALSE(r.exponent.has_value()); // X^t = {t mod 5}, never everything
    CHECK(r.cycle_detected);

    // adding the identity makes the layers accumulate instead
    const Subset Y = subset_from_indices(*C, {0, 1});
    const CoverExponentReport r2 = cover_exponent(*C, Y);
    REQUIRE(r2.exponent.has_value());
    CHECK(*r2.exponent == 4); // {0,1} -> {0,1,2} -> ... -> everything
}

TEST_CASE("fixed-point-free census of the alternating group on five points") {
    const GroupPtr A5 = make_alternating(5);
    const FpfReport r = fpf_triple_check(*A5);
    CHECK(r.points == 5);
    CHECK(r.transitive);
    CHECK(r.simple);
    CHECK(r.fpf_count == 24); // the 5-cycles
    CHECK(r.proportion == doctest::Approx(0.4));
    CHECK(r.triple_covers);

    // independent recount: a 5-point permutation is fixed-point-free here
    // exactly when it is a 5-cycle, and F * F * F built by brute force covers
    Bitset F(A5->order());
    for (Elem g = 0; g < A5->order(); ++g)
        if (perm_fixed_points(A5->perm(g)) == 0) F.set(g);
    CHECK(F.count() == 24);
    Bitset cube(A5->order());
    F.for_each([&](std::size_t a) {
        F.for_each([&](std::size_t b) {
            const Elem ab = A5->mul(static_cast<Elem>(a), static_cast<Elem>(b));
            F.for_each([&](std::size_t c) {
                cube.set(A5->mul(ab, static_cast<Elem>(c)));
            });
        });
    });
    CHECK(cube.count() == A5->order());
}

TEST_CASE("derangement census of the symmetric group on four points") {
    const GroupPtr S4 = make_symmetric(4);
    const FpfReport r = fpf_triple_check(*S4);
    CHECK(r.fpf_count == 9); // derangements of four points
    CHECK(r.proportion == doctest::Approx(0.375));
    CHECK(r.transitive);
    CHECK_FALSE(r.simple);
}

TEST_CASE("quasirandomness profile of PSL(2,7)") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 7);
    const QuasirandomProfile p = quasirandomness_profile(*G);
    CHECK(p.n == 168);
    CHECK(p.perfect);
    CHECK(p.k == 3);
    CHECK(p.product_free_found == 24);
    CHECK(p.product_free_bound == doctest::Approx(116.4846940909).epsilon(1e-9));
    CHECK(p.product_free_found <= p.product_free_bound);
    CHECK(p.c3_threshold == 117); // least size strictly above the bound
    CHECK(p.c3_empirical == 13);  // seeded empirical covering onset
    CHECK(p.c3_empirical <= p.c3_threshold);
    CHECK(p.min_index == 7);
    CHECK(p.min_index_certified);
    // the bounded-index corollary with its explicit constant
    CHECK(static_cast<unsigned __int128>(p.min_index) <=
          static_cast<unsigned __int128>(10'000'000'000ULL) * p.k * p.k);
}

TEST_CASE("profile of a small nonperfect group still reports coherent fields") {
    const QuasirandomProfile p = quasirandomness_profile(*make_symmetric(4));
    CHECK(p.n == 24);
    CHECK_FALSE(p.perfect);
    CHECK(p.k == 1);
    CHECK(p.min_index == 2);
    CHECK(p.c3_threshold == 25); // bound n / 1 is never exceedable: sentinel past n
    CHECK(p.product_free_found == 12);
}
