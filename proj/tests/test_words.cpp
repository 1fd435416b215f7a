#include <doctest.h>

#include <cmath>

#include "qrg/errors.hpp"
#include "qrg/families.hpp"
#include "qrg/gf.hpp"
#include "qrg/words.hpp"

using namespace qrg;

TEST_CASE("word parsing canonicalizes and freely reduces") {
    const Word comm = parse_word("[x1,x2]");
    CHECK(comm.arity == 2);
    CHECK(word_to_string(comm) == "x1^-1 x2^-1 x1 x2");

    CHECK(parse_word("x1 x1^-1").trivial());
    CHECK(parse_word("x1^3 x1^-3").trivial());
    CHECK(word_to_string(parse_word("x1 x1")) == "x1^2");
    CHECK(word_to_string(parse_word("a^2 b^-3")) == "x1^2 x2^-3");
    CHECK(parse_word("[[x1,x2],x3]").arity == 3);
    CHECK(parse_word("[x1,x2]^2").terms.size() == 8);
    CHECK(word_to_string(parse_word("[x1,x2]^-1")) == "x2^-1 x1^-1 x2 x1");
    CHECK(parse_word("x1^0").trivial());
    CHECK(parse_word("  x1 \t x2  ").arity == 2);
}

TEST_CASE("word syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_word("x1 + x2"), doctest::Contains("position 3"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_word("[x1 x2]"), doctest::Contains("','"), InputError);
    CHECK_THROWS_WITH_AS(parse_word("[x1,x2"), doctest::Contains("']'"), InputError);
    CHECK_THROWS_AS(parse_word(""), InputError);
    CHECK_THROWS_AS(parse_word("x1^"), InputError);
    CHECK_THROWS_AS(parse_word("x0"), InputError);
}

TEST_CASE("evaluation respects the group operations") {
    const GroupPtr G = make_symmetric(4);
    const Word w = parse_word("x1 x2 x1^-1");
    for (Elem a = 0; a < G->order(); a += 5)
        for (Elem b = 0; b < G->order(); b += 7) {
            const Elem got = evaluate_word(*G, w, {a, b});
            CHECK(got == G->mul(G->mul(a, b), G->inv(a)));
        }
    // commutators vanish in abelian groups
    const GroupPtr C = make_cyclic(15);
    const Word comm = parse_word("[x1,x2]");
    for (Elem a = 0; a < 15; ++a)
        for (Elem b = 0; b < 15; ++b) CHECK(evaluate_word(*C, comm, {a, b}) == 0);

    CHECK_THROWS_AS(evaluate_word(*G, comm, {1}), InputError); // arity 2, one element
}

TEST_CASE("square and commutator value sets of the desk groups") {
    const GroupPtr A5 = make_alternating(5);
    const WordValueSet sq = word_value_set(*A5, {parse_word("x1^2")});
    CHECK(sq.exact);
    CHECK(sq.size == 45);
    CHECK(sq.mask.test(0));

    const WordValueSet cm = word_value_set(*A5, {parse_word("[x1,x2]")});
    CHECK(cm.exact);
    CHECK(cm.size == 60); // every element of Alt(5) is a commutator

    const WordValueSet both =
        word_value_set(*A5, {parse_word("x1^2"), parse_word("[x1,x2]")});
    CHECK(both.size == 45); // intersection

    const GroupPtr L = make_classical(MatFamily::PSL, 2, 7);
    CHECK(word_value_set(*L, {parse_word("x1^2")}).size == 126);
}

TEST_CASE("value sets reject the trivial word and non-enumerated groups") {
    const GroupPtr A5 = make_alternating(5);
    CHECK_THROWS_AS(word_value_set(*A5, {parse_word("x1 x1^-1")}), InputError);
    CHECK_THROWS_AS(word_value_set(*A5, {}), InputError);
    GroupOptions tiny;
    tiny.cap_enum = 10;
    const GroupPtr M = make_classical(MatFamily::SL, 2, 7, tiny);
    CHECK_THROWS_AS(word_value_set(*M, {parse_word("x1^2")}), CapExceeded);
}

TEST_CASE("sampling kicks in over the work cap and stays within its radius") {
    const GroupPtr A5 = make_alternating(5);
    WordValueOptions opts;
    opts.work_cap = 100; // 60^2 tuples would be needed for exactness
    opts.trials = 150000;
    opts.seed = 271828;
    const WordValueSet s = word_value_set(*A5, {parse_word("[x1,x2]")}, opts);
    CHECK_FALSE(s.exact);
    CHECK(s.trials == opts.trials);
    CHECK(s.size <= 60);
    // the exact density is 1; the estimate plus its radius must reach it
    CHECK(s.density + s.radius >= 1.0 - 1e-12);
    // reproducible under the same seed
    const WordValueSet s2 = word_value_set(*A5, {parse_word("[x1,x2]")}, opts);
    CHECK(s2.size == s.size);
}

TEST_CASE("waring checks at desk scale: full sets cover") {
    WordValueOptions opts;
    const WaringReport a5 = waring_check(*make_alternating(5), {parse_word("x1^2")},
                                         false, false, opts);
    CHECK(a5.wbar_size == 45);
    CHECK(a5.cover.covers);
    CHECK(a5.empirical);

    const GroupPtr L = make_classical(MatFamily::PSL, 2, 7);
    const WaringReport l7 = waring_check(*L, {parse_word("x1^2")}, false, true, opts);
    CHECK(l7.wbar_size == 126);
    CHECK(l7.cover.covers);
    CHECK(l7.distinct_checked);
    CHECK(l7.distinct_covers); // pairwise distinct factors also suffice
    CHECK(l7.distinct_failures == 0);
}

TEST_CASE("sparse waring sampling uses the thirteenth-root rule") {
    const GroupPtr L = make_classical(MatFamily::PSL, 2, 7);
    WordValueOptions opts;
    opts.seed = 5;
    const WaringReport r = waring_check(*L, {parse_word("x1^2")}, true, false, opts);
    CHECK(r.sparse);
    // ceil(126 / 7^(1/13)) = ceil(108.49) = 109
    CHECK(r.sparse_size == 109);
    CHECK(r.cover.subset_size == 109);
    CHECK_FALSE(r.cover.above_threshold); // never asserted, only reported

    // non-Lie groups have no q^(r/13) to speak of
    CHECK_THROWS_AS(
        waring_check(*make_alternating(5), {parse_word("x1^2")}, true, false, opts),
        InputError);
}

namespace {

// Independent census of regular semisimple elements: group them by
// characteristic polynomial.  A squarefree monic f with the determinant-
// compatible constant term contributes one full conjugacy class of size
// |GL(d,q)| / |units of F_q[x]/(f)|, and that class lies inside SL since the
// determinant is determined by f.  Everything is exact 64-bit arithmetic.
std::uint64_t rs_census_sl(int d, std::uint64_t q) {
    const GFqPtr F = make_field(q);
    std::uint64_t gl = 1;
    std::uint64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    std::uint64_t qpow = 1;
    for (int i = 0; i < d; ++i) {
        gl *= qd - qpow;
        qpow *= q;
    }
    // constant term of det(tI - x) is (-1)^d det(x) = (-1)^d for SL
    const GFElem c0 = (d % 2 == 0) ? GFElem{1} : F->neg(1);
    std::uint64_t count = 0;
    std::uint64_t mids = 1;
    for (int i = 0; i < d - 1; ++i) mids *= q;
    for (std::uint64_t m = 0; m < mids; ++m) {
        GFPoly f(static_cast<std::size_t>(d) + 1, 0);
        f[0] = c0;
        f[static_cast<std::size_t>(d)] = 1;
        std::uint64_t rest = m;
        for (int i = 1; i < d; ++i) {
            f[static_cast<std::size_t>(i)] = static_cast<GFElem>(rest % q);
            rest /= q;
        }
        if (!poly_is_squarefree(*F, f)) continue;
        std::uint64_t units = 1;
        for (const GFPoly& g : poly_factor(*F, f)) {
            std::uint64_t qe = 1;
            for (int i = 0; i < poly_degree(g); ++i) qe *= q;
            units *= qe - 1;
        }
        count += gl / units;
    }
    return count;
}

} // namespace

TEST_CASE("regular semisimple fractions match the characteristic-polynomial census") {
    struct Case {
        int d;
        std::uint64_t q, hits, total;
    };
    const Case cases[] = {
        {2, 2, 2, 6},      {2, 3, 6, 24},      {2, 5, 70, 120},
        {2, 7, 238, 336},  {3, 2, 104, 168},
    };
    for (const auto& c : cases) {
        CAPTURE(c.q);
        const GroupPtr G = make_classical(MatFamily::SL, c.d, c.q);
        const RsFraction r = rs_fraction(*G);
        REQUIRE(r.exact);
        CHECK(r.hits == c.hits);
        CHECK(r.total == c.total);
        CHECK(rs_census_sl(c.d, c.q) == c.hits); // census vs exhaustive scan
    }
}

TEST_CASE("monte carlo fraction on SL(4,3) agrees with the census") {
    GroupOptions matrix_only;
    matrix_only.cap_enum = 1000;
    const GroupPtr G = make_classical(MatFamily::SL, 4, 3, matrix_only);
    REQUIRE_FALSE(G->enumerated());
    const double exact = static_cast<double>(rs_census_sl(4, 3)) /
                         static_cast<double>(classical_order(MatFamily::SL, 4, 3));
    WordValueOptions opts;
    opts.trials = 20000;
    opts.seed = 17;
    const RsFraction mc = rs_fraction(*G, opts);
    CHECK_FALSE(mc.exact);
    CHECK(mc.total == opts.trials);
    CHECK(std::abs(mc.fraction - exact) <= mc.radius); // radius is three sigma
    CHECK(mc.q == 3);
}

TEST_CASE("regular semisimple detection needs a matrix group") {
    CHECK_THROWS_AS(is_regular_semisimple(*make_symmetric(4), 1), InputError);
    CHECK_THROWS_AS(rs_fraction(*make_alternating(5)), InputError);
}

TEST_CASE("generation frequency of pairs drawn from a value set") {
    const GroupPtr A5 = make_alternating(5);
    WordValueOptions opts;
    opts.seed = 99;
    const GenProbReport r = random_pair_generates(*A5, {parse_word("x1")}, 2000, opts);
    CHECK(r.wbar_size == 60);
    CHECK(r.trials == 2000);
    CHECK(r.successes <= 2000);
    // true probability is 19/30 = 0.633...; 2000 draws stay well inside (0.55, 0.72)
    CHECK(r.frequency > 0.55);
    CHECK(r.frequency < 0.72);
    // deterministic under the seed
    const GenProbReport r2 = random_pair_generates(*A5, {parse_word("x1")}, 2000, opts);
    CHECK(r2.successes == r.successes);

    const GroupPtr L = make_classical(MatFamily::PSL, 2, 7);
    const GenProbReport g = random_pair_generates(*L, {parse_word("x1^2")}, 200, opts);
    CHECK(g.wbar_size == 126);
    CHECK(g.trials == 200);
    CHECK(g.frequency >= 0.0);
    CHECK(g.frequency <= 1.0);
}
