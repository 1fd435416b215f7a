#include <doctest.h>

#include <algorithm>
#include <complex>

#include "qrg/chartable.hpp"
#include "qrg/conjugacy.hpp"
#include "qrg/errors.hpp"
#include "qrg/families.hpp"

using namespace qrg;

namespace {

std::vector<std::uint64_t> sorted_degrees(const FiniteGroup& G) {
    CharacterTable t = character_table(G, conjugacy_classes(G));
    std::vector<std::uint64_t> d = t.degrees;
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST_CASE("degree multisets match the published tables") {
    CHECK(sorted_degrees(*make_alternating(5)) ==
          std::vector<std::uint64_t>{1, 3, 3, 4, 5});
    CHECK(sorted_degrees(*make_classical(MatFamily::PSL, 2, 7)) ==
          std::vector<std::uint64_t>{1, 3, 3, 6, 7, 8});
    CHECK(sorted_degrees(*make_classical(MatFamily::PSL, 2, 11)) ==
          std::vector<std::uint64_t>{1, 5, 5, 10, 10, 11, 12, 12});
    CHECK(sorted_degrees(*make_classical(MatFamily::PSL, 2, 13)) ==
          std::vector<std::uint64_t>{1, 7, 7, 12, 12, 12, 13, 14, 14});
    CHECK(sorted_degrees(*make_symmetric(4)) == std::vector<std::uint64_t>{1, 1, 2, 3, 3});
    CHECK(sorted_degrees(*make_classical(MatFamily::SL, 2, 3)) ==
          std::vector<std::uint64_t>{1, 1, 1, 2, 2, 2, 3});
    CHECK(sorted_degrees(*make_alternating(6)) ==
          std::vector<std::uint64_t>{1, 5, 5, 8, 8, 9, 10});
    CHECK(sorted_degrees(*make_classical(MatFamily::PSU, 3, 3)) ==
          std::vector<std::uint64_t>{1, 6, 7, 7, 7, 14, 21, 21, 21, 27, 28, 28, 32, 32});
}

TEST_CASE("sum of squared degrees is the group order, exactly") {
    for (const GroupPtr& G :
         {make_cyclic(12), make_dihedral(9), make_symmetric(5), make_alternating(6),
          make_classical(MatFamily::SL, 2, 9), make_classical(MatFamily::PSL, 3, 3),
          make_classical(MatFamily::SU, 3, 2), load_cayley_table(QRG_FIXTURE_DIR "/q8.txt")}) {
        const CharacterTable t = character_table(*G, conjugacy_classes(*G));
        std::uint64_t sum = 0;
        for (std::uint64_t d : t.degrees) sum += d * d;
        CHECK(sum == G->order());
        CHECK(t.row_residual < 1e-8);
        CHECK(t.col_residual < 1e-8);
    }
}

TEST_CASE("least nontrivial degrees of the quasirandom showcases") {
    CHECK(min_nontrivial_degree(*make_alternating(5)) == 3);
    CHECK(min_nontrivial_degree(*make_classical(MatFamily::PSL, 2, 7)) == 3);
    CHECK(min_nontrivial_degree(*make_classical(MatFamily::PSL, 2, 11)) == 5);
    CHECK(min_nontrivial_degree(*make_classical(MatFamily::PSL, 2, 13)) == 7);
    CHECK(min_nontrivial_degree(*make_alternating(6)) == 5);
    CHECK(min_nontrivial_degree(*make_classical(MatFamily::SL, 2, 9)) == 4);
    CHECK(min_nontrivial_degree(*make_classical(MatFamily::PSL, 3, 3)) == 12);
    CHECK(min_nontrivial_degree(*make_classical(MatFamily::PSU, 3, 3)) == 6);
    CHECK(min_nontrivial_degree(*make_cyclic(5)) == 1);   // abelian: all linear
    CHECK(min_nontrivial_degree(*make_symmetric(4)) == 1); // sign character
}

TEST_CASE("PSL(2,q) satisfies the (q-1)/2 degree threshold") {
    for (std::uint64_t q : {5, 7, 11, 13}) {
        const std::uint64_t k = min_nontrivial_degree(*make_classical(MatFamily::PSL, 2, q));
        CHECK(k >= (q - 1) / 2);
    }
}

TEST_CASE("first row and column are trivial and degrees respectively") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 7);
    const ConjClasses cls = conjugacy_classes(*G);
    const CharacterTable t = character_table(*G, cls);
    for (std::size_t j = 0; j < cls.count(); ++j) {
        CHECK(std::abs(t.values[0][j] - 1.0) < 1e-10); // trivial character
        for (std::size_t i = 0; i < t.degrees.size(); ++i)
            if (cls.rep[j] == 0)
                CHECK(std::abs(t.values[i][j] - static_cast<double>(t.degrees[i])) < 1e-10);
    }
}

TEST_CASE("second orthogonality holds column-wise") {
    const GroupPtr G = make_alternating(5);
    const ConjClasses cls = conjugacy_classes(*G);
    const CharacterTable t = character_table(*G, cls);
    for (std::size_t j1 = 0; j1 < cls.count(); ++j1)
        for (std::size_t j2 = 0; j2 < cls.count(); ++j2) {
            std::complex<double> sum = 0;
            for (std::size_t i = 0; i < t.degrees.size(); ++i)
                sum += t.values[i][j1] * std::conj(t.values[i][j2]);
            const double expect =
                j1 == j2 ? static_cast<double>(G->order()) / static_cast<double>(cls.size[j1])
                         : 0.0;
            CHECK(std::abs(sum - expect) < 1e-8);
        }
}

TEST_CASE("golden ratio values appear on the order-5 classes of Alt(5)") {
    const GroupPtr G = make_alternating(5);
    const ConjClasses cls = conjugacy_classes(*G);
    const CharacterTable t = character_table(*G, cls);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    int hits = 0;
    for (std::size_t i = 0; i < t.degrees.size(); ++i) {
        if (t.degrees[i] != 3) continue;
        for (std::size_t j = 0; j < cls.count(); ++j) {
            if (cls.elem_order[j] != 5) continue;
            const double re = t.values[i][j].real();
            if (std::abs(re - phi) < 1e-8 || std::abs(re - (1.0 - phi)) < 1e-8) ++hits;
            CHECK(std::abs(t.values[i][j].imag()) < 1e-8);
        }
    }
    CHECK(hits == 4); // two degree-3 characters x two order-5 classes
}

TEST_CASE("direct product least degree is the minimum of the factors") {
    GroupOptions roomy;
    roomy.cap_table = 4000; // 60 * 60 exceeds the default table cap
    const GroupPtr P = direct_product(make_alternating(5), make_alternating(5), roomy);
    CHECK(min_nontrivial_degree(*P) == 3);
    const GroupPtr Q = direct_product(make_alternating(5), make_cyclic(2));
    CHECK(min_nontrivial_degree(*Q) == 1); // sign of the cyclic factor
}

TEST_CASE("abelian tables are roots of unity with all-linear degrees") {
    const GroupPtr C = make_cyclic(8);
    const CharacterTable t = character_table(*C, conjugacy_classes(*C));
    REQUIRE(t.degrees.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(t.degrees[i] == 1);
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(std::abs(std::abs(t.values[i][j]) - 1.0) < 1e-10);
    }
}

TEST_CASE("the trivial group has no nontrivial character") {
    CHECK_THROWS_AS(min_nontrivial_degree(*make_cyclic(1)), InputError);
}

TEST_CASE("SU(3,2) has exactly four linear characters") {
    const CharacterTable t =
        character_table(*make_classical(MatFamily::SU, 3, 2),
                        conjugacy_classes(*make_classical(MatFamily::SU, 3, 2)));
    const std::size_t linear =
        static_cast<std::size_t>(std::count(t.degrees.begin(), t.degrees.end(), 1u));
    CHECK(linear == 4);
}
