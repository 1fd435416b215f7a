#include <doctest.h>

#include <fstream>
#include <set>

#include "qrg/errors.hpp"
#include "qrg/families.hpp"
#include "qrg/group.hpp"

using namespace qrg;

namespace {

void check_group_axioms(const FiniteGroup& G) {
    const std::uint64_t n = G.order();
    REQUIRE(n >= 1);
    for (Elem g = 0; g < n; ++g) {
        CHECK(G.mul(0, g) == g);
        CHECK(G.mul(g, 0) == g);
        CHECK(G.mul(g, G.inv(g)) == 0);
        CHECK(G.inv(G.inv(g)) == g);
    }
    if (n <= 24) { // exhaustive associativity for the smallest fixtures
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    }
}

} // namespace

TEST_CASE("family orders match the classical formulas") {
    CHECK(make_cyclic(1)->order() == 1);
    CHECK(make_cyclic(12)->order() == 12);
    CHECK(make_dihedral(7)->order() == 14);
    CHECK(make_symmetric(5)->order() == 120);
    CHECK(make_alternating(5)->order() == 60);
    CHECK(make_classical(MatFamily::SL, 2, 7)->order() == 336);
    CHECK(make_classical(MatFamily::PSL, 2, 7)->order() == 168);
    CHECK(make_classical(MatFamily::PSL, 2, 9)->order() == 360);
    CHECK(make_classical(MatFamily::SL, 2, 9)->order() == 720);
    CHECK(make_classical(MatFamily::SU, 3, 2)->order() == 216);
    CHECK(make_classical(MatFamily::PSU, 3, 2)->order() == 72);
    CHECK(make_classical(MatFamily::PSU, 3, 3)->order() == 6048);
    CHECK(make_classical(MatFamily::GL, 2, 4)->order() == 180);
}

TEST_CASE("axioms hold on one group per backend") {
    check_group_axioms(*make_cyclic(24));            // table
    check_group_axioms(*make_symmetric(4));          // permutation
    check_group_axioms(*make_classical(MatFamily::SL, 2, 3)); // matrix
}

TEST_CASE("power handles negative exponents and wraps by element order") {
    const GroupPtr C = make_cyclic(12);
    const Elem g = C->generators().at(0);
    CHECK(C->power(g, 0) == 0);
    CHECK(C->power(g, 13) == C->power(g, 1));
    CHECK(C->power(g, -1) == C->inv(g));
    CHECK(C->power(g, -5) == C->inv(C->power(g, 5)));
}

TEST_CASE("element order divides the group order") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 7);
    for (Elem g = 0; g < G->order(); g += 13) {
        std::uint64_t ord = 1;
        Elem x = g;
        while (x != 0) {
            x = G->mul(x, g);
            ++ord;
        }
        CHECK(G->order() % ord == 0);
    }
}

TEST_CASE("alternating groups contain exactly the even permutations") {
    const GroupPtr A = make_alternating(4);
    REQUIRE(A->order() == 12);
    for (Elem g = 0; g < A->order(); ++g) CHECK(perm_is_even(A->perm(g)));
}

TEST_CASE("cayley table fixtures load and validate") {
    const GroupPtr K4 = load_cayley_table(QRG_FIXTURE_DIR "/k4.txt");
    REQUIRE(K4->order() == 4);
    check_group_axioms(*K4);
    for (Elem g = 0; g < 4; ++g) CHECK(K4->inv(g) == g); // exponent two

    const GroupPtr Q8 = load_cayley_table(QRG_FIXTURE_DIR "/q8.txt");
    REQUIRE(Q8->order() == 8);
    check_group_axioms(*Q8);
    // exactly one element of order 2 (the central -1)
    int involutions = 0;
    for (Elem g = 1; g < 8; ++g)
        if (Q8->mul(g, g) == 0) ++involutions;
    CHECK(involutions == 1);
}

TEST_CASE("malformed cayley tables are rejected") {
    const auto write_tmp = [](const char* name, const char* text) {
        std::string path = std::string("/tmp/qrg_test_") + name;
        std::ofstream f(path);
        f << text;
        return path;
    };
    // row 1 repeats an entry: not a latin square, so not a group table
    const std::string bad = write_tmp("bad.txt", "2\n0 1\n1 1\n");
    CHECK_THROWS_AS(load_cayley_table(bad), InputError);
    const std::string truncated = write_tmp("short.txt", "3\n0 1 2\n");
    CHECK_THROWS_AS(load_cayley_table(truncated), InputError);
    CHECK_THROWS_AS(load_cayley_table("does_not_exist_qrg.txt"), InputError);
}

TEST_CASE("closure helpers stop at the watermark") {
    const GroupPtr A5 = make_alternating(5);
    // one 3-cycle generates an order-3 subgroup
    Elem three_cycle = 0;
    for (Elem g = 1; g < A5->order(); ++g) {
        if (A5->mul(g, A5->mul(g, g)) == 0 && g != 0) {
            three_cycle = g;
            break;
        }
    }
    REQUIRE(three_cycle != 0);
    const Bitset closure = subgroup_closure(*A5, {three_cycle});
    CHECK(closure.count() == 3);

    const auto capped = subgroup_closure_capped(*A5, {three_cycle}, 30);
    REQUIRE(capped.has_value());
    CHECK(capped->count() == 3);
    // generators of the whole group blow through any proper watermark
    CHECK_FALSE(subgroup_closure_capped(*A5, A5->generators(), 30).has_value());
}

TEST_CASE("simplicity and perfection flags") {
    CHECK(is_simple(*make_alternating(5)));
    CHECK(is_simple(*make_classical(MatFamily::PSL, 2, 7)));
    CHECK_FALSE(is_simple(*make_symmetric(4)));
    CHECK_FALSE(is_simple(*make_cyclic(12)));
    CHECK(is_simple(*make_cyclic(7))); // prime cyclic

    CHECK(is_perfect(*make_alternating(5)));
    CHECK(is_perfect(*make_classical(MatFamily::SL, 2, 5)));
    CHECK_FALSE(is_perfect(*make_symmetric(4)));
    CHECK_FALSE(is_perfect(*make_cyclic(5)));
}

TEST_CASE("direct products multiply orders and keep the identity first") {
    const GroupPtr P = direct_product(make_cyclic(3), make_symmetric(3));
    REQUIRE(P->order() == 18);
    check_group_axioms(*P);
}

TEST_CASE("lie metadata is present exactly for the matrix families") {
    const GroupPtr L = make_classical(MatFamily::PSL, 2, 11);
    REQUIRE(L->lie().has_value());
    CHECK(L->lie()->family == MatFamily::PSL);
    CHECK(L->lie()->dim == 2);
    CHECK(L->lie()->q == 11);
    CHECK(L->lie()->rank == 1);
    CHECK_FALSE(make_symmetric(4)->lie().has_value());
    CHECK_FALSE(make_cyclic(6)->lie().has_value());
}

TEST_CASE("enumeration cap turns SL into a matrix-only group") {
    GroupOptions small;
    small.cap_enum = 100;
    const GroupPtr G = make_classical(MatFamily::SL, 2, 7, small); // order 336
    CHECK_FALSE(G->enumerated());
    CHECK(G->order() == 336); // known by formula even without enumeration
    CHECK_FALSE(G->matrix_generators().empty());
    // SU needs enumeration to certify generators, so the cap is a hard error
    CHECK_THROWS_AS(make_classical(MatFamily::SU, 3, 3, small), CapExceeded);
}

TEST_CASE("classical order formulas") {
    CHECK(classical_order(MatFamily::SL, 2, 7) == 336);
    CHECK(classical_order(MatFamily::PSL, 3, 3) == 5616);
    CHECK(classical_order(MatFamily::SU, 3, 2) == 216);
    CHECK(classical_order(MatFamily::PSU, 3, 3) == 6048);
    CHECK(classical_order(MatFamily::SL, 4, 3) == 12130560);
}
