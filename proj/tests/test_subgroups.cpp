#include <doctest.h>

#include "qrg/conjugacy.hpp"
#include "qrg/errors.hpp"
#include "qrg/families.hpp"
#include "qrg/subgroups.hpp"

using namespace qrg;

TEST_CASE("point stabilizers of the symmetric group have index m") {
    const GroupPtr S4 = make_symmetric(4);
    const auto stabs = point_stabilizers(*S4);
    REQUIRE(stabs.size() == 4);
    for (const auto& H : stabs) {
        CHECK(H.order == 6); // S3 inside S4
        CHECK(H.members.test(0));
    }
}

TEST_CASE("full lattices carry the textbook subgroup counts") {
    struct Case {
        GroupPtr G;
        std::size_t proper; // proper subgroups, the trivial one included
    };
    const Case cases[] = {
        {make_cyclic(12), 5},      // one per divisor of 12 except 12 itself
        {make_symmetric(3), 5},    // 1, three C2, C3
        {make_symmetric(4), 29},
        {make_alternating(4), 9},
        {make_alternating(5), 58},
        {make_classical(MatFamily::PSL, 2, 7), 178},
    };
    for (const auto& c : cases) {
        CAPTURE(c.G->order());
        const auto lat = subgroup_lattice(*c.G);
        CHECK(lat.size() == c.proper);
        for (const auto& H : lat) {
            CHECK(c.G->order() % H.order == 0); // Lagrange
            CHECK(H.members.test(0));
            CHECK(H.members.count() == H.order);
        }
    }
}

TEST_CASE("every lattice member is closed under products and inverses") {
    const GroupPtr G = make_alternating(5);
    for (const auto& H : subgroup_lattice(*G)) {
        std::vector<Elem> members;
        H.members.for_each([&](std::size_t g) { members.push_back(static_cast<Elem>(g)); });
        for (Elem a : members) {
            CHECK(H.members.test(G->inv(a)));
            for (Elem b : members) CHECK(H.members.test(G->mul(a, b)));
        }
    }
}

TEST_CASE("minimal proper-subgroup indices, certified") {
    struct Case {
        GroupPtr G;
        std::uint64_t index;
    };
    const Case cases[] = {
        {make_cyclic(7), 7},   // prime: only the trivial subgroup is proper
        {make_cyclic(12), 2},
        {make_symmetric(4), 2}, // A4
        {make_alternating(5), 5},
        {make_classical(MatFamily::PSL, 2, 7), 7},
        {make_alternating(6), 6},
        {make_classical(MatFamily::PSL, 2, 11), 11}, // A5 of order 60, not a Borel
        {make_classical(MatFamily::PSL, 2, 13), 14}, // Borel of order 78
    };
    for (const auto& c : cases) {
        CAPTURE(c.G->order());
        const MinIndexReport r = min_proper_subgroup_index(*c.G, conjugacy_classes(*c.G));
        CHECK(r.index == c.index);
        CHECK(r.certified);
        CHECK(r.index * r.best_order == c.G->order());
    }
}

TEST_CASE("the trivial group has no proper subgroup to index") {
    const GroupPtr C1 = make_cyclic(1);
    CHECK_THROWS_AS(min_proper_subgroup_index(*C1, conjugacy_classes(*C1)), InputError);
}

TEST_CASE("harvest finds the large subgroups even without the lattice") {
    const GroupPtr G = make_classical(MatFamily::PSL, 2, 7);
    const ConjClasses cls = conjugacy_classes(*G);
    const auto found = harvest_subgroups(*G, cls);
    std::uint64_t best = 1;
    for (const auto& H : found)
        if (H.order < G->order()) best = std::max(best, H.order);
    CHECK(best == 24); // the S4 maximal subgroups of PSL(2,7)
}
