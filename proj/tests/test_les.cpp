#include <doctest.h>

#include "floer/les.hpp"
#include "support/random_complexes.hpp"

using namespace floer;
using floer::testing::Rng;

TEST_CASE("les of 0 -> C -> Cone(0) -> C[1] -> 0 has zero connecting maps") {
    auto c = make_complex<Zint>({{"a", 1}, {"b", 0}}, {{"a", "b", Zint{2}}});
    auto cone = mapping_cone(zero_map(c, c, 0));
    auto split = split_by_generators(cone, [](const Generator& g) { return g.id[0] == 't'; });
    ChainMap<Zint> inc(split.sub, cone, 0, MapSign::Commute);
    inc.matrix = split.inclusion;
    ChainMap<Zint> proj(cone, split.quotient, 0, MapSign::Commute);
    proj.matrix = split.projection;

    auto les = les_of_ses(inc, proj);
    CHECK(les.all_exact());
    for (const auto& [d, conn] : les.connecting) CHECK(conn.is_zero());
}

TEST_CASE("les exactness on random twisted sums") {
    Rng rng(555);
    for (int trial = 0; trial < 60; ++trial) {
        auto ses = floer::testing::random_ses<Z2>(rng);
        auto les = les_of_ses(ses.inclusion, ses.projection);
        CHECK(les.all_exact());
    }
    for (int trial = 0; trial < 25; ++trial) {
        auto ses = floer::testing::random_ses<Zint>(rng);
        auto les = les_of_ses(ses.inclusion, ses.projection);
        CHECK(les.all_exact());
    }
    for (int trial = 0; trial < 15; ++trial) {
        auto ses = floer::testing::random_ses<Rat>(rng);
        auto les = les_of_ses(ses.inclusion, ses.projection);
        CHECK(les.all_exact());
    }
}

TEST_CASE("les_of_ses rejects sequences that are not exact") {
    auto a = make_complex<Zint>({{"x", 0}}, {});
    auto b = make_complex<Zint>({{"p", 0}, {"q", 0}}, {});
    auto cq = make_complex<Zint>({{"r", 0}}, {});

    // i = 0 is not injective.
    ChainMap<Zint> inc(a, b, 0, MapSign::Commute);
    ChainMap<Zint> proj(b, cq, 0, MapSign::Commute);
    proj.set_entry("p", "r", Zint{1});
    CHECK_THROWS_AS(les_of_ses(inc, proj), NotExact);

    // multiplication by 2 is injective but not a direct summand inclusion:
    // coker has torsion, p cannot be surjective onto a free rank-1 complex.
    ChainMap<Zint> two(a, b, 0, MapSign::Commute);
    two.set_entry("x", "p", Zint{2});
    CHECK_THROWS_AS(les_of_ses(two, proj), NotExact);
}
