#include <doctest.h>

#include "floer/heegaard.hpp"
#include "support/random_complexes.hpp"

using namespace floer;
using floer::testing::Rng;

namespace {

// Genus-1 diagram with p positive intersection points: L(p, 1) for p >= 1,
// S^3 for p = 1.
HeegaardDiagram lens_diagram(int p) {
    std::vector<IntersectionPoint> pts;
    for (int i = 0; i < p; ++i) pts.push_back({"p" + std::to_string(i), +1});
    return HeegaardDiagram::build(1, {{{0, 0}, pts}});
}

// Genus-1 diagram with no intersections: S^1 x S^2.
HeegaardDiagram s1xs2_diagram() { return HeegaardDiagram::build(1, {}); }

// Brute-force Leibniz determinant over permutations.
mpz_class leibniz_det(const std::vector<std::vector<int>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    mpz_class det = 0;
    do {
        mpz_class term = permutation_sign(perm);
        for (int i = 0; i < n; ++i) term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

mpz_class unsigned_permanent(const HeegaardDiagram& d) {
    std::vector<int> perm(d.genus);
    for (int i = 0; i < d.genus; ++i) perm[i] = i;
    mpz_class total = 0;
    do {
        mpz_class term = 1;
        for (int i = 0; i < d.genus; ++i) term *= static_cast<long>(d.at(i, perm[i]).size());
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace

TEST_CASE("generator enumeration on pinned diagrams") {
    auto l5 = lens_diagram(5);
    auto gens = enumerate_generators(l5);
    CHECK(gens.size() == 5);
    // deterministic order: by point id
    CHECK(gens[0].choice[0] == "p0");
    CHECK(gens[4].choice[0] == "p4");

    CHECK(enumerate_generators(s1xs2_diagram()).empty());

    auto genus2 = HeegaardDiagram::build(
        2, {{{0, 0}, {{"x", +1}}}, {{1, 1}, {{"y", +1}}}});
    auto g2 = enumerate_generators(genus2);
    REQUIRE(g2.size() == 1);
    CHECK(g2[0].permutation == std::vector<int>{0, 1});
}

TEST_CASE("signed count on lens spaces and S^1 x S^2") {
    for (int p = 1; p <= 7; ++p) {
        auto sc = signed_count(lens_diagram(p));
        CHECK(sc.value == p);
    }
    CHECK(signed_count(s1xs2_diagram()).value == 0);
}

TEST_CASE("enumeration count equals the permanent of the count matrix") {
    Rng rng(314);
    for (int trial = 0; trial < 30; ++trial) {
        int genus = rng.pick(1, 3);
        std::map<std::pair<int, int>, std::vector<IntersectionPoint>> pts;
        int id = 0;
        for (int i = 0; i < genus; ++i)
            for (int j = 0; j < genus; ++j) {
                int count = rng.pick(0, 2);
                for (int k = 0; k < count; ++k)
                    pts[{i, j}].push_back(
                        {"q" + std::to_string(id++), rng.chance(0.5) ? +1 : -1});
            }
        auto d = HeegaardDiagram::build(genus, pts);
        CHECK(mpz_class(static_cast<long>(enumerate_generators(d).size())) ==
              unsigned_permanent(d));
    }
}

TEST_CASE("signed count equals the Leibniz determinant on random 4x4 diagrams") {
    Rng rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::pair<int, int>, std::vector<IntersectionPoint>> pts;
        std::vector<std::vector<int>> counts(4, std::vector<int>(4, 0));
        int id = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int n = rng.pick(0, 2);
                for (int k = 0; k < n; ++k) {
                    int sign = rng.chance(0.5) ? +1 : -1;
                    pts[{i, j}].push_back({"q" + std::to_string(id++), sign});
                    counts[i][j] += sign;
                }
            }
        auto d = HeegaardDiagram::build(4, pts);
        auto sc = signed_count(d); // throws InternalMismatch on disagreement
        CHECK(sc.value == leibniz_det(counts));
    }
}

TEST_CASE("integer determinant against the Leibniz oracle") {
    Rng rng(161803);
    for (int trial = 0; trial < 40; ++trial) {
        int n = rng.pick(1, 5);
        std::vector<std::vector<int>> m(n, std::vector<int>(n));
        std::vector<std::vector<mpz_class>> mz(n, std::vector<mpz_class>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m[i][j] = rng.pick(-4, 4);
                mz[i][j] = m[i][j];
            }
        CHECK(integer_determinant(mz) == leibniz_det(m));
    }
}

TEST_CASE("formal chain module from a diagram") {
    // Genus-1 S^3 diagram: one generator in degree 0, the one-generator model.
    auto s3 = lens_diagram(1);
    auto L = formal_cf_module<Zint>(s3, {{"{p0}", 0}}, -2);
    CHECK(L.size() == 1);
    CHECK(L.gens[0].degree == 0);
    CHECK(L.diff.is_zero());
    CHECK(L.deg_t == -2);

    // L(2,1) with degrees 0 and 1: flavors are computable downstream.
    auto l2 = lens_diagram(2);
    auto L2 = formal_cf_module<Z2>(l2, {{"{p0}", 0}, {"{p1}", 1}}, -2);
    CHECK(L2.size() == 2);
    auto h = laurent_homology(L2);
    CHECK(h.at(0).rank == 1);
    CHECK(h.at(1).rank == 1);

    // Empty diagram: empty complex.
    auto Le = formal_cf_module<Zint>(s1xs2_diagram(), {}, -2);
    CHECK(Le.size() == 0);

    // Missing degree assignment is an error.
    CHECK_THROWS_AS(formal_cf_module<Zint>(l2, {{"{p0}", 0}}, -2), ValidationError);
}

TEST_CASE("diagram validation") {
    CHECK_THROWS_AS(HeegaardDiagram::build(0, {}), ValidationError);
    CHECK_THROWS_AS(HeegaardDiagram::build(1, {{{0, 0}, {{"a", +2}}}}), ValidationError);
    CHECK_THROWS_AS(HeegaardDiagram::build(1, {{{0, 0}, {{"a", 1}, {"a", 1}}}}), ValidationError);
    CHECK_THROWS_AS(HeegaardDiagram::build(1, {{{0, 1}, {{"a", 1}}}}), ValidationError);
}
