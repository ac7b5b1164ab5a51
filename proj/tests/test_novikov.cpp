#include <doctest.h>

#include "floer/novikov.hpp"
#include "support/random_complexes.hpp"

using namespace floer;
using floer::testing::Rng;

namespace {

// One orbit generator in degree 0 with zero differential: the chain model of
// the unique solution on S^1 x S^2 with its torsion spin-c structure.
template <Ring R>
LaurentComplex<R> one_generator_model() {
    return make_laurent<R>({{"x", 0}}, {}, -2);
}

template <Ring R>
LaurentComplex<R> novikov_circle() {
    // a(1), b(0), da = (1+t) b, t degree-preserving.
    return make_laurent<R>({{"a", 1}, {"b", 0}},
                           {{"a", "b", Laurent<R>::one() + Laurent<R>::monomial(R::one(), 1)}}, 0);
}

} // namespace

TEST_CASE("make_laurent validation") {
    CHECK_NOTHROW(one_generator_model<Zint>());
    CHECK_NOTHROW(novikov_circle<Z2>());

    // t^-1 entry that is inconsistent with the grading.
    CHECK_THROWS_AS(make_laurent<Zint>({{"a", 1}, {"b", 0}},
                                       {{"a", "b", Laurent<Zint>::monomial(Zint{1}, -1)}}, -2),
                    DegreeViolation);
    // d.d != 0 over the Laurent ring.
    CHECK_THROWS_AS(
        make_laurent<Z2>({{"a", 2}, {"b", 1}, {"c", 0}},
                         {{"a", "b", Laurent<Z2>::one()}, {"b", "c", Laurent<Z2>::one()}}, 0),
        NotADifferential);
    // deg_t must be even and nonpositive.
    CHECK_THROWS_AS(make_laurent<Z2>({{"x", 0}}, {}, -1), ValidationError);
    CHECK_THROWS_AS(make_laurent<Z2>({{"x", 0}}, {}, 2), ValidationError);
}

TEST_CASE("check_semipositive") {
    CHECK(check_semipositive(novikov_circle<Z2>()).semi_positive);
    CHECK(check_semipositive(one_generator_model<Zint>()).semi_positive);

    // da = t^-1 b, consistently graded: a(3), b(0), deg_t = -2.
    auto neg = make_laurent<Zint>({{"a", 3}, {"b", 0}},
                                  {{"a", "b", Laurent<Zint>::monomial(Zint{1}, -1)}}, -2);
    auto rep = check_semipositive(neg);
    CHECK_FALSE(rep.semi_positive);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].from == "a");
    CHECK(rep.violations[0].to == "b");
    CHECK(rep.violations[0].exponent == -1);

    CHECK_THROWS_AS(minus_complex(neg, CutLevel{1}, DegreeWindow(-8, 8)), SemiPositivityRequired);
}

TEST_CASE("filtration flavors of the one-generator model") {
    auto L = one_generator_model<Zint>();
    DegreeWindow w(-12, 12);
    CutLevel cut{1};

    // minus: one class in each degree -2, -4, ... (the u R[u] pattern)
    auto hm = restrict_report(homology(minus_complex(L, cut, w).complex), w.safe_lo(), w.safe_hi());
    for (int d = w.safe_lo(); d <= w.safe_hi(); ++d) {
        int want = (d <= -2 && d % 2 == 0) ? 1 : 0;
        CHECK((hm.count(d) ? hm.at(d).rank : 0) == want);
    }

    // plus: degrees 0, 2, 4, ...
    auto hp = restrict_report(homology(plus_complex(L, cut, w).complex), w.safe_lo(), w.safe_hi());
    for (int d = w.safe_lo(); d <= w.safe_hi(); ++d) {
        int want = (d >= 0 && d % 2 == 0) ? 1 : 0;
        CHECK((hp.count(d) ? hp.at(d).rank : 0) == want);
    }

    // full: all even degrees.
    auto hf = restrict_report(homology(full_complex(L, cut, w).complex), w.safe_lo(), w.safe_hi());
    for (int d = w.safe_lo(); d <= w.safe_hi(); ++d)
        CHECK((hf.count(d) ? hf.at(d).rank : 0) == (d % 2 == 0 ? 1 : 0));

    // hat: a single class.
    auto hh = homology(hat_complex(L, cut));
    int classes = 0;
    for (const auto& [d, h] : hh) classes += h.rank;
    CHECK(classes == 1);
    CHECK(hh.at(-2).rank == 1);
}

TEST_CASE("hat complex is the cut slice with the constant part of d") {
    // d = 0: hat is the slice complex with zero differential.
    auto L0 = make_laurent<Z2>({{"x", 0}, {"y", 3}}, {}, -2);
    auto h0 = hat_complex(L0, CutLevel{0});
    CHECK(h0.diff().is_zero());
    CHECK(h0.size() == 2);

    // da = (1+t) b: the constant part is da = b, so the hat complex is acyclic.
    auto hc = hat_complex(novikov_circle<Z2>(), CutLevel{1});
    CHECK(report_trivial(homology(hc)));
}

TEST_CASE("pair les of the one-generator model") {
    auto L = one_generator_model<Zint>();
    auto pl = pair_les(L, CutLevel{1}, DegreeWindow(-12, 12));
    CHECK(pl.les.all_exact());
    // Connecting maps vanish: the sequence splits degreewise.
    for (const auto& [d, m] : pl.les.connecting)
        if (d >= -9 && d <= 9) CHECK(m.is_zero());
}

TEST_CASE("pair les on an acyclic Laurent complex") {
    // da = b with matching degrees; all three flavors acyclic.
    auto L = make_laurent<Zint>({{"a", 1}, {"b", 0}},
                                {{"a", "b", Laurent<Zint>::one()}}, -2);
    DegreeWindow w(-10, 10);
    auto pl = pair_les(L, CutLevel{1}, w);
    CHECK(pl.les.all_exact());
    CHECK(report_trivial(restrict_report(homology(pl.minus.complex), w.safe_lo(), w.safe_hi())));
    CHECK(report_trivial(restrict_report(homology(pl.plus.complex), w.safe_lo(), w.safe_hi())));
    CHECK(report_trivial(restrict_report(homology(pl.full.complex), w.safe_lo(), w.safe_hi())));
}

TEST_CASE("pair les on random semi-positive complexes") {
    Rng rng(2020);
    for (int trial = 0; trial < 25; ++trial) {
        auto L = floer::testing::random_laurent<Z2>(rng, 4);
        auto pl = pair_les(L, CutLevel{rng.pick(0, 2)}, DegreeWindow(-12, 12));
        CHECK(pl.les.all_exact());
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto L = floer::testing::random_laurent<Zint>(rng, 3);
        auto pl = pair_les(L, CutLevel{1}, DegreeWindow(-12, 12));
        CHECK(pl.les.all_exact());
    }
}

TEST_CASE("laurent homology") {
    auto h1 = laurent_homology(one_generator_model<Z2>());
    CHECK(h1.at(0).rank == 1);
    CHECK(h1.at(0).torsion.empty());

    // (a, b; da = (1+t) b) over Z/2: H_0 has (1+t)-torsion, H_1 = 0.
    auto h2 = laurent_homology(novikov_circle<Z2>());
    CHECK(h2.at(0).rank == 0);
    REQUIRE(h2.at(0).torsion.size() == 1);
    CHECK(h2.at(0).torsion[0] == Laurent<Z2>::one() + Laurent<Z2>::monomial(Z2{1}, 1));
    CHECK(h2.at(1).trivial());

    // Cone of t: acyclic over the Laurent ring.
    auto cone_t = make_laurent<Z2>({{"a", -1}, {"b", 0}},
                                   {{"a", "b", Laurent<Z2>::monomial(Z2{1}, 1)}}, -2);
    CHECK(report_trivial(laurent_homology(cone_t)));

    // Z base is refused.
    CHECK_THROWS_AS(laurent_homology(one_generator_model<Zint>()), UnsupportedRing);
}

TEST_CASE("su_of_laurent is acyclic") {
    CHECK(report_trivial(laurent_homology(su_of_laurent(one_generator_model<Z2>()))));

    Rng rng(1001);
    for (int trial = 0; trial < 25; ++trial) {
        auto L = floer::testing::random_laurent<Z2>(rng, 4);
        auto su = su_of_laurent(L);
        CHECK((su.diff * su.diff).is_zero());
        CHECK(report_trivial(laurent_homology(su)));
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto L = floer::testing::random_laurent<Rat>(rng, 3);
        CHECK(report_trivial(laurent_homology(su_of_laurent(L))));
    }
}

TEST_CASE("full-window homology does not depend on the cut") {
    Rng rng(65);
    for (int trial = 0; trial < 10; ++trial) {
        auto L = floer::testing::random_laurent<Z2>(rng, 3);
        DegreeWindow w(-10, 10);
        auto h0 = restrict_report(homology(full_complex(L, CutLevel{0}, w).complex), w.safe_lo(),
                                  w.safe_hi());
        auto h2 = restrict_report(homology(full_complex(L, CutLevel{2}, w).complex), w.safe_lo(),
                                  w.safe_hi());
        CHECK(floer::testing::same_homology(h0, h2));
    }
}

TEST_CASE("window stability of filtration flavors") {
    Rng rng(66);
    for (int trial = 0; trial < 10; ++trial) {
        auto L = floer::testing::random_laurent<Z2>(rng, 3);
        DegreeWindow small(-8, 8), big(-14, 14);
        for (auto flavor : {FilteredFlavor::Minus, FilteredFlavor::Full, FilteredFlavor::Plus}) {
            auto hs = restrict_report(homology(materialize(L, flavor, CutLevel{1}, small).complex),
                                      small.safe_lo(), small.safe_hi());
            auto hb = restrict_report(homology(materialize(L, flavor, CutLevel{1}, big).complex),
                                      small.safe_lo(), small.safe_hi());
            CHECK(floer::testing::same_homology(hs, hb));
        }
    }
}

TEST_CASE("windowed flavors need a negative deg_t") {
    auto L = novikov_circle<Z2>(); // deg_t = 0
    CHECK_THROWS_AS(minus_complex(L, CutLevel{1}, DegreeWindow(-8, 8)), ValidationError);
    CHECK_NOTHROW(hat_complex(L, CutLevel{1})); // the hat slice needs no window
    CHECK_THROWS_AS(su_of_laurent(L), ValidationError);
}
