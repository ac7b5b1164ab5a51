#include <doctest.h>

#include "floer/equivariant.hpp"
#include "support/random_complexes.hpp"

using namespace floer;
using floer::testing::Rng;

namespace {

// CP^n as a cellular complex: one generator every two degrees, zero
// differential, U = cap with the hyperplane class (shift down the tower).
template <Ring R>
UComplex<R> cpn(int n) {
    std::vector<Generator> gens;
    std::vector<DiffEntry<R>> umap;
    for (int k = 0; k <= n; ++k) gens.push_back({"c" + std::to_string(2 * k), 2 * k});
    for (int k = 1; k <= n; ++k)
        umap.push_back({"c" + std::to_string(2 * k), "c" + std::to_string(2 * k - 2), R::one()});
    return make_ucomplex(make_complex<R>(gens, {}), umap);
}

// Free circle: z0, z1 with no differential and J z0 = z1.
template <Ring R>
JComplex<R> free_circle() {
    return make_jcomplex(make_complex<R>({{"z0", 0}, {"z1", 1}}, {}),
                         {{"z0", "z1", R::one()}});
}

// Lift of a J-preserving base map to the flavored complexes: x.uk -> f(x).uk.
template <Ring R>
ChainMap<R> flavored_map(const FlavoredComplex<R>& src, const FlavoredComplex<R>& tgt,
                         const SparseMatrix<R>& f) {
    ChainMap<R> m(src.complex, tgt.complex, 0, MapSign::Commute);
    std::map<std::pair<int, int>, int> pos;
    for (int i = 0; i < tgt.complex.size(); ++i) pos.emplace(tgt.tags[i], i);
    for (int i = 0; i < src.complex.size(); ++i) {
        const auto [bi, k] = src.tags[i];
        for (const auto& [rc, v] : f.entries()) {
            if (rc.second != bi) continue;
            auto it = pos.find({rc.first, k});
            if (it != pos.end()) m.matrix.add_to(it->second, i, v);
        }
    }
    return m;
}

// C extended by an acyclic arrow, with the projection onto C: a strict
// quasi-isomorphism of U-complexes.
struct QuasiIso {
    UComplex<Z2> big;
    SparseMatrix<Z2> projection;
};

QuasiIso acyclic_extension(const UComplex<Z2>& c, int d) {
    std::vector<Generator> bg = c.base.gens();
    bg.push_back({"acy0", d + 1});
    bg.push_back({"acy1", d});
    std::vector<DiffEntry<Z2>> bd;
    for (const auto& [rc, v] : c.base.diff().entries())
        bd.push_back({c.base.gen(rc.second).id, c.base.gen(rc.first).id, v});
    bd.push_back({"acy0", "acy1", Z2{1}});
    auto bbase = make_complex<Z2>(bg, bd);
    SparseMatrix<Z2> bu(bbase.size(), bbase.size());
    for (const auto& [rc, v] : c.u.entries())
        bu.set(bbase.index_of(c.base.gen(rc.first).id), bbase.index_of(c.base.gen(rc.second).id), v);
    QuasiIso out{{bbase, bu}, SparseMatrix<Z2>(c.base.size(), bbase.size())};
    require_chain_map(out.big.umap());
    for (int i = 0; i < c.base.size(); ++i)
        out.projection.set(i, bbase.index_of(c.base.gen(i).id), Z2{1});
    return out;
}

} // namespace

TEST_CASE("s_bundle of CP^n is a sphere (Hopf fibration)") {
    auto run = [](auto ring_tag, int n) {
        using R = decltype(ring_tag);
        auto s = s_bundle(cpn<R>(n));
        auto h = homology(s.total.base);
        for (const auto& [d, v] : h) {
            if (d == 0 || d == 2 * n + 1) {
                CHECK(v.rank == 1);
                CHECK(v.torsion.empty());
            } else {
                CHECK(v.trivial());
            }
        }
        CHECK(h.at(0).rank == 1);
        CHECK(h.at(2 * n + 1).rank == 1);
    };
    for (int n = 1; n <= 3; ++n) {
        run(Zint{}, n);
        run(Z2{}, n);
    }
}

TEST_CASE("s_bundle with U = 0 doubles homology with a shift") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        auto rc = floer::testing::random_graded_complex<Zint>(rng, 4);
        UComplex<Zint> c{rc.complex, SparseMatrix<Zint>(rc.complex.size(), rc.complex.size())};
        auto h = homology(s_bundle(c).total.base);
        auto hc = homology(c.base);
        HomologyReport<Zint> want;
        for (const auto& [d, v] : hc) {
            want[d].rank += v.rank;
            for (const auto& t : v.torsion) want[d].torsion.push_back(t);
            want[d + 1].rank += v.rank;
            for (const auto& t : v.torsion) want[d + 1].torsion.push_back(t);
        }
        CHECK(floer::testing::same_homology(h, want));
    }
}

TEST_CASE("s_bundle of an acyclic complex is acyclic") {
    auto base = make_complex<Zint>({{"a", 1}, {"b", 0}, {"a2", -1}, {"b2", -2}},
                                   {{"a", "b", Zint{1}}, {"a2", "b2", Zint{1}}});
    auto c = make_ucomplex(base, {{"a", "a2", Zint{1}}, {"b", "b2", Zint{1}}});
    CHECK(report_trivial(homology(s_bundle(c).total.base)));
}

TEST_CASE("s_bundle matches the shifted mapping cone of U") {
    Rng rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = floer::testing::random_ucomplex<Zint>(rng, 3);
        auto h_bundle = homology(s_bundle(c).total.base);
        auto h_cone = homology(shift(mapping_cone(c.umap()), 1));
        CHECK(floer::testing::same_homology(h_bundle, h_cone));
    }
}

TEST_CASE("cone_compare: connecting map is U up to global sign") {
    auto rep = cone_compare(cpn<Zint>(1));
    CHECK(rep.les.all_exact());
    CHECK(rep.connecting_is_u);
    // CP^1: U*: H_2 -> H_0 is an isomorphism, so the connecting map is too.
    CHECK(rep.les.connecting.at(2).get(0, 0).is_unit());

    // U = 0 gives zero connecting maps.
    auto pt = make_complex<Zint>({{"x", 0}, {"w", 3}}, {});
    UComplex<Zint> c0{pt, SparseMatrix<Zint>(2, 2)};
    auto rep0 = cone_compare(c0);
    CHECK(rep0.les.all_exact());
    CHECK(rep0.connecting_is_u);
    for (const auto& [d, m] : rep0.les.connecting) CHECK(m.is_zero());
}

TEST_CASE("cone_compare on random U-complexes") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto rep = cone_compare(floer::testing::random_ucomplex<Z2>(rng, 4));
        CHECK(rep.les.all_exact());
        CHECK(rep.connecting_is_u);
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto rep = cone_compare(floer::testing::random_ucomplex<Zint>(rng, 3));
        CHECK(rep.les.all_exact());
        CHECK(rep.connecting_is_u);
    }
}

TEST_CASE("lift_map_su: identity lifts to the identity") {
    auto c = cpn<Zint>(2);
    auto s = s_bundle(c);
    const int n = c.base.size();
    auto lift = lift_map_su(c, c, SparseMatrix<Zint>::identity(n), SparseMatrix<Zint>(n, n), s, s);
    CHECK(lift.matrix == SparseMatrix<Zint>::identity(s.total.base.size()));
}

TEST_CASE("lift_map_su: strict intertwiners give J-preserving chain maps") {
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = floer::testing::random_ucomplex<Z2>(rng, 3);
        // f = U is a strict intertwiner of (C, U) with itself, of degree -2.
        auto s = s_bundle(c);
        auto lift =
            lift_map_su(c, c, c.u, SparseMatrix<Z2>(c.base.size(), c.base.size()), s, s, -2);
        CHECK(is_chain_map(lift).ok);
        CHECK(s.total.j * lift.matrix == lift.matrix * s.total.j);
    }
}

TEST_CASE("lift_map_su accepts a genuine intertwining homotopy") {
    // On S_U with the ladder complex, f = 0 intertwines U with U via any
    // homotopy of d.h + h.d = 0; but f = id between (C, U) and (C, 2U) needs
    // d.h + h.d = -U, which has no solution when U acts on homology.
    auto c = cpn<Zint>(1);
    auto s = s_bundle(c);
    const int n = c.base.size();
    UComplex<Zint> c2{c.base, Zint{2} * c.u};
    auto s2 = s_bundle(c2);
    CHECK_THROWS_AS(
        lift_map_su(c, c2, SparseMatrix<Zint>::identity(n), SparseMatrix<Zint>(n, n), s, s2),
        NotIntertwining);
}

TEST_CASE("quasi-isomorphisms lift to quasi-isomorphisms") {
    Rng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        auto c = floer::testing::random_ucomplex<Z2>(rng, 3);
        auto ext = acyclic_extension(c, rng.pick(-2, 2));
        auto sb = s_bundle(ext.big), sc = s_bundle(c);
        auto lift = lift_map_su(ext.big, c, ext.projection,
                                SparseMatrix<Z2>(c.base.size(), ext.big.base.size()), sb, sc);
        CHECK(is_chain_map(lift).ok);

        HomologyBasis<Z2> hb(sb.total.base), hc(sc.total.base);
        for (int deg = sb.total.base.min_degree() - 1; deg <= sb.total.base.max_degree() + 1;
             ++deg) {
            auto m = induced_matrix(lift, hb, hc, deg);
            CHECK(m.rows() == m.cols());
            if (m.rows() > 0) CHECK(rank(m) == m.rows());
        }
    }
}

TEST_CASE("jones flavors with J = 0 stack the homology of S") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto rc = floer::testing::random_graded_complex<Z2>(rng, 3, -1, 2);
        JComplex<Z2> s{rc.complex, SparseMatrix<Z2>(rc.complex.size(), rc.complex.size())};
        DegreeWindow w(-10, 6);
        auto he = safe_homology(jones_flavor(s, Flavor::Minus, w));
        auto hs = homology(s.base);
        for (int n = w.safe_lo(); n <= w.safe_hi(); ++n) {
            int want = 0;
            for (int k = 0;; ++k) {
                int src = n + 2 * k;
                if (src > 6) break;
                if (hs.count(src)) want += hs.at(src).rank;
            }
            int got = he.count(n) ? he.at(n).rank : 0;
            CHECK(got == want);
        }
    }
}

TEST_CASE("jones flavors of the free circle") {
    auto s = free_circle<Zint>();
    DegreeWindow w(-20, 4);
    auto eplus = safe_homology(jones_flavor(s, Flavor::Plus, w));
    for (const auto& [d, h] : eplus) {
        if (d == 0) {
            CHECK(h.rank == 1);
            CHECK(h.torsion.empty());
        } else {
            CHECK(h.trivial());
        }
    }
    CHECK(eplus.at(0).rank == 1);

    CHECK(report_trivial(safe_homology(jones_flavor(s, Flavor::Infty, w))));

    // E^- of the free circle: one class, in degree 1.
    auto eminus = safe_homology(jones_flavor(s, Flavor::Minus, w));
    for (const auto& [d, h] : eminus) {
        if (d == 1)
            CHECK(h.rank == 1);
        else
            CHECK(h.trivial());
    }
}

TEST_CASE("jones flavors of the Hopf bundle") {
    auto s = s_bundle(cpn<Zint>(1)).total;
    DegreeWindow w(-12, 12);
    // Borel homology of S^3 with the free circle action: H(CP^1).
    auto eplus = safe_homology(jones_flavor(s, Flavor::Plus, w));
    for (const auto& [d, h] : eplus) {
        if (d == 0 || d == 2)
            CHECK(h.rank == 1);
        else
            CHECK(h.trivial());
    }
    // co-Borel: classes in degrees 1 and 3.
    auto eminus = safe_homology(jones_flavor(s, Flavor::Minus, w));
    for (const auto& [d, h] : eminus) {
        if (d == 1 || d == 3)
            CHECK(h.rank == 1);
        else
            CHECK(h.trivial());
    }
    // Tate homology of a free action vanishes.
    CHECK(report_trivial(safe_homology(jones_flavor(s, Flavor::Infty, w))));
}

TEST_CASE("window stability of jones flavors") {
    Rng rng(333);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = floer::testing::random_jcomplex<Z2>(rng, 2);
        DegreeWindow small(-8, 8), big(-12, 12);
        for (Flavor f : {Flavor::Minus, Flavor::Infty, Flavor::Plus}) {
            auto hs = safe_homology(jones_flavor(s, f, small));
            auto hb = restrict_report(safe_homology(jones_flavor(s, f, big)), small.safe_lo(),
                                      small.safe_hi());
            CHECK(floer::testing::same_homology(hs, hb));
        }
    }
}

TEST_CASE("window too small") {
    auto s = free_circle<Zint>();
    CHECK_THROWS_AS(jones_flavor(s, Flavor::Plus, DegreeWindow(0, 3)), WindowTooSmall);
    CHECK_THROWS_AS(DegreeWindow(3, 0), WindowTooSmall);
}

TEST_CASE("fundamental ses is exact") {
    // One generator, J = 0: splits into u R[u] -> R[u,u^-1] -> coker per degree.
    JComplex<Zint> pt{make_complex<Zint>({{"x", 0}}, {}), SparseMatrix<Zint>(1, 1)};
    auto f1 = fundamental_ses(pt, DegreeWindow(-10, 10));
    CHECK(f1.les.all_exact());
    for (int d = -6; d <= 6; d += 2) {
        int total = f1.les.h_total.count(d) ? f1.les.h_total.at(d).rank : 0;
        int sub = f1.les.h_sub.count(d) ? f1.les.h_sub.at(d).rank : 0;
        int quot = f1.les.h_quotient.count(d) ? f1.les.h_quotient.at(d).rank : 0;
        CHECK(total == sub + quot);
        CHECK(total == 1);
    }

    auto f2 = fundamental_ses(free_circle<Zint>(), DegreeWindow(-14, 6));
    CHECK(f2.les.all_exact());

    auto f3 = fundamental_ses(s_bundle(cpn<Zint>(1)).total, DegreeWindow(-12, 12));
    CHECK(f3.les.all_exact());
}

TEST_CASE("fundamental ses on random J-complexes") {
    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = floer::testing::random_jcomplex<Z2>(rng, 2);
        auto f = fundamental_ses(s, DegreeWindow(-10, 10));
        CHECK(f.les.all_exact());
    }
}

TEST_CASE("jones naturality: J-preserving quasi-isos induce isos on flavors") {
    Rng rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        auto c = floer::testing::random_ucomplex<Z2>(rng, 2);
        auto ext = acyclic_extension(c, rng.pick(-2, 2));
        auto sb = s_bundle(ext.big), sc = s_bundle(c);
        auto lift = lift_map_su(ext.big, c, ext.projection,
                                SparseMatrix<Z2>(c.base.size(), ext.big.base.size()), sb, sc);

        DegreeWindow w(-10, 10);
        for (Flavor flavor : {Flavor::Minus, Flavor::Infty, Flavor::Plus}) {
            auto e1 = jones_flavor(sb.total, flavor, w);
            auto e2 = jones_flavor(sc.total, flavor, w);
            auto em = flavored_map(e1, e2, lift.matrix);
            HomologyBasis<Z2> h1(e1.complex), h2(e2.complex);
            for (int d = w.safe_lo(); d <= w.safe_hi(); ++d) {
                auto m = induced_matrix(em, h1, h2, d);
                CHECK(m.rows() == m.cols());
                if (m.rows() > 0) CHECK(rank(m) == m.rows());
            }
        }
    }
}

TEST_CASE("localization of graded U-modules") {
    using L = Laurent<Rat>;
    // u R[u]: free on one generator in degree -2.
    auto m1 = GradedUModule<Rat>::build({{"g", -2}}, SparseMatrix<L>(1, 0));
    auto l1 = localize(m1);
    CHECK(l1.rank_even == 1);
    CHECK(l1.rank_odd == 0);
    CHECK(l1.torsion_even.empty());

    // R[u]/u^n localizes to zero for n <= 5.
    for (int n = 1; n <= 5; ++n) {
        SparseMatrix<L> rel(1, 1);
        rel.set(0, 0, L::monomial(Rat{1}, n));
        auto m = GradedUModule<Rat>::build({{"g", 0}}, rel);
        CHECK(localize(m).is_zero());
    }

    // R[u] (+) R[u]/u^3 keeps only the free part.
    SparseMatrix<L> rel(2, 1);
    rel.set(1, 0, L::monomial(Rat{1}, 3));
    auto m3 = GradedUModule<Rat>::build({{"free", 0}, {"tor", 0}}, rel);
    auto l3 = localize(m3);
    CHECK(l3.rank_even == 1);
    CHECK(l3.rank_odd == 0);
    CHECK(l3.torsion_even.empty());

    // A relation coupling generators across degrees: u g1 = g2 presents a
    // free rank-1 module.
    SparseMatrix<L> rel4(2, 1);
    rel4.set(0, 0, L::monomial(Rat{1}, 1)); // u g1 (degree -2)
    rel4.set(1, 0, -L::one());              // -g2 (degree -2)
    auto m4 = GradedUModule<Rat>::build({{"g1", 0}, {"g2", -2}}, rel4);
    auto l4 = localize(m4);
    CHECK(l4.rank_even == 1);
    CHECK(l4.rank_odd == 0);
    CHECK(l4.torsion_even.empty());

    // No localization over Z[u,u^-1].
    auto mz = GradedUModule<Zint>::build({{"g", 0}}, SparseMatrix<Laurent<Zint>>(1, 0));
    CHECK_THROWS_AS(localize(mz), UnsupportedRing);
}

TEST_CASE("graded U-module validation") {
    using L = Laurent<Rat>;
    SparseMatrix<L> bad(2, 1);
    bad.set(0, 0, L::one());
    bad.set(1, 0, L::one()); // mixes degrees 0 and 4 in one column
    CHECK_THROWS_AS(GradedUModule<Rat>::build({{"a", 0}, {"b", 4}}, bad), DegreeViolation);

    SparseMatrix<L> neg(1, 1);
    neg.set(0, 0, L::monomial(Rat{1}, -1));
    CHECK_THROWS_AS(GradedUModule<Rat>::build({{"a", 0}}, neg), ValidationError);
}

TEST_CASE("umap_on_homology") {
    // U = 0 induces zero.
    auto pt = make_complex<Zint>({{"x", 0}, {"y", 5}}, {});
    UComplex<Zint> c0{pt, SparseMatrix<Zint>(2, 2)};
    auto a0 = umap_on_homology(c0);
    for (const auto& [d, m] : a0.matrices) CHECK(m.is_zero());

    // CP^1: U*: H_2 -> H_0 is the 1x1 identity.
    auto a1 = umap_on_homology(cpn<Zint>(1));
    CHECK(a1.matrices.at(2).get(0, 0) == Zint{1});

    // Functoriality: U* . U* = (U^2)* on random U-complexes.
    Rng rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = floer::testing::random_ucomplex<Z2>(rng, 3);
        HomologyBasis<Z2> basis(c.base);
        ChainMap<Z2> u = c.umap();
        ChainMap<Z2> uu = compose(u, u);
        for (int d = c.base.min_degree(); d <= c.base.max_degree(); ++d) {
            auto two_steps =
                induced_matrix(u, basis, basis, d - 2) * induced_matrix(u, basis, basis, d);
            auto one_shot = induced_matrix(uu, basis, basis, d);
            CHECK(induced_equal(two_steps, one_shot, basis.summands(d - 4)));
        }
    }
}
