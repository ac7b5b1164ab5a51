#include <doctest.h>

#include "floer/connect_sum.hpp"
#include "support/random_complexes.hpp"

using namespace floer;
using floer::testing::Rng;

namespace {

template <Ring R>
UComplex<R> cpn(int n) {
    std::vector<Generator> gens;
    std::vector<DiffEntry<R>> umap;
    for (int k = 0; k <= n; ++k) gens.push_back({"c" + std::to_string(2 * k), 2 * k});
    for (int k = 1; k <= n; ++k)
        umap.push_back({"c" + std::to_string(2 * k), "c" + std::to_string(2 * k - 2), R::one()});
    return make_ucomplex(make_complex<R>(gens, {}), umap);
}

template <Ring R>
UComplex<R> unit_ucomplex() {
    return UComplex<R>{make_complex<R>({{"e", 0}}, {}), SparseMatrix<R>(1, 1)};
}

} // namespace

TEST_CASE("product_ucomplex basics") {
    auto c = cpn<Zint>(1);
    auto p = product_ucomplex(c, unit_ucomplex<Zint>());
    CHECK(floer::testing::same_homology(homology(p.product.base), homology(c.base)));
    // with the unit factor, U (x) 1 + 1 (x) 0 acts exactly like U
    auto a_prod = umap_on_homology(p.product);
    auto a_base = umap_on_homology(c);
    CHECK(a_prod.matrices.at(2).get(0, 0) == a_base.matrices.at(2).get(0, 0));

    auto z1 = unit_ucomplex<Zint>();
    auto p0 = product_ucomplex(z1, z1);
    CHECK(p0.product.u.is_zero());
}

TEST_CASE("product U-map is a chain map on random pairs") {
    Rng rng(90210);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = floer::testing::random_ucomplex<Z2>(rng, 2);
        auto b = floer::testing::random_ucomplex<Z2>(rng, 2);
        auto p = product_ucomplex(a, b); // construction re-validates d U = U d
        CHECK(is_chain_map(p.product.umap()).ok);
    }
}

TEST_CASE("s_otimes of the unit complex is the bundle of the coefficient module") {
    // With C a single generator and U = 0, s_otimes computes S_u(V^flavor):
    // the cone of multiplication by u on the coefficient module.  u is
    // injective on V^- with cokernel in degree 1 shifted by the cut, has
    // kernel u^offset on V^+ (cokernel zero), and is invertible on V^infty.
    auto c = unit_ucomplex<Zint>();
    DegreeWindow w(-14, 14);
    auto table = [&](Flavor f, int offset) {
        return restrict_report(homology(s_otimes(c, f, w, offset).complex), w.safe_lo(),
                               w.safe_hi());
    };
    auto only_degree = [&](const HomologyReport<Zint>& h, int degree) {
        for (int d = w.safe_lo(); d <= w.safe_hi(); ++d) {
            int want = (d == degree) ? 1 : 0;
            if ((h.count(d) ? h.at(d).rank : 0) != want) return false;
            if (h.count(d) && !h.at(d).torsion.empty()) return false;
        }
        return true;
    };

    CHECK(only_degree(table(Flavor::Minus, 0), 1));  // coker(u) on R[u]: class of u^0.y
    CHECK(only_degree(table(Flavor::Minus, 1), -1)); // same, shifted one u-power down
    CHECK(only_degree(table(Flavor::Plus, 0), 0));   // ker(u) on V^+: u^0.1
    CHECK(only_degree(table(Flavor::Plus, 1), -2));  // ker is u^offset
    CHECK(report_trivial(table(Flavor::Infty, 0))); // u invertible: acyclic
}

TEST_CASE("s_otimes infty of an acyclic complex is acyclic") {
    auto base = make_complex<Z2>({{"a", 1}, {"b", 0}}, {{"a", "b", Z2{1}}});
    UComplex<Z2> c{base, SparseMatrix<Z2>(2, 2)};
    DegreeWindow w(-10, 10);
    CHECK(report_trivial(
        restrict_report(homology(s_otimes(c, Flavor::Infty, w, 0).complex), w.safe_lo(), w.safe_hi())));
}

TEST_CASE("hat flavor of the fiber product is the shifted bundle") {
    auto c = cpn<Zint>(1);
    auto hat = homology(s_otimes_hat(c, 1));
    auto bundle = homology(s_bundle(c).total.base);
    for (const auto& [d, h] : bundle) {
        if (h.trivial()) continue;
        CHECK(hat.at(d - 2).rank == h.rank);
    }
}

TEST_CASE("E-flavor of S_U agrees with the fiber product: pinned cases") {
    // For the unit complex both sides are the flavors of the free circle:
    // one class in degree 1 (minus), one in degree 0 (plus), nothing (infty).
    auto unit = unit_ucomplex<Zint>();
    DegreeWindow w(-10, 10);
    auto rep_minus = verify_e_su_identity(unit, Flavor::Minus, w);
    CHECK(rep_minus.ok());
    CHECK(rep_minus.jones_side.at(1).rank == 1);
    auto rep_plus = verify_e_su_identity(unit, Flavor::Plus, w);
    CHECK(rep_plus.ok());
    CHECK(rep_plus.jones_side.at(0).rank == 1);
    auto rep_inf = verify_e_su_identity(unit, Flavor::Infty, w);
    CHECK(rep_inf.ok());
    CHECK(report_trivial(rep_inf.jones_side));

    auto c = cpn<Zint>(1);
    auto rep = verify_e_su_identity(c, Flavor::Plus, w);
    CHECK(rep.ok());
    CHECK(rep.jones_side.at(0).rank == 1);
    CHECK(rep.jones_side.at(2).rank == 1);
}

TEST_CASE("E-flavor identity on random U-complexes") {
    Rng rng(11);
    DegreeWindow w(-12, 12);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = floer::testing::random_ucomplex<Z2>(rng, 3);
        for (Flavor f : {Flavor::Minus, Flavor::Infty, Flavor::Plus})
            CHECK(verify_e_su_identity(c, f, w).ok());
    }
}

TEST_CASE("u action equals t action on the fiber product") {
    auto unit = unit_ucomplex<Zint>();
    DegreeWindow w(-14, 10);
    for (Flavor f : {Flavor::Minus, Flavor::Infty, Flavor::Plus})
        CHECK(u_vs_t_action(unit, f, w).ok());

    auto c = cpn<Zint>(1);
    for (Flavor f : {Flavor::Minus, Flavor::Infty, Flavor::Plus})
        CHECK(u_vs_t_action(c, f, w).ok());

    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        auto r = floer::testing::random_ucomplex<Z2>(rng, 3);
        for (Flavor f : {Flavor::Minus, Flavor::Infty, Flavor::Plus})
            CHECK(u_vs_t_action(r, f, w).ok());
    }
}

TEST_CASE("explicit null homotopy for U1 vs -U2") {
    // U = 0 on both factors: the homotopy realizes 0 ~ 0.
    auto p0 = product_ucomplex(unit_ucomplex<Zint>(), unit_ucomplex<Zint>());
    auto rep0 = explicit_null_homotopy(p0);
    CHECK(rep0.ok());

    // CP^1 (x) CP^1 with both U-maps.
    auto p = product_ucomplex(cpn<Zint>(1), cpn<Zint>(1));
    auto rep = explicit_null_homotopy(p);
    CHECK(rep.ok());

    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = floer::testing::random_ucomplex<Z2>(rng, 2);
        auto b = floer::testing::random_ucomplex<Z2>(rng, 2);
        CHECK(explicit_null_homotopy(product_ucomplex(a, b)).ok());
    }
}

TEST_CASE("fiber-product flavor ladder matches the Jones ladder") {
    // Split S_(U+u)(C (x) V^infty) at the cut and compare its LES with the
    // fundamental sequence of S_U(C), node by node.
    Rng rng(44);
    DegreeWindow w(-12, 12);
    for (int trial = 0; trial < 8; ++trial) {
        auto c = floer::testing::random_ucomplex<Z2>(rng, 3);

        auto jones = fundamental_ses(s_bundle(c).total, w);

        auto einf = s_otimes(c, Flavor::Infty, w, 0);
        std::set<std::string> sub_ids;
        for (int i = 0; i < einf.complex.size(); ++i)
            if (einf.tags[i].first.second >= 1) sub_ids.insert(einf.complex.gen(i).id);
        auto split = split_by_generators(einf.complex,
                                         [&](const Generator& g) { return sub_ids.count(g.id) > 0; });
        ChainMap<Z2> inc(split.sub, einf.complex, 0, MapSign::Commute);
        inc.matrix = split.inclusion;
        ChainMap<Z2> proj(einf.complex, split.quotient, 0, MapSign::Commute);
        proj.matrix = split.projection;
        auto product = les_of_ses(inc, proj, w.safe_lo() + 1, w.safe_hi() - 1);

        CHECK(jones.les.all_exact());
        CHECK(product.all_exact());
        for (int d = w.safe_lo() + 1; d <= w.safe_hi() - 1; ++d) {
            auto rank_at = [d](const HomologyReport<Z2>& r) {
                return r.count(d) ? r.at(d).rank : 0;
            };
            CHECK(rank_at(jones.les.h_sub) == rank_at(product.h_sub));
            CHECK(rank_at(jones.les.h_total) == rank_at(product.h_total));
            CHECK(rank_at(jones.les.h_quotient) == rank_at(product.h_quotient));
            CHECK(rank(jones.les.connecting.at(d)) == rank(product.connecting.at(d)));
        }
    }
}
