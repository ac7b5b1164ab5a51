#pragma once

#include <map>
#include <string>
#include <vector>

#include "floer/chain_map.hpp"
#include "floer/complex.hpp"
#include "floer/equivariant.hpp"
#include "floer/errors.hpp"
#include "floer/homology.hpp"
#include "floer/rings.hpp"

namespace floer {

// Fiber-product input: the tensor complex C1 (x) C2 with the combined U-map
// U1 (x) 1 + 1 (x) U2 (no Koszul signs: U has even degree).
template <Ring R>
struct ProductUComplex {
    UComplex<R> c1, c2;
    UComplex<R> product;
};

template <Ring R>
ProductUComplex<R> product_ucomplex(const UComplex<R>& c1, const UComplex<R>& c2) {
    ProductUComplex<R> out{c1, c2, {}};
    out.product.base = tensor_product(c1.base, c2.base);
    const auto& t = out.product.base;

    auto pair_id = [&](int i, int j) {
        return "(" + c1.base.gen(i).id + "*" + c2.base.gen(j).id + ")";
    };
    SparseMatrix<R> u(t.size(), t.size());
    for (int i = 0; i < c1.base.size(); ++i)
        for (int j = 0; j < c2.base.size(); ++j) {
            const int col = t.index_of(pair_id(i, j));
            for (const auto& [rc, v] : c1.u.entries())
                if (rc.second == i) u.add_to(t.index_of(pair_id(rc.first, j)), col, v);
            for (const auto& [rc, v] : c2.u.entries())
                if (rc.second == j) u.add_to(t.index_of(pair_id(i, rc.first)), col, v);
        }
    out.product.u = std::move(u);
    require_chain_map(out.product.umap());
    return out;
}

// S_(U+u)(C (x) V^flavor) materialized on a window: generators x.uk.1 in
// degree |x| - 2k and x.uk.y one higher, with
//   d(x.uk.1) = (dx).uk.1 + (Ux).uk.y + x.u(k+1).y
//   d(x.uk.y) = -(dx).uk.y
// The u-exponent range is k >= offset (minus), all k (infty), k <= offset
// (plus, with the quotient differential dropping exponents above the cut).
// offset = 0 realizes V^flavor literally; offset = 1 for the minus flavor is
// the one-point-model cut convention (the u R[u] pattern).
template <Ring R>
struct SOtimes {
    GradedComplex<R> complex;
    DegreeWindow window;
    Flavor flavor = Flavor::Infty;
    int offset = 0;
    std::vector<std::pair<std::pair<int, int>, bool>> tags; // ((base index, k), is_y)
};

namespace detail {

inline bool s_otimes_allows(Flavor f, int k, int offset) {
    switch (f) {
        case Flavor::Minus: return k >= offset;
        case Flavor::Infty: return true;
        case Flavor::Plus: return k <= offset;
    }
    return false;
}

} // namespace detail

template <Ring R>
SOtimes<R> s_otimes(const UComplex<R>& c, Flavor flavor, DegreeWindow window, int offset = 0) {
    window.require_safe();
    const auto& b = c.base;

    struct Item {
        Generator gen;
        int bi, k;
        bool y;
    };
    std::vector<Item> items;
    for (int i = 0; i < b.size(); ++i) {
        for (int y = 0; y < 2; ++y) {
            const int deg = b.gen(i).degree + y;
            for (int k = (deg - window.hi + 1) / 2 - 1; 2 * k <= deg - window.lo; ++k) {
                const int total = deg - 2 * k;
                if (total < window.lo || total > window.hi) continue;
                if (!detail::s_otimes_allows(flavor, k, offset)) continue;
                items.push_back({{b.gen(i).id + ".u" + std::to_string(k) + (y ? ".y" : ".1"), total},
                                 i, k, y == 1});
            }
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& bb) { return a.gen < bb.gen; });

    std::map<std::tuple<int, int, bool>, int> pos;
    std::vector<Generator> gens;
    SOtimes<R> out;
    out.window = window;
    out.flavor = flavor;
    out.offset = offset;
    for (int idx = 0; idx < static_cast<int>(items.size()); ++idx) {
        pos.emplace(std::tuple{items[idx].bi, items[idx].k, items[idx].y}, idx);
        gens.push_back(items[idx].gen);
        out.tags.push_back({{items[idx].bi, items[idx].k}, items[idx].y});
    }

    SparseMatrix<R> diff(static_cast<int>(items.size()), static_cast<int>(items.size()));
    for (int idx = 0; idx < static_cast<int>(items.size()); ++idx) {
        const auto [bk, y] = out.tags[idx];
        const auto [bi, k] = bk;
        for (const auto& [rc, v] : b.diff().entries()) {
            if (rc.second != bi) continue;
            auto it = pos.find({rc.first, k, y});
            if (it != pos.end()) diff.add_to(it->second, idx, y ? -v : v);
        }
        if (!y) {
            for (const auto& [rc, v] : c.u.entries()) {
                if (rc.second != bi) continue;
                auto it = pos.find({rc.first, k, true});
                if (it != pos.end()) diff.add_to(it->second, idx, v);
            }
            auto it = pos.find({bi, k + 1, true});
            if (it != pos.end()) diff.add_to(it->second, idx, R::one());
        }
    }
    out.complex = GradedComplex<R>::from_parts(std::move(gens), std::move(diff));
    return out;
}

// Hat flavor of the fiber product: tensoring with the one-class fundamental
// domain only shifts the S^1-bundle, so the statement is grading-level.
template <Ring R>
GradedComplex<R> s_otimes_hat(const UComplex<R>& c, int offset = 1) {
    return shift(s_bundle(c).total.base, -2 * offset);
}

// Checks H(E^flavor(S_U(C))) = H(S_(U+u)(C (x) V^flavor)) on the common safe
// range, both sides computed through independent constructions.
template <Ring R>
struct IdentityReport {
    HomologyReport<R> jones_side, product_side;
    std::vector<int> mismatched_degrees;
    bool ok() const { return mismatched_degrees.empty(); }
};

template <Ring R>
IdentityReport<R> verify_e_su_identity(const UComplex<R>& c, Flavor flavor, DegreeWindow window) {
    IdentityReport<R> rep;
    SBundle<R> s = s_bundle(c);
    rep.jones_side = safe_homology(jones_flavor(s.total, flavor, window));
    SOtimes<R> f = s_otimes(c, flavor, window, 0);
    rep.product_side = restrict_report(homology(f.complex), window.safe_lo(), window.safe_hi());

    for (int d = window.safe_lo(); d <= window.safe_hi(); ++d) {
        DegreeHomology<R> a, b;
        if (auto it = rep.jones_side.find(d); it != rep.jones_side.end()) a = it->second;
        if (auto it = rep.product_side.find(d); it != rep.product_side.end()) b = it->second;
        if (!(a == b)) rep.mismatched_degrees.push_back(d);
    }
    return rep;
}

// Compares the deck transformation t = 1 (x) u with the equivariant U-map
// U (x) 1 on the homology of the fiber product.  The two chain maps are
// homotopic up to sign, so the t-action must equal minus the U-action (the
// sign is invisible over Z/2).  Comparison runs on degrees where the window
// truncation cannot interfere.
template <Ring R>
struct UvsTReport {
    int compare_lo = 0, compare_hi = 0;
    std::vector<int> mismatched_degrees;
    bool ok() const { return mismatched_degrees.empty(); }
};

template <Ring R>
UvsTReport<R> u_vs_t_action(const UComplex<R>& c, Flavor flavor, DegreeWindow window,
                            int offset = 0) {
    SOtimes<R> f = s_otimes(c, flavor, window, offset);
    const auto& t = f.complex;

    std::map<std::tuple<int, int, bool>, int> pos;
    for (int i = 0; i < t.size(); ++i)
        pos.emplace(std::tuple{f.tags[i].first.first, f.tags[i].first.second, f.tags[i].second}, i);

    ChainMap<R> t_map(t, t, -2, MapSign::Commute);
    ChainMap<R> u_map(t, t, -2, MapSign::Commute);
    for (int i = 0; i < t.size(); ++i) {
        const auto [bk, y] = f.tags[i];
        const auto [bi, k] = bk;
        if (detail::s_otimes_allows(flavor, k + 1, offset)) {
            auto it = pos.find({bi, k + 1, y});
            if (it != pos.end()) t_map.matrix.set(it->second, i, R::one());
        }
        for (const auto& [rc, v] : c.u.entries()) {
            if (rc.second != bi) continue;
            auto it = pos.find({rc.first, k, y});
            if (it != pos.end()) u_map.matrix.add_to(it->second, i, v);
        }
    }

    UvsTReport<R> rep;
    rep.compare_lo = window.lo + 4;
    rep.compare_hi = window.hi - 2;
    if (rep.compare_lo > rep.compare_hi) throw WindowTooSmall("u_vs_t_action comparison range empty");

    HomologyBasis<R> basis(t);
    for (int d = rep.compare_lo; d <= rep.compare_hi; ++d) {
        SparseMatrix<R> ts = induced_matrix(t_map, basis, basis, d);
        SparseMatrix<R> us = induced_matrix(u_map, basis, basis, d);
        if (!induced_equal(ts, -us, basis.summands(d - 2))) rep.mismatched_degrees.push_back(d);
    }
    return rep;
}

// The closed-form null homotopy behind "U1 and -U2 are chain homotopic" on
// S_(U1+U2)(C1 (x) C2): H(xi.1) = 0, H(xi.y) = xi.1 satisfies
// d.H + H.d = lift(U1) + lift(U2).
template <Ring R>
struct NullHomotopyReport {
    ChainMap<R> closed_form;
    bool closed_form_ok = false;
    bool solver_found = false;
    bool solver_ok = false;
    bool induced_maps_equal = false; // lift(U1) and -lift(U2) agree on homology
    bool ok() const { return closed_form_ok && solver_found && solver_ok && induced_maps_equal; }
};

template <Ring R>
NullHomotopyReport<R> explicit_null_homotopy(const ProductUComplex<R>& p) {
    SBundle<R> s = s_bundle(p.product);
    const auto& t = s.total.base;

    // Lift an endomorphism g of the base strictly to S_U: xi.e -> (g xi).e.
    auto lift = [&](const SparseMatrix<R>& g) {
        ChainMap<R> m(t, t, -2, MapSign::Commute);
        std::map<std::pair<int, bool>, int> pos;
        for (int i = 0; i < t.size(); ++i) pos.emplace(s.tags[i], i);
        for (int i = 0; i < t.size(); ++i) {
            const auto [bi, y] = s.tags[i];
            for (const auto& [rc, v] : g.entries())
                if (rc.second == bi) m.matrix.add_to(pos.at({rc.first, y}), i, v);
        }
        return m;
    };

    // U1 (x) 1 and 1 (x) U2 on the tensor base.
    const auto& b1 = p.c1.base;
    const auto& b2 = p.c2.base;
    const auto& base = p.product.base;
    auto pair_index = [&](int i, int j) {
        return base.index_of("(" + b1.gen(i).id + "*" + b2.gen(j).id + ")");
    };
    SparseMatrix<R> u1(base.size(), base.size()), u2(base.size(), base.size());
    for (int i = 0; i < b1.size(); ++i)
        for (int j = 0; j < b2.size(); ++j) {
            for (const auto& [rc, v] : p.c1.u.entries())
                if (rc.second == i) u1.add_to(pair_index(rc.first, j), pair_index(i, j), v);
            for (const auto& [rc, v] : p.c2.u.entries())
                if (rc.second == j) u2.add_to(pair_index(i, rc.first), pair_index(i, j), v);
        }

    NullHomotopyReport<R> rep;
    ChainMap<R> lift_u1 = lift(u1), lift_u2 = lift(u2);

    rep.closed_form = ChainMap<R>(t, t, -1, MapSign::Commute);
    for (int i = 0; i < t.size(); ++i) {
        const auto [bi, y] = s.tags[i];
        if (!y) continue;
        for (int j = 0; j < t.size(); ++j)
            if (s.tags[j] == std::pair{bi, false}) rep.closed_form.matrix.set(j, i, R::one());
    }
    SparseMatrix<R> boundary = homotopy_boundary(rep.closed_form);
    rep.closed_form_ok = (boundary == lift_u1.matrix + lift_u2.matrix);

    auto solved = find_chain_homotopy(lift_u1, map_negate(lift_u2));
    rep.solver_found = solved.has_value();
    if (solved)
        rep.solver_ok =
            (homotopy_boundary(*solved) == lift_u1.matrix + lift_u2.matrix);

    HomologyBasis<R> basis(t);
    rep.induced_maps_equal = true;
    if (!t.empty()) {
        for (int d = t.min_degree() - 1; d <= t.max_degree() + 1; ++d) {
            SparseMatrix<R> a = induced_matrix(lift_u1, basis, basis, d);
            SparseMatrix<R> b = induced_matrix(map_negate(lift_u2), basis, basis, d);
            if (!induced_equal(a, b, basis.summands(d - 2))) rep.induced_maps_equal = false;
        }
    }
    return rep;
}

} // namespace floer
