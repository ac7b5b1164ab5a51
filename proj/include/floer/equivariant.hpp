#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "floer/chain_map.hpp"
#include "floer/complex.hpp"
#include "floer/errors.hpp"
#include "floer/homology.hpp"
#include "floer/les.hpp"
#include "floer/rings.hpp"

namespace floer {

// Complex with a degree -2 chain endomorphism U (the R[U]-module structure
// at chain level).
template <Ring R>
struct UComplex {
    GradedComplex<R> base;
    SparseMatrix<R> u; // column j = U(gen j)

    ChainMap<R> umap() const {
        ChainMap<R> f(base, base, -2, MapSign::Commute);
        f.matrix = u;
        return f;
    }
};

template <Ring R>
UComplex<R> make_ucomplex(GradedComplex<R> base, const std::vector<DiffEntry<R>>& u_entries) {
    UComplex<R> c{std::move(base), SparseMatrix<R>()};
    ChainMap<R> f(c.base, c.base, -2, MapSign::Commute);
    for (const auto& e : u_entries) f.set_entry(e.from, e.to, e.coeff);
    require_chain_map(f);
    c.u = f.matrix;
    return c;
}

// Complex with a degree +1 map J anticommuting with the differential.
template <Ring R>
struct JComplex {
    GradedComplex<R> base;
    SparseMatrix<R> j;

    ChainMap<R> jmap() const {
        ChainMap<R> f(base, base, +1, MapSign::Anticommute);
        f.matrix = j;
        return f;
    }
};

template <Ring R>
JComplex<R> make_jcomplex(GradedComplex<R> base, const std::vector<DiffEntry<R>>& j_entries) {
    JComplex<R> c{std::move(base), SparseMatrix<R>()};
    ChainMap<R> f(c.base, c.base, +1, MapSign::Anticommute);
    for (const auto& e : j_entries) f.set_entry(e.from, e.to, e.coeff);
    require_chain_map(f);
    c.j = f.matrix;
    return c;
}

struct DegreeWindow {
    int lo = 0, hi = 0;

    DegreeWindow() = default;
    DegreeWindow(int l, int h) : lo(l), hi(h) {
        if (l > h) throw WindowTooSmall("lo > hi");
    }
    // Homology is only trustworthy away from the truncation edges.
    int safe_lo() const { return lo + 2; }
    int safe_hi() const { return hi - 2; }
    void require_safe() const {
        if (safe_lo() > safe_hi())
            throw WindowTooSmall("[" + std::to_string(lo) + "," + std::to_string(hi) +
                                 "] has empty safe range");
    }
    bool contains(int d) const { return d >= lo && d <= hi; }
};

// ---------------------------------------------------------------------------
// The algebraic S^1-bundle S_U(C) = (C (x) R[y], d (x) sigma + U (x) y):
// generators x.1 in degree |x| and x.y in degree |x|+1, with
//   d(x.1) = (dx).1 + (Ux).y,   d(x.y) = -(dx).y,
// and J = multiplication by y.
// ---------------------------------------------------------------------------

template <Ring R>
struct SBundle {
    JComplex<R> total;
    // Generator bookkeeping: for each total generator, the base index and
    // whether it is the y-copy.
    std::vector<std::pair<int, bool>> tags;

    int index_of(int base_index, bool y_part, const UComplex<R>&) const {
        for (int i = 0; i < static_cast<int>(tags.size()); ++i)
            if (tags[i].first == base_index && tags[i].second == y_part) return i;
        throw ValidationError("s_bundle tag lookup failed");
    }
};

template <Ring R>
SBundle<R> s_bundle(const UComplex<R>& c) {
    const auto& b = c.base;
    struct Item {
        Generator gen;
        int bi;
        bool y;
    };
    std::vector<Item> items;
    for (int i = 0; i < b.size(); ++i) {
        items.push_back({{b.gen(i).id + ".1", b.gen(i).degree}, i, false});
        items.push_back({{b.gen(i).id + ".y", b.gen(i).degree + 1}, i, true});
    }
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.gen < y.gen; });

    std::map<std::pair<int, bool>, int> pos;
    std::vector<Generator> gens;
    SBundle<R> out;
    for (int k = 0; k < static_cast<int>(items.size()); ++k) {
        pos.emplace(std::pair{items[k].bi, items[k].y}, k);
        gens.push_back(items[k].gen);
        out.tags.emplace_back(items[k].bi, items[k].y);
    }

    const int n = static_cast<int>(items.size());
    SparseMatrix<R> diff(n, n), j(n, n);
    for (int k = 0; k < n; ++k) {
        const auto [bi, y] = out.tags[k];
        for (const auto& [rc, v] : b.diff().entries()) {
            if (rc.second != bi) continue;
            diff.add_to(pos.at({rc.first, y}), k, y ? -v : v);
        }
        if (!y) {
            for (const auto& [rc, v] : c.u.entries()) {
                if (rc.second != bi) continue;
                diff.add_to(pos.at({rc.first, true}), k, v);
            }
            j.set(pos.at({bi, true}), k, R::one());
        }
    }

    out.total.base = GradedComplex<R>::from_parts(std::move(gens), std::move(diff));
    out.total.j = std::move(j);
    // J anticommutes with d and squares to zero by construction; verify.
    require_chain_map(out.total.jmap());
    if (!(out.total.j * out.total.j).is_zero()) throw InternalMismatch("J^2 != 0 on S_U");
    return out;
}

// Verifies the cone identification of S_U(C): the connecting map of
// 0 -> C.y -> S_U(C) -> C.1 -> 0 equals the map induced by U up to one
// global sign.
template <Ring R>
struct ConeCompareReport {
    LesReport<R> les;
    bool connecting_is_u = false;
    int sign = +1; // the global sign that matched
    bool ok() const { return les.all_exact() && connecting_is_u; }
};

template <Ring R>
ConeCompareReport<R> cone_compare(const UComplex<R>& c) {
    SBundle<R> s = s_bundle(c);
    const auto& total = s.total.base;

    std::set<std::string> y_ids;
    for (int i = 0; i < total.size(); ++i)
        if (s.tags[i].second) y_ids.insert(total.gen(i).id);
    auto split = split_by_generators(total, [&](const Generator& g) { return y_ids.count(g.id) > 0; });

    ChainMap<R> inc(split.sub, total, 0, MapSign::Commute);
    inc.matrix = split.inclusion;
    ChainMap<R> proj(total, split.quotient, 0, MapSign::Commute);
    proj.matrix = split.projection;

    ConeCompareReport<R> rep;
    rep.les = les_of_ses(inc, proj);

    // iota1 : C -> quotient, x -> x.1  (degree 0 iso)
    ChainMap<R> iota1(c.base, split.quotient, 0, MapSign::Commute);
    for (int i = 0; i < c.base.size(); ++i)
        iota1.set_entry(c.base.gen(i).id, c.base.gen(i).id + ".1", R::one());
    require_chain_map(iota1);
    // chi : C -> sub, x -> x.y  (degree +1, anticommuting iso)
    ChainMap<R> chi(c.base, split.sub, +1, MapSign::Anticommute);
    for (int i = 0; i < c.base.size(); ++i)
        chi.set_entry(c.base.gen(i).id, c.base.gen(i).id + ".y", R::one());
    require_chain_map(chi);

    HomologyBasis<R> hb(c.base), hsub(split.sub), hquot(split.quotient);
    bool plus_ok = true, minus_ok = true;
    if (!c.base.empty()) {
        for (int d = c.base.min_degree() - 1; d <= c.base.max_degree() + 1; ++d) {
            // route 1: snake connecting map after identifying C with C.1
            SparseMatrix<R> route1 = rep.les.connecting.at(d) * induced_matrix(iota1, hb, hquot, d);
            // route 2: U on homology, then identify C with C.y
            SparseMatrix<R> ustar = induced_matrix(c.umap(), hb, hb, d);
            SparseMatrix<R> route2 = induced_matrix(chi, hb, hsub, d - 2) * ustar;
            if (!induced_equal(route1, route2, hsub.summands(d - 1))) plus_ok = false;
            if (!induced_equal(route1, -route2, hsub.summands(d - 1))) minus_ok = false;
        }
    }
    rep.connecting_is_u = plus_ok || minus_ok;
    rep.sign = plus_ok ? +1 : -1;
    return rep;
}

// Lifts a map of U-complexes to the S^1-bundles.  The homotopy h must
// witness  f.U1 - U2.f = d.h + h.d  (h = 0 for strict intertwiners); the lift
// is x.1 -> f(x).1 - h(x).y, x.y -> f(x).y, and is J-preserving.  f may have
// any even degree (e.g. the U-map itself).
template <Ring R>
ChainMap<R> lift_map_su(const UComplex<R>& c1, const UComplex<R>& c2, const SparseMatrix<R>& f,
                        const SparseMatrix<R>& h, const SBundle<R>& s1, const SBundle<R>& s2,
                        int f_degree = 0) {
    ChainMap<R> fmap(c1.base, c2.base, f_degree, MapSign::Commute);
    fmap.matrix = f;
    require_chain_map(fmap);
    // d.h + h.d must equal f.U1 - U2.f.
    SparseMatrix<R> defect = f * c1.u - c2.u * f;
    SparseMatrix<R> witness = c2.base.diff() * h + h * c1.base.diff();
    if (!(defect - witness).is_zero())
        throw NotIntertwining("supplied homotopy does not witness f.U1 - U2.f");

    const auto& t1 = s1.total.base;
    const auto& t2 = s2.total.base;
    ChainMap<R> lift(t1, t2, f_degree, MapSign::Commute);
    for (int k = 0; k < t1.size(); ++k) {
        const auto [bi, y] = s1.tags[k];
        for (const auto& [rc, v] : f.entries()) {
            if (rc.second != bi) continue;
            lift.set_entry(t1.gen(k).id, c2.base.gen(rc.first).id + (y ? ".y" : ".1"), v);
        }
        if (!y) {
            for (const auto& [rc, v] : h.entries()) {
                if (rc.second != bi) continue;
                lift.set_entry(t1.gen(k).id, c2.base.gen(rc.first).id + ".y", -v);
            }
        }
    }
    require_chain_map(lift);
    return lift;
}

// ---------------------------------------------------------------------------
// Jones flavors E^bullet(S) = (S (x) V, d (x) 1 + J (x) u) with deg u = -2,
// V^- = R[u], V^infty = R[u,u^-1], V^+ = R[u,u^-1]/uR[u], materialized on a
// degree window.  The V^+ quotient drops u-exponents that leave k <= 0.
// ---------------------------------------------------------------------------

enum class Flavor { Minus, Infty, Plus };

inline std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Minus: return "minus";
        case Flavor::Infty: return "infty";
        case Flavor::Plus: return "plus";
    }
    return "?";
}

template <Ring R>
struct FlavoredComplex {
    GradedComplex<R> complex;
    DegreeWindow window;
    Flavor flavor = Flavor::Infty;
    std::vector<std::pair<int, int>> tags; // (base generator index, u-exponent)
};

namespace detail {

inline bool flavor_allows(Flavor f, int k) {
    switch (f) {
        case Flavor::Minus: return k >= 0;
        case Flavor::Infty: return true;
        case Flavor::Plus: return k <= 0;
    }
    return false;
}

} // namespace detail

template <Ring R>
FlavoredComplex<R> jones_flavor(const JComplex<R>& s, Flavor flavor, DegreeWindow window) {
    window.require_safe();
    const auto& b = s.base;

    struct Item {
        Generator gen;
        int bi, k;
    };
    std::vector<Item> items;
    for (int i = 0; i < b.size(); ++i) {
        const int deg = b.gen(i).degree;
        // deg - 2k in [lo, hi]  <=>  k in [(deg-hi)/2, (deg-lo)/2]
        for (int k = (deg - window.hi + 1) / 2 - 1; 2 * k <= deg - window.lo; ++k) {
            if (deg - 2 * k < window.lo || deg - 2 * k > window.hi) continue;
            if (!detail::flavor_allows(flavor, k)) continue;
            items.push_back({{b.gen(i).id + ".u" + std::to_string(k), deg - 2 * k}, i, k});
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.gen < y.gen; });

    std::map<std::pair<int, int>, int> pos;
    std::vector<Generator> gens;
    FlavoredComplex<R> out;
    out.window = window;
    out.flavor = flavor;
    for (int idx = 0; idx < static_cast<int>(items.size()); ++idx) {
        pos.emplace(std::pair{items[idx].bi, items[idx].k}, idx);
        gens.push_back(items[idx].gen);
        out.tags.emplace_back(items[idx].bi, items[idx].k);
    }

    SparseMatrix<R> diff(static_cast<int>(items.size()), static_cast<int>(items.size()));
    for (int idx = 0; idx < static_cast<int>(items.size()); ++idx) {
        const auto [bi, k] = out.tags[idx];
        for (const auto& [rc, v] : b.diff().entries()) {
            if (rc.second != bi) continue;
            auto it = pos.find({rc.first, k});
            if (it != pos.end()) diff.add_to(it->second, idx, v);
        }
        for (const auto& [rc, v] : s.j.entries()) {
            if (rc.second != bi) continue;
            auto it = pos.find({rc.first, k + 1}); // absent when truncated or off-flavor
            if (it != pos.end()) diff.add_to(it->second, idx, v);
        }
    }
    out.complex = GradedComplex<R>::from_parts(std::move(gens), std::move(diff));
    return out;
}

// Homology of a windowed complex, restricted to the safe range.
template <Ring R>
HomologyReport<R> safe_homology(const FlavoredComplex<R>& f) {
    return restrict_report(homology(f.complex), f.window.safe_lo(), f.window.safe_hi());
}

// The fundamental short exact sequence 0 -> uE^- -> E^infty -> E^+ -> 0
// within a window, with its long exact sequence checked on the safe range.
template <Ring R>
struct FundamentalSes {
    FlavoredComplex<R> e_infty;
    GradedComplex<R> sub;      // u E^-: exponents k >= 1
    GradedComplex<R> quotient; // E^+: exponents k <= 0
    LesReport<R> les;
};

template <Ring R>
FundamentalSes<R> fundamental_ses(const JComplex<R>& s, DegreeWindow window) {
    FundamentalSes<R> out;
    out.e_infty = jones_flavor(s, Flavor::Infty, window);
    const auto& total = out.e_infty.complex;

    std::set<std::string> sub_ids;
    for (int i = 0; i < total.size(); ++i)
        if (out.e_infty.tags[i].second >= 1) sub_ids.insert(total.gen(i).id);
    auto split =
        split_by_generators(total, [&](const Generator& g) { return sub_ids.count(g.id) > 0; });

    ChainMap<R> inc(split.sub, total, 0, MapSign::Commute);
    inc.matrix = split.inclusion;
    ChainMap<R> proj(total, split.quotient, 0, MapSign::Commute);
    proj.matrix = split.projection;
    out.les = les_of_ses(inc, proj, window.safe_lo() + 1, window.safe_hi() - 1);
    out.sub = split.sub;
    out.quotient = split.quotient;
    return out;
}

// ---------------------------------------------------------------------------
// Finitely generated graded R[U]-modules (deg U = -2) and localization,
// i.e. tensoring with R[U, U^-1].  U-power torsion dies; the rest survives.
// Homogeneous relations only couple generators of equal degree parity, so
// the localized module splits into an even and an odd block, each reported
// as free rank plus invariant-factor torsion over the Laurent ring.
// ---------------------------------------------------------------------------

template <Ring R>
struct GradedUModule {
    std::vector<Generator> gens;        // module generators with degrees
    SparseMatrix<Laurent<R>> relations; // rows = gens, entries polynomial in U

    static GradedUModule build(std::vector<Generator> gens, SparseMatrix<Laurent<R>> relations) {
        GradedUModule m{std::move(gens), std::move(relations)};
        if (m.relations.rows() != static_cast<int>(m.gens.size()))
            throw DimensionMismatch("relation rows != generators");
        for (int j = 0; j < m.relations.cols(); ++j) {
            bool seen = false;
            int col_degree = 0;
            for (const auto& [rc, v] : m.relations.entries()) {
                if (rc.second != j) continue;
                for (const auto& [k, coeff] : v.terms) {
                    (void)coeff;
                    if (k < 0) throw ValidationError("relation entry with negative U-power");
                    int deg = m.gens[rc.first].degree - 2 * k;
                    if (!seen) {
                        col_degree = deg;
                        seen = true;
                    } else if (deg != col_degree) {
                        throw DegreeViolation("inhomogeneous relation column " + std::to_string(j));
                    }
                }
            }
        }
        return m;
    }
};

template <Ring R>
struct LocalizedModule {
    int rank_even = 0, rank_odd = 0;
    std::vector<Laurent<R>> torsion_even, torsion_odd;

    bool is_zero() const {
        return rank_even == 0 && rank_odd == 0 && torsion_even.empty() && torsion_odd.empty();
    }
    friend bool operator==(const LocalizedModule&, const LocalizedModule&) = default;
};

template <Ring R>
LocalizedModule<R> localize(const GradedUModule<R>& m) {
    if (!Laurent<R>::has_snf)
        throw UnsupportedRing("localization needs field coefficients (got " +
                              ring_spec_of<R>::get().name() + ")");
    LocalizedModule<R> out;
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<int> rows;
        for (int i = 0; i < static_cast<int>(m.gens.size()); ++i)
            if (((m.gens[i].degree % 2) + 2) % 2 == parity) rows.push_back(i);
        std::vector<int> row_pos(m.gens.size(), -1);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) row_pos[rows[r]] = r;

        // Columns whose entries touch this parity block.
        std::set<int> cols;
        for (const auto& [rc, v] : m.relations.entries()) {
            (void)v;
            if (row_pos[rc.first] >= 0) cols.insert(rc.second);
        }
        SparseMatrix<Laurent<R>> block(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        int cj = 0;
        for (int j : cols) {
            for (const auto& [rc, v] : m.relations.entries())
                if (rc.second == j && row_pos[rc.first] >= 0) block.set(row_pos[rc.first], cj, v);
            ++cj;
        }
        auto snf = smith_normal_form(block);
        int rank_free = static_cast<int>(rows.size()) - snf.rank;
        auto torsion = snf.torsion();
        if (parity == 0) {
            out.rank_even = rank_free;
            out.torsion_even = torsion;
        } else {
            out.rank_odd = rank_free;
            out.torsion_odd = torsion;
        }
    }
    return out;
}

// Induced action of a chain endomorphism on homology: one matrix per degree,
// in the presentation coordinates of a fixed HomologyBasis.
template <Ring R>
struct InducedAction {
    int degree = 0; // degree of the inducing map
    std::map<int, SparseMatrix<R>> matrices;
    std::map<int, std::vector<R>> annihilators;
};

template <Ring R>
InducedAction<R> induced_action(const ChainMap<R>& f, const HomologyBasis<R>& basis) {
    InducedAction<R> out;
    out.degree = f.degree;
    const auto& c = f.source;
    if (c.empty()) return out;
    for (int d = c.min_degree() - 1; d <= c.max_degree() + 1; ++d) {
        out.matrices.emplace(d, induced_matrix(f, basis, basis, d));
        std::vector<R> ann;
        for (const auto& s : basis.summands(d)) ann.push_back(s.annihilator);
        out.annihilators.emplace(d, std::move(ann));
    }
    return out;
}

template <Ring R>
InducedAction<R> umap_on_homology(const UComplex<R>& c) {
    HomologyBasis<R> basis(c.base);
    return induced_action(c.umap(), basis);
}

} // namespace floer
