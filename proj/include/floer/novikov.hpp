#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "floer/complex.hpp"
#include "floer/equivariant.hpp"
#include "floer/errors.hpp"
#include "floer/homology.hpp"
#include "floer/les.hpp"
#include "floer/rings.hpp"

namespace floer {

// Finitely generated free graded complex over R[t,t^-1] with t-equivariant
// differential.  Generators are one per t-orbit, graded by the degree of the
// t^0 lift; t shifts degree by deg_t (an even integer <= 0; 0 covers the
// classical Novikov examples where the deck transformation preserves the
// grading, -2 is the default for the filtration flavors).
template <Ring R>
struct LaurentComplex {
    std::vector<Generator> gens; // canonical order
    int deg_t = -2;
    SparseMatrix<Laurent<R>> diff; // column j = d(gen j) with Laurent entries

    int size() const { return static_cast<int>(gens.size()); }
    int index_of(const std::string& id) const {
        for (int i = 0; i < size(); ++i)
            if (gens[i].id == id) return i;
        throw ValidationError("unknown orbit generator: " + id);
    }
    friend bool operator==(const LaurentComplex&, const LaurentComplex&) = default;
};

template <Ring R>
struct LaurentEntry {
    std::string from, to;
    Laurent<R> coeff;
};

struct CutLevel {
    int offset = 1; // the t-power immediately below the cut: minus = span{t^k, k >= offset}
};

template <Ring R>
LaurentComplex<R> make_laurent(std::vector<Generator> gens, const std::vector<LaurentEntry<R>>& entries,
                               int deg_t = -2) {
    if (deg_t > 0 || deg_t % 2 != 0)
        throw ValidationError("deg_t must be an even integer <= 0, got " + std::to_string(deg_t));
    LaurentComplex<R> c;
    std::sort(gens.begin(), gens.end());
    c.gens = std::move(gens);
    c.deg_t = deg_t;
    std::set<std::string> ids;
    for (const auto& g : c.gens)
        if (!ids.insert(g.id).second) throw ValidationError("duplicate orbit generator id: " + g.id);

    c.diff = SparseMatrix<Laurent<R>>(c.size(), c.size());
    for (const auto& e : entries) {
        int from = c.index_of(e.from), to = c.index_of(e.to);
        for (const auto& [k, coeff] : e.coeff.terms) {
            (void)coeff;
            if (c.gens[from].degree - 1 != c.gens[to].degree + k * deg_t)
                throw DegreeViolation(e.from + " -> t^" + std::to_string(k) + " " + e.to);
        }
        c.diff.add_to(to, from, e.coeff);
    }
    SparseMatrix<Laurent<R>> sq = c.diff * c.diff;
    if (!sq.is_zero()) {
        int col = sq.entries().begin()->first.second;
        throw NotADifferential(c.gens[col].id);
    }
    return c;
}

struct SemiPositivityViolation {
    std::string from, to;
    int exponent;
};

struct SemiPositivityReport {
    bool semi_positive = true;
    std::vector<SemiPositivityViolation> violations;
};

// Semi-positive: every differential entry uses only nonnegative powers of t,
// so span{t^k x : k >= cut} is closed under the differential.
template <Ring R>
SemiPositivityReport check_semipositive(const LaurentComplex<R>& c) {
    SemiPositivityReport rep;
    for (const auto& [rc, v] : c.diff.entries())
        for (const auto& [k, coeff] : v.terms) {
            (void)coeff;
            if (k < 0) {
                rep.semi_positive = false;
                rep.violations.push_back({c.gens[rc.second].id, c.gens[rc.first].id, k});
            }
        }
    return rep;
}

template <Ring R>
void require_semipositive(const LaurentComplex<R>& c) {
    auto rep = check_semipositive(c);
    if (!rep.semi_positive)
        throw SemiPositivityRequired(rep.violations.front().from + " -> t^" +
                                     std::to_string(rep.violations.front().exponent) + " " +
                                     rep.violations.front().to);
}

enum class FilteredFlavor { Minus, Full, Plus };

// Materialized slice complex over the base ring: generators t^k x with
// degree deg(x) + k*deg_t inside the window, k restricted by the flavor
// relative to the cut.  The plus flavor carries the quotient differential
// (targets at or above the cut are dropped).
template <Ring R>
struct MaterializedComplex {
    GradedComplex<R> complex;
    DegreeWindow window;
    std::vector<std::pair<int, int>> tags; // (orbit index, t-exponent)
};

template <Ring R>
MaterializedComplex<R> materialize(const LaurentComplex<R>& L, FilteredFlavor flavor, CutLevel cut,
                                   DegreeWindow window) {
    require_semipositive(L);
    if (L.deg_t == 0)
        throw ValidationError("windowed flavors need deg_t < 0 (each degree must be a finite slice)");
    window.require_safe();

    auto allows = [&](int k) {
        switch (flavor) {
            case FilteredFlavor::Minus: return k >= cut.offset;
            case FilteredFlavor::Full: return true;
            case FilteredFlavor::Plus: return k < cut.offset;
        }
        return false;
    };

    struct Item {
        Generator gen;
        int oi, k;
    };
    std::vector<Item> items;
    for (int i = 0; i < L.size(); ++i) {
        const int deg = L.gens[i].degree;
        // deg + k*deg_t in [lo, hi] with deg_t < 0.
        for (int k = (deg - window.hi) / std::abs(L.deg_t) - 2; ; ++k) {
            const int total = deg + k * L.deg_t;
            if (total < window.lo) break; // deg_t < 0: degree decreases with k
            if (total > window.hi || !allows(k)) continue;
            items.push_back({{L.gens[i].id + ".t" + std::to_string(k), total}, i, k});
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.gen < b.gen; });

    std::map<std::pair<int, int>, int> pos;
    std::vector<Generator> gens;
    MaterializedComplex<R> out;
    out.window = window;
    for (int idx = 0; idx < static_cast<int>(items.size()); ++idx) {
        pos.emplace(std::pair{items[idx].oi, items[idx].k}, idx);
        gens.push_back(items[idx].gen);
        out.tags.emplace_back(items[idx].oi, items[idx].k);
    }

    SparseMatrix<R> diff(static_cast<int>(items.size()), static_cast<int>(items.size()));
    for (int idx = 0; idx < static_cast<int>(items.size()); ++idx) {
        const auto [oi, k] = out.tags[idx];
        for (const auto& [rc, poly] : L.diff.entries()) {
            if (rc.second != oi) continue;
            for (const auto& [j, coeff] : poly.terms) {
                auto it = pos.find({rc.first, k + j});
                if (it != pos.end()) diff.add_to(it->second, idx, coeff);
            }
        }
    }
    out.complex = GradedComplex<R>::from_parts(std::move(gens), std::move(diff));
    return out;
}

template <Ring R>
MaterializedComplex<R> minus_complex(const LaurentComplex<R>& L, CutLevel cut, DegreeWindow window) {
    return materialize(L, FilteredFlavor::Minus, cut, window);
}
template <Ring R>
MaterializedComplex<R> plus_complex(const LaurentComplex<R>& L, CutLevel cut, DegreeWindow window) {
    return materialize(L, FilteredFlavor::Plus, cut, window);
}
template <Ring R>
MaterializedComplex<R> full_complex(const LaurentComplex<R>& L, CutLevel cut, DegreeWindow window) {
    return materialize(L, FilteredFlavor::Full, cut, window);
}

// The fundamental domain minus / t.minus: one copy of each orbit generator,
// placed in the cut slice, with the constant coefficient of the differential.
template <Ring R>
GradedComplex<R> hat_complex(const LaurentComplex<R>& L, CutLevel cut) {
    require_semipositive(L);
    std::vector<Generator> gens;
    for (const auto& g : L.gens) gens.push_back({g.id, g.degree + cut.offset * L.deg_t});
    std::vector<DiffEntry<R>> entries;
    for (const auto& [rc, poly] : L.diff.entries()) {
        const R& c0 = poly.coeff(0);
        if (!c0.is_zero()) entries.push_back({L.gens[rc.second].id, L.gens[rc.first].id, c0});
    }
    return make_complex(std::move(gens), entries);
}

// Long exact sequence of the pair: 0 -> minus -> full -> plus -> 0 inside a
// window, exactness checked on the safe range.
template <Ring R>
struct PairLes {
    MaterializedComplex<R> minus, full, plus;
    LesReport<R> les;
};

template <Ring R>
PairLes<R> pair_les(const LaurentComplex<R>& L, CutLevel cut, DegreeWindow window) {
    PairLes<R> out;
    out.full = materialize(L, FilteredFlavor::Full, cut, window);

    std::set<std::string> sub_ids;
    for (int i = 0; i < out.full.complex.size(); ++i)
        if (out.full.tags[i].second >= cut.offset) sub_ids.insert(out.full.complex.gen(i).id);
    auto split = split_by_generators(out.full.complex,
                                     [&](const Generator& g) { return sub_ids.count(g.id) > 0; });

    ChainMap<R> inc(split.sub, out.full.complex, 0, MapSign::Commute);
    inc.matrix = split.inclusion;
    ChainMap<R> proj(out.full.complex, split.quotient, 0, MapSign::Commute);
    proj.matrix = split.projection;
    out.les = les_of_ses(inc, proj, window.safe_lo() + 1, window.safe_hi() - 1);

    out.minus = materialize(L, FilteredFlavor::Minus, cut, window);
    out.plus = materialize(L, FilteredFlavor::Plus, cut, window);
    return out;
}

// Homology over the Laurent ring itself (field base only).  The grading is
// t-periodic, so degrees are grouped by their class modulo |deg_t| (plain
// degrees when deg_t = 0); each class reports free rank and invariant-factor
// torsion over F[t,t^-1].
template <Ring R>
HomologyReport<Laurent<R>> laurent_homology(const LaurentComplex<R>& L) {
    if (!Laurent<R>::has_snf)
        throw UnsupportedRing("Laurent homology needs a field base ring, got " +
                              ring_spec_of<R>::get().name());
    const int period = std::abs(L.deg_t);
    auto class_of = [&](int deg) {
        if (period == 0) return deg;
        return ((deg % period) + period) % period;
    };

    std::set<int> classes;
    for (const auto& g : L.gens) classes.insert(class_of(g.degree));

    auto block = [&](int from_class) {
        // Columns: generators in class `from_class`; rows: class of degree-1.
        std::vector<int> cols_idx, rows_idx;
        for (int i = 0; i < L.size(); ++i) {
            if (class_of(L.gens[i].degree) == from_class) cols_idx.push_back(i);
            if (class_of(L.gens[i].degree) == class_of(from_class - 1)) rows_idx.push_back(i);
        }
        std::vector<int> rpos(L.size(), -1);
        for (int r = 0; r < static_cast<int>(rows_idx.size()); ++r) rpos[rows_idx[r]] = r;
        SparseMatrix<Laurent<R>> m(static_cast<int>(rows_idx.size()),
                                   static_cast<int>(cols_idx.size()));
        for (int cj = 0; cj < static_cast<int>(cols_idx.size()); ++cj)
            for (const auto& [rc, v] : L.diff.entries())
                if (rc.second == cols_idx[cj] && rpos[rc.first] >= 0) m.set(rpos[rc.first], cj, v);
        return m;
    };

    HomologyReport<Laurent<R>> report;
    for (int cls : classes) {
        auto out_snf = smith_normal_form(block(cls));
        auto in_snf = smith_normal_form(block(class_of(cls + 1)));
        int dim = 0;
        for (const auto& g : L.gens)
            if (class_of(g.degree) == cls) ++dim;
        DegreeHomology<Laurent<R>> h;
        h.rank = dim - out_snf.rank - in_snf.rank;
        h.torsion = in_snf.torsion();
        report.emplace(cls, h);
    }
    return report;
}

// The t-equivariant S_U construction with U = multiplication by t:
// orbit generators doubled, d(x) = d_L x + t (x.y), d(x.y) = -(d_L x).y.
// Requires deg_t = -2 so that multiplication by t is a degree -2 map; the
// result is the cone of a unit and has vanishing Laurent homology.
template <Ring R>
LaurentComplex<R> su_of_laurent(const LaurentComplex<R>& L) {
    if (L.deg_t != -2)
        throw ValidationError("su_of_laurent needs deg_t = -2, got " + std::to_string(L.deg_t));
    std::vector<Generator> gens;
    for (const auto& g : L.gens) {
        gens.push_back({g.id + ".1", g.degree});
        gens.push_back({g.id + ".y", g.degree + 1});
    }
    std::vector<LaurentEntry<R>> entries;
    for (const auto& [rc, poly] : L.diff.entries()) {
        entries.push_back({L.gens[rc.second].id + ".1", L.gens[rc.first].id + ".1", poly});
        entries.push_back({L.gens[rc.second].id + ".y", L.gens[rc.first].id + ".y", -poly});
    }
    for (const auto& g : L.gens)
        entries.push_back({g.id + ".1", g.id + ".y", Laurent<R>::monomial(R::one(), 1)});
    return make_laurent<R>(std::move(gens), entries, -2);
}

} // namespace floer
