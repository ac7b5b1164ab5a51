#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "floer/chain_map.hpp"
#include "floer/complex.hpp"
#include "floer/errors.hpp"
#include "floer/homology.hpp"
#include "floer/rings.hpp"
#include "floer/snf.hpp"
#include "floer/sparse_matrix.hpp"

namespace floer {

// Exactness of  P_A --f--> P_B --g--> P_C  at P_B, where each P is presented
// as a direct sum of cyclic modules R/(ann_i) and the maps are matrices in
// those coordinates.  Checks g.f = 0 and ker(g) <= im(f) by lifting to the
// free covers: the kernel in the cover is the y-part of ker[M_g | rel_C],
// and membership in im(f) + rel_B is an exact linear solve.
template <Ring R>
bool exact_at_middle(const SparseMatrix<R>& f, const SparseMatrix<R>& g,
                     const std::vector<R>& ann_b, const std::vector<R>& ann_c) {
    const int nb = static_cast<int>(ann_b.size());
    const int nc = static_cast<int>(ann_c.size());

    // g.f must vanish modulo the annihilators of C.
    SparseMatrix<R> comp = g * f;
    for (const auto& [rc, v] : comp.entries())
        if (!HomologyBasis<R>::reduce(v, ann_c[rc.first]).is_zero()) return false;

    // Stack [M_g | diag(ann_c)] and extract the y-part of its kernel.
    std::vector<int> c_rel;
    for (int i = 0; i < nc; ++i)
        if (!ann_c[i].is_zero()) c_rel.push_back(i);
    SparseMatrix<R> stacked(nc, nb + static_cast<int>(c_rel.size()));
    for (const auto& [rc, v] : g.entries()) stacked.set(rc.first, rc.second, v);
    for (int k = 0; k < static_cast<int>(c_rel.size()); ++k)
        stacked.set(c_rel[k], nb + k, ann_c[c_rel[k]]);

    // Candidate image lattice: columns of f together with B's relations.
    std::vector<int> b_rel;
    for (int i = 0; i < nb; ++i)
        if (!ann_b[i].is_zero()) b_rel.push_back(i);
    SparseMatrix<R> image(nb, f.cols() + static_cast<int>(b_rel.size()));
    for (const auto& [rc, v] : f.entries()) image.set(rc.first, rc.second, v);
    for (int k = 0; k < static_cast<int>(b_rel.size()); ++k)
        image.set(b_rel[k], f.cols() + k, ann_b[b_rel[k]]);

    for (const auto& kvec : kernel_basis(stacked)) {
        std::vector<R> y(kvec.begin(), kvec.begin() + nb);
        if (!solve_linear(image, y)) return false;
    }
    return true;
}

struct LesNode {
    int degree = 0;
    std::string at; // "A", "B" or "C"
    bool exact = true;
};

template <Ring R>
struct LesReport {
    HomologyReport<R> h_sub, h_total, h_quotient;
    // Connecting map per degree n: H_n(quotient) -> H_(n-1)(sub), as a matrix
    // in the presentation coordinates of the two homology bases.
    std::map<int, SparseMatrix<R>> connecting;
    std::vector<LesNode> nodes;

    bool all_exact() const {
        for (const auto& n : nodes)
            if (!n.exact) return false;
        return true;
    }
};

namespace detail {

template <Ring R>
void validate_ses(const ChainMap<R>& inc, const ChainMap<R>& proj) {
    if (!(inc.target == proj.source)) throw DimensionMismatch("ses: middle complexes differ");
    if (inc.degree != 0 || proj.degree != 0) throw NotExact(0, "maps must have degree 0");
    require_chain_map(inc);
    require_chain_map(proj);

    const GradedComplex<R>&a = inc.source, &b = inc.target, &c = proj.target;
    if (a.empty() && b.empty() && c.empty()) return;
    int span_lo = INT_MAX, span_hi = INT_MIN;
    for (const GradedComplex<R>* cx : {&a, &b, &c}) {
        if (cx->empty()) continue;
        span_lo = std::min(span_lo, cx->min_degree());
        span_hi = std::max(span_hi, cx->max_degree());
    }
    for (int d = span_lo; d <= span_hi; ++d) {
        auto slice = [d](const ChainMap<R>& f) {
            auto [slo, shi] = f.source.degree_range(d);
            auto [tlo, thi] = f.target.degree_range(d);
            SparseMatrix<R> m(thi - tlo, shi - slo);
            for (const auto& [rc, v] : f.matrix.entries())
                if (rc.first >= tlo && rc.first < thi && rc.second >= slo && rc.second < shi)
                    m.set(rc.first - tlo, rc.second - slo, v);
            return m;
        };
        SparseMatrix<R> mi = slice(inc), mp = slice(proj);
        if (!(mp * mi).is_zero()) throw NotExact(d, "p.i != 0");
        if (!is_injective(mi)) throw NotExact(d, "i not injective");
        if (!is_surjective(mp)) throw NotExact(d, "p not surjective");
        for (const auto& k : kernel_basis(mp))
            if (!solve_linear(mi, k)) throw NotExact(d, "ker p != im i");
    }
}

} // namespace detail

// Long exact sequence of 0 -> A --i--> B --p--> C -> 0.  The connecting map
// is computed by the snake construction: lift a cycle of C through p, apply
// the differential of B, pull back through i.  Exactness is then verified at
// every node of  ... -> H_n A -> H_n B -> H_n C -> H_(n-1) A -> ...
// Degrees outside [check_lo, check_hi] are skipped when given (windowed
// complexes are only trustworthy on their safe range).
template <Ring R>
LesReport<R> les_of_ses(const ChainMap<R>& inc, const ChainMap<R>& proj, int check_lo = INT_MIN,
                        int check_hi = INT_MAX) {
    detail::validate_ses(inc, proj);
    const GradedComplex<R>&a = inc.source, &b = inc.target, &c = proj.target;

    HomologyBasis<R> ha(a), hb(b), hc(c);
    LesReport<R> rep;
    rep.h_sub = homology(a);
    rep.h_total = homology(b);
    rep.h_quotient = homology(c);
    if (a.empty() && b.empty() && c.empty()) return rep;

    int span_lo = INT_MAX, span_hi = INT_MIN;
    for (const GradedComplex<R>* cx : {&a, &b, &c}) {
        if (cx->empty()) continue;
        span_lo = std::min(span_lo, cx->min_degree());
        span_hi = std::max(span_hi, cx->max_degree());
    }
    const int lo = span_lo - 1;
    const int hi = span_hi + 1;

    std::map<int, SparseMatrix<R>> istar, pstar, delta;
    auto anns = [](const HomologyBasis<R>& h, int d) {
        std::vector<R> v;
        for (const auto& s : h.summands(d)) v.push_back(s.annihilator);
        return v;
    };

    for (int d = lo; d <= hi; ++d) {
        istar.emplace(d, induced_matrix(inc, ha, hb, d));
        pstar.emplace(d, induced_matrix(proj, hb, hc, d));
        // Snake: one column per summand of H_d(C).
        const auto& sums = hc.summands(d);
        SparseMatrix<R> conn(ha.summand_count(d - 1), static_cast<int>(sums.size()));
        for (int j = 0; j < static_cast<int>(sums.size()); ++j) {
            auto [clo, chi] = c.degree_range(d);
            std::vector<R> cycle(c.size(), R::zero());
            for (int i = clo; i < chi; ++i) cycle[i] = sums[j].representative[i - clo];
            auto lift = solve_linear(proj.matrix, cycle);
            if (!lift) throw InternalMismatch("snake lift failed despite surjectivity");
            std::vector<R> boundary = b.diff().apply(*lift);
            auto pre = solve_linear(inc.matrix, boundary);
            if (!pre) throw InternalMismatch("snake pullback failed despite exactness");
            auto [alo, ahi] = a.degree_range(d - 1);
            std::vector<R> slice(pre->begin() + alo, pre->begin() + ahi);
            std::vector<R> co = ha.coords(d - 1, slice);
            for (int i = 0; i < static_cast<int>(co.size()); ++i) conn.set(i, j, co[i]);
        }
        delta.emplace(d, std::move(conn));
    }
    rep.connecting = delta;

    for (int d = lo; d <= hi; ++d) {
        if (d < check_lo || d > check_hi) continue;
        rep.nodes.push_back(
            {d, "B", exact_at_middle(istar.at(d), pstar.at(d), anns(hb, d), anns(hc, d))});
        rep.nodes.push_back(
            {d, "C", exact_at_middle(pstar.at(d), delta.at(d), anns(hc, d), anns(ha, d - 1))});
        if (d - 1 >= check_lo && d - 1 >= lo) {
            rep.nodes.push_back({d - 1, "A",
                                 exact_at_middle(delta.at(d), istar.at(d - 1), anns(ha, d - 1),
                                                 anns(hb, d - 1))});
        }
    }
    return rep;
}

} // namespace floer
