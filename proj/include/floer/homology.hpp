#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floer/chain_map.hpp"
#include "floer/complex.hpp"
#include "floer/errors.hpp"
#include "floer/rings.hpp"
#include "floer/snf.hpp"
#include "floer/sparse_matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace floer {

template <Ring R>
struct DegreeHomology {
    int rank = 0;
    std::vector<R> torsion; // invariant factors, divisibility chain

    bool trivial() const { return rank == 0 && torsion.empty(); }
    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

// Per-degree free rank and torsion.  Degrees without generators are omitted.
template <Ring R>
using HomologyReport = std::map<int, DegreeHomology<R>>;

template <Ring R>
DegreeHomology<R> homology_at(const GradedComplex<R>& c, int degree) {
    auto out_snf = smith_normal_form(c.block(degree));      // d: C_n -> C_(n-1)
    auto in_snf = smith_normal_form(c.block(degree + 1));   // d: C_(n+1) -> C_n
    DegreeHomology<R> h;
    h.rank = c.dim(degree) - out_snf.rank - in_snf.rank;
    h.torsion = in_snf.torsion();
    return h;
}

// Serial reference implementation: one degree at a time, in order.
template <Ring R>
HomologyReport<R> homology_serial(const GradedComplex<R>& c) {
    HomologyReport<R> report;
    if (c.empty()) return report;
    for (int d = c.min_degree(); d <= c.max_degree(); ++d)
        if (c.dim(d) > 0) report.emplace(d, homology_at(c, d));
    return report;
}

// Degree-parallel kernel.  Each degree touches only the two adjacent blocks
// of the differential, so the iterations are independent.
template <Ring R>
HomologyReport<R> homology(const GradedComplex<R>& c) {
    if (c.empty()) return {};
    std::vector<int> degrees;
    for (int d = c.min_degree(); d <= c.max_degree(); ++d)
        if (c.dim(d) > 0) degrees.push_back(d);
    std::vector<DegreeHomology<R>> results(degrees.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < static_cast<int>(degrees.size()); ++i)
        results[i] = homology_at(c, degrees[i]);
    HomologyReport<R> report;
    for (std::size_t i = 0; i < degrees.size(); ++i) report.emplace(degrees[i], results[i]);
    return report;
}

template <Ring R>
HomologyReport<R> restrict_report(const HomologyReport<R>& r, int lo, int hi) {
    HomologyReport<R> out;
    for (const auto& [d, h] : r)
        if (d >= lo && d <= hi) out.emplace(d, h);
    return out;
}

template <Ring R>
bool report_trivial(const HomologyReport<R>& r) {
    for (const auto& [d, h] : r)
        if (!h.trivial()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Homology with chosen presentation bases: H_n = coker(relations) inside
// ker(d_n), each degree presented as a direct sum of cyclic summands
// R/(ann_i) with ann_i = 0 marking a free summand.  Representative cycles are
// the first Smith basis vectors, which makes induced maps of chain maps
// computable as honest matrices in these coordinates.
// ---------------------------------------------------------------------------

template <Ring R>
class HomologyBasis {
public:
    struct Summand {
        R annihilator;              // zero for a free summand
        std::vector<R> representative; // cycle in chain coordinates of its degree
    };

    explicit HomologyBasis(const GradedComplex<R>& c) : complex_(c) {
        if (c.empty()) return;
        for (int d = c.min_degree() - 1; d <= c.max_degree() + 1; ++d) data_.emplace(d, build(c, d));
    }

    const GradedComplex<R>& complex() const { return complex_; }

    int summand_count(int degree) const {
        auto it = data_.find(degree);
        return it == data_.end() ? 0 : static_cast<int>(it->second.summands.size());
    }
    const std::vector<Summand>& summands(int degree) const {
        static const std::vector<Summand> none;
        auto it = data_.find(degree);
        return it == data_.end() ? none : it->second.summands;
    }

    DegreeHomology<R> report_at(int degree) const {
        DegreeHomology<R> h;
        for (const auto& s : summands(degree)) {
            if (s.annihilator.is_zero())
                ++h.rank;
            else
                h.torsion.push_back(s.annihilator);
        }
        return h;
    }

    // Coordinates of a cycle in the presentation of its degree, canonically
    // reduced modulo each annihilator.
    std::vector<R> coords(int degree, const std::vector<R>& cycle) const {
        auto it = data_.find(degree);
        if (it == data_.end()) {
            for (const R& v : cycle)
                if (!v.is_zero()) throw InternalMismatch("cycle in an empty degree");
            return {};
        }
        const DegreeData& dd = it->second;
        auto [lo, hi] = complex_.degree_range(degree);
        if (static_cast<int>(cycle.size()) != hi - lo) throw DimensionMismatch("coords cycle size");
        std::vector<R> bd = complex_.block(degree).apply(cycle);
        for (const R& v : bd)
            if (!v.is_zero()) throw InternalMismatch("coords of a non-cycle");
        std::vector<R> y;
        if (dd.kernel_dim > 0) {
            auto sol = solve_linear(dd.kernel, cycle);
            if (!sol) throw InternalMismatch("cycle outside the kernel lattice");
            y = *sol;
        }
        std::vector<R> w = dd.rel_snf.U.apply(y);
        std::vector<R> out;
        out.reserve(dd.summands.size());
        for (std::size_t k = 0; k < dd.live.size(); ++k)
            out.push_back(reduce(w[dd.live[k]], dd.summands[k].annihilator));
        return out;
    }

    static R reduce(const R& value, const R& ann) {
        if (ann.is_zero()) return value;
        return value.divmod(ann).second;
    }

private:
    struct DegreeData {
        SparseMatrix<R> kernel; // dim x k, basis of ker(d_degree)
        int kernel_dim = 0;
        SmithForm<R> rel_snf;   // SNF of relation matrix in kernel coordinates
        std::vector<int> live;  // kernel-coordinate indices of nontrivial summands
        std::vector<Summand> summands;
    };

    static DegreeData build(const GradedComplex<R>& c, int degree) {
        DegreeData dd;
        const int dim = c.dim(degree);
        auto kb = kernel_basis(c.block(degree));
        dd.kernel_dim = static_cast<int>(kb.size());
        dd.kernel = SparseMatrix<R>(dim, dd.kernel_dim);
        for (int j = 0; j < dd.kernel_dim; ++j) dd.kernel.set_column(j, kb[j]);
        if (dd.kernel_dim == 0) return dd;

        // Boundaries expressed in kernel coordinates.
        SparseMatrix<R> in_block = c.block(degree + 1);
        auto rel = solve_linear_columns(dd.kernel, in_block);
        if (!rel) throw InternalMismatch("boundary outside the kernel lattice");
        dd.rel_snf = smith_normal_form(*rel);

        for (int i = 0; i < dd.kernel_dim; ++i) {
            R ann = i < static_cast<int>(dd.rel_snf.diagonal.size()) ? dd.rel_snf.diagonal[i]
                                                                     : R::zero();
            if (ann.is_unit()) continue; // dead summand
            Summand s;
            s.annihilator = ann;
            s.representative = dd.kernel.apply(dd.rel_snf.U_inv.column(i));
            dd.live.push_back(i);
            dd.summands.push_back(std::move(s));
        }
        return dd;
    }

    GradedComplex<R> complex_;
    std::map<int, DegreeData> data_;
};

// Matrix of the map induced on homology by a chain map, from the degree-n
// summands of the source to the degree-(n + f.degree) summands of the target.
template <Ring R>
SparseMatrix<R> induced_matrix(const ChainMap<R>& f, const HomologyBasis<R>& src,
                               const HomologyBasis<R>& tgt, int degree) {
    const auto& sums = src.summands(degree);
    const int tdeg = degree + f.degree;
    SparseMatrix<R> m(tgt.summand_count(tdeg), static_cast<int>(sums.size()));
    for (int j = 0; j < static_cast<int>(sums.size()); ++j) {
        // Representative lives in the degree slice; expand to full chain coords.
        auto [lo, hi] = f.source.degree_range(degree);
        std::vector<R> chain(f.source.size(), R::zero());
        for (int i = lo; i < hi; ++i) chain[i] = sums[j].representative[i - lo];
        std::vector<R> image = f.apply(chain);
        auto [tlo, thi] = f.target.degree_range(tdeg);
        std::vector<R> slice(image.begin() + tlo, image.begin() + thi);
        for (int i = 0; i < f.target.size(); ++i)
            if (!image[i].is_zero() && (i < tlo || i >= thi))
                throw DegreeViolation("induced_matrix: image off degree");
        std::vector<R> co = tgt.coords(tdeg, slice);
        for (int i = 0; i < static_cast<int>(co.size()); ++i) m.set(i, j, co[i]);
    }
    return m;
}

// Equality of two induced maps presented in the same coordinates, comparing
// entries reduced modulo the target annihilators.
template <Ring R>
bool induced_equal(const SparseMatrix<R>& a, const SparseMatrix<R>& b,
                   const std::vector<typename HomologyBasis<R>::Summand>& target_summands) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i) {
        const R& ann = target_summands[i].annihilator;
        for (int j = 0; j < a.cols(); ++j) {
            R da = HomologyBasis<R>::reduce(a.get(i, j), ann);
            R db = HomologyBasis<R>::reduce(b.get(i, j), ann);
            if (!(da == db)) return false;
        }
    }
    return true;
}

} // namespace floer
