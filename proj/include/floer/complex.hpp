#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "floer/errors.hpp"
#include "floer/rings.hpp"
#include "floer/snf.hpp"
#include "floer/sparse_matrix.hpp"

namespace floer {

struct Generator {
    std::string id;
    int degree = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
    // Canonical order: by degree, then id.  All matrices are relative to it.
    friend bool operator<(const Generator& a, const Generator& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.id < b.id;
    }
};

template <Ring R>
struct DiffEntry {
    std::string from, to;
    R coeff;
};

// Finite graded chain complex over R with a strictly degree (-1) differential
// satisfying d.d = 0.  Immutable after construction.
template <Ring R>
class GradedComplex {
public:
    GradedComplex() : diff_(0, 0) {}

    static GradedComplex build(std::vector<Generator> gens, const std::vector<DiffEntry<R>>& entries) {
        GradedComplex c;
        std::sort(gens.begin(), gens.end());
        c.gens_ = std::move(gens);
        for (int i = 0; i < c.size(); ++i) {
            auto [it, fresh] = c.index_.emplace(c.gens_[i].id, i);
            if (!fresh) throw ValidationError("duplicate generator id: " + c.gens_[i].id);
        }
        c.diff_ = SparseMatrix<R>(c.size(), c.size());
        for (const auto& e : entries) {
            int from = c.index_of(e.from), to = c.index_of(e.to);
            if (c.gens_[from].degree - 1 != c.gens_[to].degree)
                throw DegreeViolation(e.from + " -> " + e.to);
            c.diff_.add_to(to, from, e.coeff);
        }
        c.finish();
        return c;
    }

    // Trusted constructor for internal builders: gens must already be sorted
    // and diff degree-consistent; d.d = 0 is still verified.
    static GradedComplex from_parts(std::vector<Generator> gens, SparseMatrix<R> diff) {
        GradedComplex c;
        c.gens_ = std::move(gens);
        for (int i = 0; i < c.size(); ++i) {
            if (i > 0 && !(c.gens_[i - 1] < c.gens_[i]))
                throw ValidationError("generators not in canonical order");
            c.index_.emplace(c.gens_[i].id, i);
        }
        c.diff_ = std::move(diff);
        for (const auto& [rc, v] : c.diff_.entries())
            if (c.gens_[rc.second].degree - 1 != c.gens_[rc.first].degree)
                throw DegreeViolation(c.gens_[rc.second].id + " -> " + c.gens_[rc.first].id);
        c.finish();
        return c;
    }

    int size() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& gens() const { return gens_; }
    const Generator& gen(int i) const { return gens_[i]; }
    const SparseMatrix<R>& diff() const { return diff_; }
    RingSpec ring() const { return ring_spec_of<R>::get(); }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw ValidationError("unknown generator id: " + id);
        return it->second;
    }
    bool has_gen(const std::string& id) const { return index_.count(id) != 0; }

    bool empty() const { return gens_.empty(); }
    int min_degree() const { return empty() ? 0 : gens_.front().degree; }
    int max_degree() const { return empty() ? 0 : gens_.back().degree; }

    // Indices of generators in the given degree: contiguous [first, last).
    std::pair<int, int> degree_range(int degree) const {
        auto lo = std::lower_bound(gens_.begin(), gens_.end(), Generator{"", degree},
                                   [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
        auto hi = std::upper_bound(gens_.begin(), gens_.end(), Generator{"", degree},
                                   [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
        return {static_cast<int>(lo - gens_.begin()), static_cast<int>(hi - gens_.begin())};
    }
    int dim(int degree) const {
        auto [lo, hi] = degree_range(degree);
        return hi - lo;
    }

    // Matrix block of d restricted to C_degree -> C_(degree-1); rows indexed
    // by the lower generators, columns by the upper, in canonical order.
    SparseMatrix<R> block(int degree) const {
        auto [clo, chi] = degree_range(degree);
        auto [rlo, rhi] = degree_range(degree - 1);
        SparseMatrix<R> b(rhi - rlo, chi - clo);
        for (const auto& [rc, v] : diff_.entries()) {
            if (rc.second < clo || rc.second >= chi) continue;
            b.set(rc.first - rlo, rc.second - clo, v);
        }
        return b;
    }

    friend bool operator==(const GradedComplex& a, const GradedComplex& b) {
        return a.gens_ == b.gens_ && a.diff_ == b.diff_;
    }

private:
    void finish() {
        SparseMatrix<R> sq = diff_ * diff_;
        if (!sq.is_zero()) {
            int col = sq.entries().begin()->first.second;
            throw NotADifferential(gens_[col].id);
        }
    }

    std::vector<Generator> gens_;
    SparseMatrix<R> diff_;
    std::map<std::string, int> index_;
};

template <Ring R>
GradedComplex<R> make_complex(std::vector<Generator> gens, const std::vector<DiffEntry<R>>& entries) {
    return GradedComplex<R>::build(std::move(gens), entries);
}

// Degrees shifted up by k; differential negated for odd k.
template <Ring R>
GradedComplex<R> shift(const GradedComplex<R>& c, int k) {
    std::vector<Generator> gens = c.gens();
    for (auto& g : gens) g.degree += k;
    SparseMatrix<R> d = (k % 2 == 0) ? c.diff() : -c.diff();
    return GradedComplex<R>::from_parts(std::move(gens), std::move(d));
}

// Tensor product with the Koszul sign: d(x@y) = dx@y + (-1)^|x| x@dy.
template <Ring R>
GradedComplex<R> tensor_product(const GradedComplex<R>& c, const GradedComplex<R>& d) {
    struct Pair {
        Generator gen;
        int ci, di;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(c.size()) * d.size());
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < d.size(); ++j)
            pairs.push_back({Generator{"(" + c.gen(i).id + "*" + d.gen(j).id + ")",
                                       c.gen(i).degree + d.gen(j).degree},
                             i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.gen < b.gen; });
    std::map<std::pair<int, int>, int> pos;
    std::vector<Generator> gens;
    gens.reserve(pairs.size());
    for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
        pos.emplace(std::pair{pairs[k].ci, pairs[k].di}, k);
        gens.push_back(pairs[k].gen);
    }
    SparseMatrix<R> diff(static_cast<int>(pairs.size()), static_cast<int>(pairs.size()));
    for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
        const int ci = pairs[k].ci, di = pairs[k].di;
        for (const auto& [rc, v] : c.diff().entries()) {
            if (rc.second != ci) continue;
            diff.add_to(pos.at({rc.first, di}), k, v);
        }
        const bool even = ((c.gen(ci).degree % 2) == 0);
        for (const auto& [rc, v] : d.diff().entries()) {
            if (rc.second != di) continue;
            diff.add_to(pos.at({ci, rc.first}), k, even ? v : -v);
        }
    }
    return GradedComplex<R>::from_parts(std::move(gens), std::move(diff));
}

// Splits C along a generator subset closed under the differential:
// sub = span(kept), quotient = span(rest) with the induced differential.
template <Ring R>
struct GeneratorSplit {
    GradedComplex<R> sub, quotient;
    SparseMatrix<R> inclusion;  // C gens x sub gens
    SparseMatrix<R> projection; // quotient gens x C gens
};

template <Ring R, class Pred>
GeneratorSplit<R> split_by_generators(const GradedComplex<R>& c, Pred&& in_sub) {
    std::vector<int> sub_idx, quot_idx;
    std::vector<int> role(c.size(), -1);
    for (int i = 0; i < c.size(); ++i) {
        if (in_sub(c.gen(i))) {
            role[i] = static_cast<int>(sub_idx.size());
            sub_idx.push_back(i);
        }
    }
    std::vector<int> qrole(c.size(), -1);
    for (int i = 0; i < c.size(); ++i)
        if (role[i] < 0) {
            qrole[i] = static_cast<int>(quot_idx.size());
            quot_idx.push_back(i);
        }

    SparseMatrix<R> sub_diff(static_cast<int>(sub_idx.size()), static_cast<int>(sub_idx.size()));
    SparseMatrix<R> quot_diff(static_cast<int>(quot_idx.size()), static_cast<int>(quot_idx.size()));
    for (const auto& [rc, v] : c.diff().entries()) {
        const int to = rc.first, from = rc.second;
        if (role[from] >= 0) {
            if (role[to] < 0)
                throw ValidationError("span of " + c.gen(from).id + " is not a subcomplex: d hits " +
                                      c.gen(to).id);
            sub_diff.set(role[to], role[from], v);
        } else if (qrole[to] >= 0) {
            quot_diff.set(qrole[to], qrole[from], v);
        } // entries from quotient gens into the sub are dropped by the quotient
    }

    GeneratorSplit<R> out;
    std::vector<Generator> sub_gens, quot_gens;
    for (int i : sub_idx) sub_gens.push_back(c.gen(i));
    for (int i : quot_idx) quot_gens.push_back(c.gen(i));
    out.sub = GradedComplex<R>::from_parts(std::move(sub_gens), std::move(sub_diff));
    out.quotient = GradedComplex<R>::from_parts(std::move(quot_gens), std::move(quot_diff));
    out.inclusion = SparseMatrix<R>(c.size(), static_cast<int>(sub_idx.size()));
    for (int s = 0; s < static_cast<int>(sub_idx.size()); ++s)
        out.inclusion.set(sub_idx[s], s, R::one());
    out.projection = SparseMatrix<R>(static_cast<int>(quot_idx.size()), c.size());
    for (int q = 0; q < static_cast<int>(quot_idx.size()); ++q)
        out.projection.set(q, quot_idx[q], R::one());
    return out;
}

} // namespace floer
