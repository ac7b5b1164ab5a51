#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floer/complex.hpp"
#include "floer/errors.hpp"
#include "floer/rings.hpp"
#include "floer/snf.hpp"
#include "floer/sparse_matrix.hpp"

namespace floer {

enum class MapSign { Commute, Anticommute };

// Degree-homogeneous linear map between complexes.  Rows of `matrix` are
// indexed by target generators, columns by source generators.  The chain-map
// condition d.f = (+/-) f.d is checked by is_chain_map, not by construction,
// so the same type also carries homotopies and other raw graded maps.
template <Ring R>
struct ChainMap {
    GradedComplex<R> source, target;
    int degree = 0;
    MapSign sign = MapSign::Commute;
    SparseMatrix<R> matrix;

    ChainMap() : matrix(0, 0) {}
    ChainMap(GradedComplex<R> src, GradedComplex<R> tgt, int deg, MapSign sgn)
        : source(std::move(src)), target(std::move(tgt)), degree(deg), sign(sgn),
          matrix(target.size(), source.size()) {}

    void set_entry(const std::string& from, const std::string& to, const R& coeff) {
        int j = source.index_of(from), i = target.index_of(to);
        if (target.gen(i).degree != source.gen(j).degree + degree)
            throw DegreeViolation(from + " -> " + to + " in degree " + std::to_string(degree) + " map");
        matrix.add_to(i, j, coeff);
    }

    std::vector<R> apply(const std::vector<R>& x) const { return matrix.apply(x); }
};

template <Ring R>
ChainMap<R> identity_map(const GradedComplex<R>& c) {
    ChainMap<R> f(c, c, 0, MapSign::Commute);
    f.matrix = SparseMatrix<R>::identity(c.size());
    return f;
}

template <Ring R>
ChainMap<R> zero_map(const GradedComplex<R>& src, const GradedComplex<R>& tgt, int degree,
                     MapSign sign = MapSign::Commute) {
    return ChainMap<R>(src, tgt, degree, sign);
}

// d_target . f - (+/-) f . d_source; zero exactly when f is a chain map.
template <Ring R>
SparseMatrix<R> chain_map_defect(const ChainMap<R>& f) {
    SparseMatrix<R> lhs = f.target.diff() * f.matrix;
    SparseMatrix<R> rhs = f.matrix * f.source.diff();
    return f.sign == MapSign::Commute ? lhs - rhs : lhs + rhs;
}

template <Ring R>
struct ChainMapCheck {
    bool ok = true;
    std::string witness; // a source generator where the defect is nonzero
};

template <Ring R>
ChainMapCheck<R> is_chain_map(const ChainMap<R>& f) {
    SparseMatrix<R> defect = chain_map_defect(f);
    if (defect.is_zero()) return {};
    int col = defect.entries().begin()->first.second;
    return {false, f.source.gen(col).id};
}

template <Ring R>
void require_chain_map(const ChainMap<R>& f) {
    auto check = is_chain_map(f);
    if (!check.ok) throw NotChainMap(check.witness);
}

template <Ring R>
ChainMap<R> compose(const ChainMap<R>& g, const ChainMap<R>& f) {
    if (!(g.source == f.target)) throw DimensionMismatch("compose: inner complexes differ");
    MapSign sign = (g.sign == f.sign) ? MapSign::Commute
                                      : MapSign::Anticommute;
    ChainMap<R> h(f.source, g.target, f.degree + g.degree, sign);
    h.matrix = g.matrix * f.matrix;
    return h;
}

template <Ring R>
ChainMap<R> map_sum(const ChainMap<R>& f, const ChainMap<R>& g) {
    if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
        throw DimensionMismatch("map_sum of incompatible maps");
    ChainMap<R> h = f;
    h.matrix = f.matrix + g.matrix;
    return h;
}

template <Ring R>
ChainMap<R> map_negate(const ChainMap<R>& f) {
    ChainMap<R> h = f;
    h.matrix = -f.matrix;
    return h;
}

// Standard mapping cone of a commuting chain map f of degree d:
// target-part generators keep their degrees, source-part generators move to
// degree + d + 1, and d(b, a) = (db + f a, -da).
template <Ring R>
GradedComplex<R> mapping_cone(const ChainMap<R>& f) {
    if (f.sign != MapSign::Commute) throw NotChainMap("mapping cone needs a commuting map");
    require_chain_map(f);

    std::vector<Generator> gens;
    std::vector<DiffEntry<R>> entries;
    auto tgt_id = [](const std::string& id) { return "t:" + id; };
    auto src_id = [](const std::string& id) { return "s:" + id; };

    for (const auto& g : f.target.gens()) gens.push_back({tgt_id(g.id), g.degree});
    for (const auto& g : f.source.gens()) gens.push_back({src_id(g.id), g.degree + f.degree + 1});

    for (const auto& [rc, v] : f.target.diff().entries())
        entries.push_back({tgt_id(f.target.gen(rc.second).id), tgt_id(f.target.gen(rc.first).id), v});
    for (const auto& [rc, v] : f.source.diff().entries())
        entries.push_back({src_id(f.source.gen(rc.second).id), src_id(f.source.gen(rc.first).id), -v});
    for (const auto& [rc, v] : f.matrix.entries())
        entries.push_back({src_id(f.source.gen(rc.second).id), tgt_id(f.target.gen(rc.first).id), v});

    return make_complex(std::move(gens), entries);
}

// Searches for H with d.H + H.d = f - g, one degree above f.  Returns nullopt
// when the maps are not chain homotopic over the ring (this is an exact
// linear solve, integral over Z).
template <Ring R>
std::optional<ChainMap<R>> find_chain_homotopy(const ChainMap<R>& f, const ChainMap<R>& g) {
    if (!(f.source == g.source) || !(f.target == g.target) || f.degree != g.degree)
        throw DimensionMismatch("homotopy between incompatible maps");
    const auto& src = f.source;
    const auto& tgt = f.target;
    const int hdeg = f.degree + 1;

    // Unknowns: entries H[i][j] with deg(target i) = deg(source j) + hdeg.
    std::map<std::pair<int, int>, int> unknown;
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < tgt.size(); ++i)
        for (int j = 0; j < src.size(); ++j)
            if (tgt.gen(i).degree == src.gen(j).degree + hdeg) {
                unknown.emplace(std::pair{i, j}, static_cast<int>(slots.size()));
                slots.emplace_back(i, j);
            }

    // Equations: one per degree-matching pair (p, q) of the f - g grading.
    std::vector<std::pair<int, int>> eqs;
    std::map<std::pair<int, int>, int> eq_index;
    for (int p = 0; p < tgt.size(); ++p)
        for (int q = 0; q < src.size(); ++q)
            if (tgt.gen(p).degree == src.gen(q).degree + f.degree) {
                eq_index.emplace(std::pair{p, q}, static_cast<int>(eqs.size()));
                eqs.emplace_back(p, q);
            }

    SparseMatrix<R> sys(static_cast<int>(eqs.size()), static_cast<int>(slots.size()));
    // (d_tgt . H)[p][q] picks up d_tgt[p][i] * H[i][q].
    for (const auto& [rc, v] : tgt.diff().entries()) {
        for (int q = 0; q < src.size(); ++q) {
            auto u = unknown.find({rc.second, q});
            if (u == unknown.end()) continue;
            auto e = eq_index.find({rc.first, q});
            if (e == eq_index.end()) continue;
            sys.add_to(e->second, u->second, v);
        }
    }
    // (H . d_src)[p][q] picks up H[p][j] * d_src[j][q].
    for (const auto& [rc, v] : src.diff().entries()) {
        for (int p = 0; p < tgt.size(); ++p) {
            auto u = unknown.find({p, rc.first});
            if (u == unknown.end()) continue;
            auto e = eq_index.find({p, rc.second});
            if (e == eq_index.end()) continue;
            sys.add_to(e->second, u->second, v);
        }
    }

    SparseMatrix<R> rhs_mat = f.matrix - g.matrix;
    std::vector<R> rhs(eqs.size(), R::zero());
    for (const auto& [rc, v] : rhs_mat.entries()) {
        auto e = eq_index.find({rc.first, rc.second});
        if (e == eq_index.end())
            throw DegreeViolation("f - g has an entry off its own degree");
        rhs[e->second] = v;
    }

    auto sol = solve_linear(sys, rhs);
    if (!sol) return std::nullopt;
    ChainMap<R> h(src, tgt, hdeg, MapSign::Commute);
    for (int s = 0; s < static_cast<int>(slots.size()); ++s)
        h.matrix.set(slots[s].first, slots[s].second, (*sol)[s]);
    return h;
}

// d.H + H.d as a map with the grading of f; used to verify homotopies.
template <Ring R>
SparseMatrix<R> homotopy_boundary(const ChainMap<R>& h) {
    return h.target.diff() * h.matrix + h.matrix * h.source.diff();
}

} // namespace floer
