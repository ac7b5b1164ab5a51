#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "floer/errors.hpp"
#include "floer/rings.hpp"
#include "floer/sparse_matrix.hpp"

namespace floer {

// Smith normal form U*M*V = D over a PID with effective division (Z, fields,
// F[t,t^-1] over a field F).  Invariant factors are unit-normalized (positive
// over Z, monic with nonzero constant term over F[t,t^-1]) and form a
// divisibility chain d1 | d2 | ...
template <Ring R>
struct SmithForm {
    SparseMatrix<R> D;
    SparseMatrix<R> U, V;
    SparseMatrix<R> U_inv, V_inv;
    std::vector<R> diagonal; // d_i for i < min(rows, cols), zeros included
    int rank = 0;            // number of nonzero invariant factors

    // Nonzero, nonunit invariant factors: the torsion part of the cokernel.
    std::vector<R> torsion() const {
        std::vector<R> t;
        for (const R& d : diagonal)
            if (!d.is_zero() && !d.is_unit()) t.push_back(d);
        return t;
    }
};

namespace detail {

template <Ring R>
struct SnfWorker {
    DenseMatrix<R> a, u, ui, v, vi;
    int m, n;

    explicit SnfWorker(const SparseMatrix<R>& mat)
        : m(mat.rows()), n(mat.cols()) {
        a = to_dense(mat);
        auto ident = [](int k) {
            DenseMatrix<R> id(k, std::vector<R>(k, R::zero()));
            for (int i = 0; i < k; ++i) id[i][i] = R::one();
            return id;
        };
        u = ident(m);
        ui = ident(m);
        v = ident(n);
        vi = ident(n);
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
        for (int k = 0; k < m; ++k) std::swap(ui[k][i], ui[k][j]);
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < m; ++k) std::swap(a[k][i], a[k][j]);
        for (int k = 0; k < n; ++k) std::swap(v[k][i], v[k][j]);
        std::swap(vi[i], vi[j]);
    }
    // row_i -= q * row_j
    void row_op(int i, int j, const R& q) {
        if (q.is_zero()) return;
        for (int k = 0; k < n; ++k) a[i][k] = a[i][k] - q * a[j][k];
        for (int k = 0; k < m; ++k) u[i][k] = u[i][k] - q * u[j][k];
        for (int k = 0; k < m; ++k) ui[k][j] = ui[k][j] + q * ui[k][i];
    }
    // col_i -= q * col_j
    void col_op(int i, int j, const R& q) {
        if (q.is_zero()) return;
        for (int k = 0; k < m; ++k) a[k][i] = a[k][i] - q * a[k][j];
        for (int k = 0; k < n; ++k) v[k][i] = v[k][i] - q * v[k][j];
        for (int k = 0; k < n; ++k) vi[j][k] = vi[j][k] + q * vi[i][k];
    }
    void scale_row(int i, const R& unit, const R& unit_inv) {
        for (int k = 0; k < n; ++k) a[i][k] = unit * a[i][k];
        for (int k = 0; k < m; ++k) u[i][k] = unit * u[i][k];
        for (int k = 0; k < m; ++k) ui[k][i] = ui[k][i] * unit_inv;
    }

    // Smallest-norm nonzero entry of the trailing submatrix, or nullopt.
    std::optional<std::pair<int, int>> find_pivot(int t) const {
        std::optional<std::pair<int, int>> best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (a[i][j].is_zero()) continue;
                if (!best || a[i][j].norm_lt(a[best->first][best->second])) best = {{i, j}};
            }
        return best;
    }

    // Clears row and column t and leaves a[t][t] dividing the whole trailing
    // submatrix.  Assumes some nonzero entry exists at or after t.
    void settle(int t) {
        for (;;) {
            auto piv = find_pivot(t);
            swap_rows(t, piv->first);
            swap_cols(t, piv->second);
            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (a[i][t].is_zero()) continue;
                auto [q, r] = a[i][t].divmod(a[t][t]);
                row_op(i, t, q);
                if (!r.is_zero()) dirty = true;
            }
            if (dirty) continue;
            for (int j = t + 1; j < n; ++j) {
                if (a[t][j].is_zero()) continue;
                auto [q, r] = a[t][j].divmod(a[t][t]);
                col_op(j, t, q);
                if (!r.is_zero()) dirty = true;
            }
            if (dirty) continue;
            // Pivot is lone; force it to divide the trailing block.
            bool divides_all = true;
            for (int i = t + 1; i < m && divides_all; ++i)
                for (int j = t + 1; j < n && divides_all; ++j) {
                    if (a[i][j].is_zero()) continue;
                    if (!a[i][j].divmod(a[t][t]).second.is_zero()) {
                        row_op(t, i, -R::one());
                        divides_all = false;
                    }
                }
            if (divides_all) return;
        }
    }

    void run() {
        const int steps = std::min(m, n);
        for (int t = 0; t < steps; ++t) {
            if (!find_pivot(t)) break;
            settle(t);
        }
        for (int i = 0; i < steps; ++i) {
            if (a[i][i].is_zero()) continue;
            auto [unit, unit_inv] = a[i][i].canonical_unit();
            scale_row(i, unit, unit_inv);
        }
    }
};

} // namespace detail

template <Ring R>
SmithForm<R> smith_normal_form(const SparseMatrix<R>& mat) {
    if (!R::has_snf) throw UnsupportedRing(ring_spec_of<R>::get().name() + " has no Smith normal form");
    detail::SnfWorker<R> w(mat);
    w.run();
    SmithForm<R> out;
    out.D = from_dense(w.a);
    out.U = from_dense(w.u);
    out.U_inv = from_dense(w.ui);
    out.V = from_dense(w.v);
    out.V_inv = from_dense(w.vi);
    const int steps = std::min(w.m, w.n);
    for (int i = 0; i < steps; ++i) {
        out.diagonal.push_back(w.a[i][i]);
        if (!w.a[i][i].is_zero()) ++out.rank;
    }
    return out;
}

template <Ring R>
int rank(const SparseMatrix<R>& mat) {
    return smith_normal_form(mat).rank;
}

// Basis of { x : M x = 0 } as a free module; empty for injective M.
template <Ring R>
std::vector<std::vector<R>> kernel_basis(const SparseMatrix<R>& mat) {
    auto snf = smith_normal_form(mat);
    std::vector<std::vector<R>> basis;
    const int steps = std::min(mat.rows(), mat.cols());
    for (int j = 0; j < mat.cols(); ++j) {
        if (j < steps && !snf.diagonal[j].is_zero()) continue;
        basis.push_back(snf.V.column(j));
    }
    return basis;
}

// Some x with M x = b when solvable over the ring (exact divisibility over Z,
// not merely rational solvability), nullopt otherwise.
template <Ring R>
std::optional<std::vector<R>> solve_linear(const SparseMatrix<R>& mat, const std::vector<R>& b) {
    if (static_cast<int>(b.size()) != mat.rows()) throw DimensionMismatch("solve_linear rhs");
    auto snf = smith_normal_form(mat);
    std::vector<R> c = snf.U.apply(b);
    const int steps = std::min(mat.rows(), mat.cols());
    std::vector<R> z(mat.cols(), R::zero());
    for (int i = 0; i < mat.rows(); ++i) {
        if (i < steps && !snf.diagonal[i].is_zero()) {
            auto [q, r] = c[i].divmod(snf.diagonal[i]);
            if (!r.is_zero()) return std::nullopt;
            z[i] = q;
        } else if (!c[i].is_zero()) {
            return std::nullopt;
        }
    }
    return snf.V.apply(z);
}

// Solvability-preserving convenience: solve against several right-hand sides.
template <Ring R>
std::optional<SparseMatrix<R>> solve_linear_columns(const SparseMatrix<R>& mat,
                                                    const SparseMatrix<R>& rhs) {
    if (rhs.rows() != mat.rows()) throw DimensionMismatch("solve_linear_columns rhs");
    SparseMatrix<R> x(mat.cols(), rhs.cols());
    auto snf = smith_normal_form(mat);
    const int steps = std::min(mat.rows(), mat.cols());
    for (int col = 0; col < rhs.cols(); ++col) {
        std::vector<R> c = snf.U.apply(rhs.column(col));
        std::vector<R> z(mat.cols(), R::zero());
        for (int i = 0; i < mat.rows(); ++i) {
            if (i < steps && !snf.diagonal[i].is_zero()) {
                auto [q, r] = c[i].divmod(snf.diagonal[i]);
                if (!r.is_zero()) return std::nullopt;
                z[i] = q;
            } else if (!c[i].is_zero()) {
                return std::nullopt;
            }
        }
        x.set_column(col, snf.V.apply(z));
    }
    return x;
}

template <Ring R>
bool is_injective(const SparseMatrix<R>& mat) {
    return kernel_basis(mat).empty();
}

// Surjective as a map of free R-modules: every invariant factor a unit and
// full row rank.
template <Ring R>
bool is_surjective(const SparseMatrix<R>& mat) {
    auto snf = smith_normal_form(mat);
    if (snf.rank != mat.rows()) return false;
    for (const R& d : snf.diagonal)
        if (!d.is_zero() && !d.is_unit()) return false;
    return true;
}

} // namespace floer
