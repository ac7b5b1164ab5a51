#pragma once

#include <map>
#include <utility>
#include <vector>

#include "floer/errors.hpp"
#include "floer/rings.hpp"

namespace floer {

// Sparse matrix over R.  Only nonzero entries are stored; iteration order is
// deterministic (row-major over the entry map).
template <Ring R>
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, R::one());
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const R& value) {
        check_index(r, c);
        if (value.is_zero())
            entries_.erase({r, c});
        else
            entries_[{r, c}] = value;
    }
    void add_to(int r, int c, const R& value) {
        check_index(r, c);
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (!value.is_zero()) entries_.emplace(std::pair{r, c}, value);
        } else {
            it->second = it->second + value;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }
    R get(int r, int c) const {
        check_index(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? R::zero() : it->second;
    }
    bool is_zero() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }

    const std::map<std::pair<int, int>, R>& entries() const { return entries_; }

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch("matrix addition");
        SparseMatrix r = a;
        for (const auto& [rc, v] : b.entries_) r.add_to(rc.first, rc.second, v);
        return r;
    }
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
        return a + (-b);
    }
    SparseMatrix operator-() const {
        SparseMatrix r(rows_, cols_);
        for (const auto& [rc, v] : entries_) r.entries_.emplace(rc, -v);
        return r;
    }
    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
        // Group b's entries by row once, then expand a row-major.
        std::vector<std::vector<std::pair<int, R>>> b_rows(b.rows_);
        for (const auto& [rc, v] : b.entries_) b_rows[rc.first].emplace_back(rc.second, v);
        SparseMatrix r(a.rows_, b.cols_);
        for (const auto& [rc, va] : a.entries_)
            for (const auto& [c, vb] : b_rows[rc.second]) r.add_to(rc.first, c, va * vb);
        return r;
    }
    friend SparseMatrix operator*(const R& s, const SparseMatrix& a) {
        SparseMatrix r(a.rows_, a.cols_);
        for (const auto& [rc, v] : a.entries_) r.set(rc.first, rc.second, s * v);
        return r;
    }
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    std::vector<R> apply(const std::vector<R>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw DimensionMismatch("matrix apply");
        std::vector<R> y(rows_, R::zero());
        for (const auto& [rc, v] : entries_) {
            if (x[rc.second].is_zero()) continue;
            y[rc.first] = y[rc.first] + v * x[rc.second];
        }
        return y;
    }

    SparseMatrix transpose() const {
        SparseMatrix r(cols_, rows_);
        for (const auto& [rc, v] : entries_) r.entries_.emplace(std::pair{rc.second, rc.first}, v);
        return r;
    }

    std::vector<R> column(int c) const {
        std::vector<R> v(rows_, R::zero());
        for (const auto& [rc, val] : entries_)
            if (rc.second == c) v[rc.first] = val;
        return v;
    }
    void set_column(int c, const std::vector<R>& v) {
        if (static_cast<int>(v.size()) != rows_) throw DimensionMismatch("set_column");
        for (int r = 0; r < rows_; ++r) set(r, c, v[r]);
    }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw DimensionMismatch("index out of range");
    }

    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, R> entries_;
};

// Dense working representation used inside the elimination kernels.
template <Ring R>
using DenseMatrix = std::vector<std::vector<R>>;

template <Ring R>
DenseMatrix<R> to_dense(const SparseMatrix<R>& m) {
    DenseMatrix<R> d(m.rows(), std::vector<R>(m.cols(), R::zero()));
    for (const auto& [rc, v] : m.entries()) d[rc.first][rc.second] = v;
    return d;
}

template <Ring R>
SparseMatrix<R> from_dense(const DenseMatrix<R>& d) {
    int rows = static_cast<int>(d.size());
    int cols = rows ? static_cast<int>(d[0].size()) : 0;
    SparseMatrix<R> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (!d[i][j].is_zero()) m.set(i, j, d[i][j]);
    return m;
}

} // namespace floer
