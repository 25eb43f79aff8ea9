// Sparse integer matrices.
//
// Storage is column-major triples, kept sorted by row within each column.
// Boundary matrices of triangulations are >95% sparse; dense scratch rows
// are used only inside small kernels.

#pragma once

#include "sapc/integers.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sapc {

class SparseMat {
public:
    // (row, value) pairs per column, sorted by row, values nonzero.
    using Column = std::vector<std::pair<int, Int>>;

    SparseMat() : rows_(0), cols_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols)
    {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("SparseMat: negative shape");
    }

    static SparseMat identity(int n)
    {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i)
            m.columns_[i].push_back({i, Int(1)});
        return m;
    }

    static SparseMat fromDense(const std::vector<std::vector<Int>>& d)
    {
        int r = static_cast<int>(d.size());
        int c = r == 0 ? 0 : static_cast<int>(d[0].size());
        SparseMat m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(d[i].size()) != c)
                throw std::invalid_argument("fromDense: ragged rows");
            for (int j = 0; j < c; ++j)
                if (d[i][j] != 0)
                    m.columns_[j].push_back({i, d[i][j]});
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Column& column(int j) const { return columns_[j]; }

    long long nonzeroCount() const
    {
        long long n = 0;
        for (const auto& c : columns_)
            n += static_cast<long long>(c.size());
        return n;
    }

    bool isZero() const
    {
        for (const auto& c : columns_)
            if (!c.empty())
                return false;
        return true;
    }

    Int at(int i, int j) const
    {
        const Column& c = columns_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, Int>& e, int r) { return e.first < r; });
        if (it != c.end() && it->first == i)
            return it->second;
        return Int(0);
    }

    void set(int i, int j, const Int& v)
    {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        Column& c = columns_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, Int>& e, int r) { return e.first < r; });
        if (it != c.end() && it->first == i) {
            if (v == 0)
                c.erase(it);
            else
                it->second = v;
        } else if (v != 0) {
            c.insert(it, {i, v});
        }
    }

    void add(int i, int j, const Int& v)
    {
        if (v == 0)
            return;
        Column& c = columns_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i,
                                   [](const std::pair<int, Int>& e, int r) { return e.first < r; });
        if (it != c.end() && it->first == i) {
            it->second += v;
            if (it->second == 0)
                c.erase(it);
        } else {
            c.insert(it, {i, v});
        }
    }

    void setColumn(int j, Column col)
    {
        columns_[j] = std::move(col);
    }

    SparseMat transpose() const
    {
        SparseMat t(cols_, rows_);
        for (int j = 0; j < cols_; ++j)
            for (const auto& [i, v] : columns_[j])
                t.columns_[i].push_back({j, v});
        // columns were visited in increasing j, so each row list is sorted
        return t;
    }

    // y = this * x for a sparse vector x given as a column.
    Column applyToColumn(const Column& x) const
    {
        std::vector<Int> acc;
        std::vector<int> touched;
        acc.assign(rows_, Int(0));
        for (const auto& [j, xv] : x) {
            for (const auto& [i, v] : columns_[j]) {
                touched.push_back(i);
                acc[i] += v * xv;
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        Column y;
        for (int i : touched)
            if (acc[i] != 0)
                y.push_back({i, acc[i]});
        return y;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const
    {
        assert(static_cast<int>(x.size()) == cols_);
        std::vector<Int> y(rows_, Int(0));
        for (int j = 0; j < cols_; ++j) {
            if (x[j] == 0)
                continue;
            for (const auto& [i, v] : columns_[j])
                y[i] += v * x[j];
        }
        return y;
    }

    SparseMat multiply(const SparseMat& b) const
    {
        if (cols_ != b.rows_)
            throw std::invalid_argument("SparseMat::multiply: shape mismatch");
        SparseMat out(rows_, b.cols_);
        for (int j = 0; j < b.cols_; ++j)
            out.columns_[j] = applyToColumn(b.columns_[j]);
        return out;
    }

    SparseMat scaled(const Int& s) const
    {
        SparseMat out(rows_, cols_);
        if (s == 0)
            return out;
        for (int j = 0; j < cols_; ++j) {
            out.columns_[j] = columns_[j];
            for (auto& e : out.columns_[j])
                e.second *= s;
        }
        return out;
    }

    SparseMat plus(const SparseMat& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("SparseMat::plus: shape mismatch");
        SparseMat out(rows_, cols_);
        for (int j = 0; j < cols_; ++j)
            out.columns_[j] = mergeColumns(columns_[j], b.columns_[j], Int(1));
        return out;
    }

    SparseMat minus(const SparseMat& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("SparseMat::minus: shape mismatch");
        SparseMat out(rows_, cols_);
        for (int j = 0; j < cols_; ++j)
            out.columns_[j] = mergeColumns(columns_[j], b.columns_[j], Int(-1));
        return out;
    }

    bool operator==(const SparseMat& b) const
    {
        return rows_ == b.rows_ && cols_ == b.cols_ && columns_ == b.columns_;
    }

    // Kronecker product with row index i*b.rows+i', column index j*b.cols+j'.
    SparseMat kronecker(const SparseMat& b) const
    {
        SparseMat out(rows_ * b.rows_, cols_ * b.cols_);
        for (int j = 0; j < cols_; ++j)
            for (int jb = 0; jb < b.cols_; ++jb) {
                Column& c = out.columns_[j * b.cols_ + jb];
                for (const auto& [i, v] : columns_[j])
                    for (const auto& [ib, vb] : b.columns_[jb])
                        c.push_back({i * b.rows_ + ib, v * vb});
                std::sort(c.begin(), c.end(),
                          [](const auto& a2, const auto& b2) { return a2.first < b2.first; });
            }
        return out;
    }

    // Sub-matrix on the given row/column index lists (in their given order).
    SparseMat submatrix(const std::vector<int>& rowIdx, const std::vector<int>& colIdx) const
    {
        std::vector<int> rowPos(rows_, -1);
        for (int k = 0; k < static_cast<int>(rowIdx.size()); ++k)
            rowPos[rowIdx[k]] = k;
        SparseMat out(static_cast<int>(rowIdx.size()), static_cast<int>(colIdx.size()));
        for (int k = 0; k < static_cast<int>(colIdx.size()); ++k) {
            Column c;
            for (const auto& [i, v] : columns_[colIdx[k]])
                if (rowPos[i] >= 0)
                    c.push_back({rowPos[i], v});
            std::sort(c.begin(), c.end(),
                      [](const auto& a2, const auto& b2) { return a2.first < b2.first; });
            out.columns_[k] = std::move(c);
        }
        return out;
    }

    std::vector<std::vector<Int>> toDense() const
    {
        std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, Int(0)));
        for (int j = 0; j < cols_; ++j)
            for (const auto& [i, v] : columns_[j])
                d[i][j] = v;
        return d;
    }

    static Column mergeColumns(const Column& a, const Column& b, const Int& scaleB)
    {
        Column out;
        out.reserve(a.size() + b.size());
        size_t p = 0, q = 0;
        while (p < a.size() || q < b.size()) {
            if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
                out.push_back(a[p++]);
            } else if (p == a.size() || b[q].first < a[p].first) {
                Int v = b[q].second * scaleB;
                if (v != 0)
                    out.push_back({b[q].first, v});
                ++q;
            } else {
                Int v = a[p].second + b[q].second * scaleB;
                if (v != 0)
                    out.push_back({a[p].first, v});
                ++p;
                ++q;
            }
        }
        return out;
    }

private:
    int rows_, cols_;
    std::vector<Column> columns_;
};

// Horizontal concatenation [a | b].
inline SparseMat hconcat(const SparseMat& a, const SparseMat& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hconcat: row mismatch");
    SparseMat out(a.rows(), a.cols() + b.cols());
    for (int j = 0; j < a.cols(); ++j)
        out.setColumn(j, a.column(j));
    for (int j = 0; j < b.cols(); ++j)
        out.setColumn(a.cols() + j, b.column(j));
    return out;
}

// Block-diagonal concatenation diag(a, b).
inline SparseMat blockDiag(const SparseMat& a, const SparseMat& b)
{
    SparseMat out(a.rows() + b.rows(), a.cols() + b.cols());
    for (int j = 0; j < a.cols(); ++j)
        out.setColumn(j, a.column(j));
    for (int j = 0; j < b.cols(); ++j) {
        SparseMat::Column c = b.column(j);
        for (auto& e : c)
            e.first += a.rows();
        out.setColumn(a.cols() + j, std::move(c));
    }
    return out;
}

// Vertical stack [a ; b].
inline SparseMat vconcat(const SparseMat& a, const SparseMat& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vconcat: column mismatch");
    SparseMat out(a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        SparseMat::Column c = a.column(j);
        for (const auto& e : b.column(j))
            c.push_back({e.first + a.rows(), e.second});
        out.setColumn(j, std::move(c));
    }
    return out;
}

}  // namespace sapc
