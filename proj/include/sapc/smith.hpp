// Smith normal form over the integers, with optional unimodular transforms.
//
// Fraction-free elimination; pivots chosen by minimal absolute value with a
// Markowitz fill tie-break. Arbitrary-precision entries throughout.

#pragma once

#include "sapc/integers.hpp"
#include "sapc/sparse_matrix.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace sapc {

// When enabled, every smith() call re-multiplies U*A*V and compares with S,
// and checks unimodularity of small transforms. Tests switch this on.
inline bool& smithVerificationEnabled()
{
    static bool enabled = false;
    return enabled;
}

struct SmithResult {
    // Invariant factors d1 | d2 | ... | dr, all positive.
    std::vector<Int> invariantFactors;
    int rank = 0;
    int rows = 0;
    int cols = 0;
    // Present when transforms were requested: U*A*V = diag(invariantFactors).
    std::optional<SparseMat> U;
    std::optional<SparseMat> V;

    // Torsion coefficients (invariant factors > 1).
    std::vector<Int> torsion() const
    {
        std::vector<Int> t;
        for (const Int& d : invariantFactors)
            if (d > 1)
                t.push_back(d);
        return t;
    }

    SparseMat diagonalMatrix() const
    {
        SparseMat s(rows, cols);
        for (int i = 0; i < rank; ++i)
            s.set(i, i, invariantFactors[i]);
        return s;
    }
};

namespace detail {

// Working form: rows as sorted maps col -> value, plus a column-to-rows index.
class SmithWorker {
public:
    SmithWorker(const SparseMat& a, bool wantTransforms)
        : m_(a.rows()), n_(a.cols()), rows_(a.rows()), colRows_(a.cols()),
          track_(wantTransforms)
    {
        for (int j = 0; j < n_; ++j)
            for (const auto& [i, v] : a.column(j)) {
                rows_[i][j] = v;
                colRows_[j].insert(i);
            }
        if (track_) {
            uRows_.resize(m_);
            for (int i = 0; i < m_; ++i)
                uRows_[i][i] = 1;
            vCols_.resize(n_);
            for (int j = 0; j < n_; ++j)
                vCols_[j][j] = 1;
        }
    }

    SmithResult run()
    {
        std::vector<bool> rowDone(m_, false), colDone(n_, false);
        std::vector<std::pair<int, int>> pivots;

        while (true) {
            auto p = selectPivot(rowDone, colDone);
            if (!p)
                break;
            auto [pi, pj] = *p;

            // Alternate clearing the pivot column and row; a nonzero remainder
            // becomes the new (strictly smaller) pivot, so this terminates.
            while (true) {
                // Clear column pj using row operations.
                while (true) {
                    int other = -1;
                    for (int r : colRows_[pj])
                        if (r != pi && !rowDone[r]) {
                            other = r;
                            break;
                        }
                    if (other < 0)
                        break;
                    Int q = floorDiv(at(other, pj), at(pi, pj));
                    if (q != 0)
                        rowAxpy(other, pi, -q);
                    if (rows_[other].count(pj))
                        pi = other;
                }
                // Clear row pi using column operations (does not touch col pj).
                while (true) {
                    int other = -1;
                    for (const auto& [c, v] : rows_[pi])
                        if (c != pj && !colDone[c]) {
                            other = c;
                            break;
                        }
                    if (other < 0)
                        break;
                    Int q = floorDiv(at(pi, other), at(pi, pj));
                    if (q != 0)
                        colAxpy(other, pj, -q);
                    if (rows_[pi].count(other))
                        pj = other;
                }
                // If the pivot moved to a new column it may be dirty again.
                bool columnClear = true;
                for (int r : colRows_[pj])
                    if (r != pi && !rowDone[r]) {
                        columnClear = false;
                        break;
                    }
                if (columnClear)
                    break;
            }

            rowDone[pi] = true;
            colDone[pj] = true;
            pivots.push_back({pi, pj});
        }


        SmithResult res;
        res.rows = m_;
        res.cols = n_;
        res.rank = static_cast<int>(pivots.size());

        std::vector<Int> diag(res.rank);
        for (int t = 0; t < res.rank; ++t)
            diag[t] = at(pivots[t].first, pivots[t].second);

        // Positive diagonal (sign change is a row operation on U).
        for (int t = 0; t < res.rank; ++t)
            if (diag[t] < 0) {
                diag[t] = -diag[t];
                setEntry(pivots[t].first, pivots[t].second, diag[t]);
                if (track_)
                    for (auto& [c, v] : uRows_[pivots[t].first])
                        v = -v;
            }

        // Enforce the divisibility chain d1 | d2 | ...
        enforceDivisibility(diag, pivots);
        res.invariantFactors = diag;


        if (track_) {
            // Re-index so pivot t sits at (t, t); fold the permutation into U, V.
            std::vector<int> rowPerm(m_, -1), colPerm(n_, -1);
            for (int t = 0; t < res.rank; ++t) {
                rowPerm[pivots[t].first] = t;
                colPerm[pivots[t].second] = t;
            }
            int nextR = res.rank, nextC = res.rank;
            for (int i = 0; i < m_; ++i)
                if (rowPerm[i] < 0)
                    rowPerm[i] = nextR++;
            for (int j = 0; j < n_; ++j)
                if (colPerm[j] < 0)
                    colPerm[j] = nextC++;

            SparseMat u(m_, m_), v(n_, n_);
            for (int i = 0; i < m_; ++i)
                for (const auto& [c, val] : uRows_[i])
                    u.set(rowPerm[i], c, val);
            for (int j = 0; j < n_; ++j)
                for (const auto& [r, val] : vCols_[j])
                    v.set(r, colPerm[j], val);
            res.U = std::move(u);
            res.V = std::move(v);
        }
        return res;
    }

private:
    std::optional<std::pair<int, int>> selectPivot(const std::vector<bool>& rowDone,
                                                   const std::vector<bool>& colDone)
    {
        std::optional<std::pair<int, int>> best;
        Int bestVal;
        long long bestFill = 0;
        for (int i = 0; i < m_; ++i) {
            if (rowDone[i])
                continue;
            for (const auto& [j, v] : rows_[i]) {
                if (colDone[j])
                    continue;
                Int a = absInt(v);
                long long fill = (static_cast<long long>(rows_[i].size()) - 1) *
                                 (static_cast<long long>(colRows_[j].size()) - 1);
                if (!best || a < bestVal || (a == bestVal && fill < bestFill)) {
                    best = {i, j};
                    bestVal = a;
                    bestFill = fill;
                    if (bestVal == 1 && bestFill == 0)
                        return best;
                }
            }
        }
        return best;
    }

    void setEntry(int i, int j, const Int& v)
    {
        auto it = rows_[i].find(j);
        if (v == 0) {
            if (it != rows_[i].end()) {
                rows_[i].erase(it);
                colRows_[j].erase(i);
            }
        } else {
            if (it == rows_[i].end()) {
                rows_[i][j] = v;
                colRows_[j].insert(i);
            } else {
                it->second = v;
            }
        }
    }

    // row_dst += s * row_src
    void rowAxpy(int dst, int src, const Int& s)
    {
        for (const auto& [j, v] : rows_[src]) {
            Int nv = at(dst, j) + s * v;
            setEntry(dst, j, nv);
        }
        if (track_)
            for (const auto& [j, v] : uRows_[src]) {
                Int nv = uAt(dst, j) + s * v;
                if (nv == 0)
                    uRows_[dst].erase(j);
                else
                    uRows_[dst][j] = nv;
            }
    }

    // col_dst += s * col_src
    void colAxpy(int dst, int src, const Int& s)
    {
        std::vector<int> srcRows(colRows_[src].begin(), colRows_[src].end());
        for (int i : srcRows) {
            Int nv = at(i, dst) + s * at(i, src);
            setEntry(i, dst, nv);
        }
        if (track_)
            for (const auto& [r, v] : vCols_[src]) {
                Int nv = vAt(dst, r) + s * v;
                if (nv == 0)
                    vCols_[dst].erase(r);
                else
                    vCols_[dst][r] = nv;
            }
    }

    Int at(int i, int j) const
    {
        auto it = rows_[i].find(j);
        return it == rows_[i].end() ? Int(0) : it->second;
    }
    Int uAt(int i, int j) const
    {
        auto it = uRows_[i].find(j);
        return it == uRows_[i].end() ? Int(0) : it->second;
    }
    Int vAt(int j, int r) const
    {
        auto it = vCols_[j].find(r);
        return it == vCols_[j].end() ? Int(0) : it->second;
    }

    // Pairwise gcd/lcm folding on the diagonal, with transform tracking.
    void enforceDivisibility(std::vector<Int>& diag, std::vector<std::pair<int, int>>& pivots)
    {
        int r = static_cast<int>(diag.size());
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i + 1 < r; ++i)
                for (int j = i + 1; j < r; ++j) {
                    if (diag[j] % diag[i] == 0)
                        continue;
                    changed = true;
                    Int a = diag[i], b = diag[j];
                    Int x, y;
                    Int g = extendedGcd(a, b, x, y);
                    Int l = (a / g) * b;
                    if (track_) {
                        auto [ri, ci] = pivots[i];
                        auto [rj, cj] = pivots[j];
                        // [a 0; 0 b] --row_i += row_j--> [a b; 0 b]
                        rowAxpy(ri, rj, Int(1));
                        // Unimodular column mix: (ci, cj) <- (x*ci + y*cj,
                        // (-b/g)*ci + (a/g)*cj); det = (ax + by)/g = 1.
                        applyColumnMix(ci, cj, x, y, -b / g, a / g);
                        // Now entry (ri,ci) = g, (rj,ci) = y*b, (rj,cj) = l.
                        Int residue = at(rj, ci);
                        if (residue != 0)
                            rowAxpy(rj, ri, -residue / g);
                    }
                    diag[i] = g;
                    diag[j] = l;
                }
        }
        // Keep invariant factors sorted by divisibility (they are after folding,
        // but equal factors may be out of numeric order).
        for (int i = 0; i + 1 < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (diag[j] < diag[i]) {
                    std::swap(diag[i], diag[j]);
                    if (track_) {
                        std::swap(pivots[i], pivots[j]);
                    }
                }
    }

    // (col_a, col_b) <- (p*col_a + q*col_b, s*col_a + t*col_b), p*t - q*s = +-1.
    void applyColumnMix(int ca, int cb, const Int& p, const Int& q, const Int& s, const Int& t)
    {
        std::set<int> touched(colRows_[ca].begin(), colRows_[ca].end());
        touched.insert(colRows_[cb].begin(), colRows_[cb].end());
        for (int i : touched) {
            Int va = at(i, ca), vb = at(i, cb);
            setEntry(i, ca, p * va + q * vb);
            setEntry(i, cb, s * va + t * vb);
        }
        if (track_) {
            std::map<int, Int> na, nb;
            std::set<int> vt;
            for (const auto& [rIdx, v] : vCols_[ca])
                vt.insert(rIdx);
            for (const auto& [rIdx, v] : vCols_[cb])
                vt.insert(rIdx);
            for (int rIdx : vt) {
                Int va = vAt(ca, rIdx), vb = vAt(cb, rIdx);
                Int a2 = p * va + q * vb;
                Int b2 = s * va + t * vb;
                if (a2 != 0)
                    na[rIdx] = a2;
                if (b2 != 0)
                    nb[rIdx] = b2;
            }
            vCols_[ca] = std::move(na);
            vCols_[cb] = std::move(nb);
        }
    }


    int m_, n_;
    std::vector<std::map<int, Int>> rows_;
    std::vector<std::set<int>> colRows_;
    bool track_;
    std::vector<std::map<int, Int>> uRows_;  // U as rows
    std::vector<std::map<int, Int>> vCols_;  // V as columns
};

}  // namespace detail

// Determinant by fraction-free Bareiss elimination (dense; small matrices).
inline Int determinant(const SparseMat& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: not square");
    int n = a.rows();
    if (n == 0)
        return Int(1);
    auto d = a.toDense();
    Int sign(1), prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (d[k][k] == 0) {
            int swapRow = -1;
            for (int i = k + 1; i < n; ++i)
                if (d[i][k] != 0) {
                    swapRow = i;
                    break;
                }
            if (swapRow < 0)
                return Int(0);
            std::swap(d[k], d[swapRow]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                d[i][j] = (d[i][j] * d[k][k] - d[i][k] * d[k][j]) / prev;
        prev = d[k][k];
    }
    return sign * d[n - 1][n - 1];
}

inline SmithResult smith(const SparseMat& a, bool wantTransforms = false)
{
    detail::SmithWorker worker(a, wantTransforms);
    SmithResult res = worker.run();
    if (smithVerificationEnabled() && wantTransforms) {
        SparseMat uav = res.U->multiply(a).multiply(*res.V);
        if (!(uav == res.diagonalMatrix()))
            throw std::logic_error("smith: U*A*V != S");
        if (res.rows <= 256 && absInt(determinant(*res.U)) != 1)
            throw std::logic_error("smith: U not unimodular");
        if (res.cols <= 256 && absInt(determinant(*res.V)) != 1)
            throw std::logic_error("smith: V not unimodular");
    }
    return res;
}

inline int rankOf(const SparseMat& a) { return smith(a, false).rank; }

// Solve A x = b exactly over the integers, given transforms for A.
inline std::optional<std::vector<Int>> solveWithSmith(const SmithResult& s, const SparseMat& a,
                                                      const std::vector<Int>& b)
{
    if (!s.U || !s.V)
        throw std::invalid_argument("solveWithSmith: transforms missing");
    std::vector<Int> y = s.U->apply(b);
    std::vector<Int> x(s.cols, Int(0));
    for (int i = 0; i < s.rows; ++i) {
        if (i < s.rank) {
            if (y[i] % s.invariantFactors[i] != 0)
                return std::nullopt;
            x[i] = y[i] / s.invariantFactors[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> result = s.V->apply(x);
    (void)a;
    return result;
}

// Saturated basis of ker(A): the V-columns paired with zero diagonal entries.
inline SparseMat kernelBasis(const SparseMat& a)
{
    SmithResult s = smith(a, true);
    SparseMat k(a.cols(), a.cols() - s.rank);
    for (int j = s.rank; j < a.cols(); ++j)
        k.setColumn(j - s.rank, s.V->column(j));
    return k;
}

}  // namespace sapc
