// Bounded chain complexes of finitely generated free abelian groups, with
// exact homology via Smith normal form.
//
// Conventions fixed here and relied on by the rest of the library:
//   * boundary on C (x) D is  d(x)1 + (-1)^p 1(x)d
//   * boundary on the n-dual is (-1)^k times the transpose
//   * cone(f)_n = target_n + source_{n-1},  d(y,x) = (dy + f x, -dx)

#pragma once

#include "sapc/integers.hpp"
#include "sapc/smith.hpp"
#include "sapc/sparse_matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sapc {

struct HomologyGroup {
    int degree = 0;
    int betti = 0;
    std::vector<Int> torsion;  // invariant factors >= 2, divisibility chain

    bool isZero() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const
    {
        return degree == o.degree && betti == o.betti && torsion == o.torsion;
    }
};

class ChainComplex {
public:
    ChainComplex() : lo_(0), hi_(-1) {}

    // ranks[k] is the rank in degree lo+k; boundaries[k] maps degree lo+k to
    // degree lo+k-1 (so boundaries[0] has zero rows).
    ChainComplex(int lo, std::vector<int> ranks, std::vector<SparseMat> boundaries,
                 std::vector<std::vector<std::string>> labels = {})
        : lo_(lo), ranks_(std::move(ranks)), boundaries_(std::move(boundaries)),
          labels_(std::move(labels))
    {
        hi_ = lo_ + static_cast<int>(ranks_.size()) - 1;
        validate();
    }

    static ChainComplex zero() { return ChainComplex(); }

    // Z concentrated in a single degree.
    static ChainComplex point(int degree, const std::string& label = "pt")
    {
        return ChainComplex(degree, {1}, {SparseMat(0, 1)}, {{label}});
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }

    int rank(int n) const
    {
        if (n < lo_ || n > hi_)
            return 0;
        return ranks_[n - lo_];
    }

    int totalRank() const
    {
        int t = 0;
        for (int r : ranks_)
            t += r;
        return t;
    }

    SparseMat boundary(int n) const
    {
        if (n < lo_ || n > hi_)
            return SparseMat(rank(n - 1), rank(n));
        return boundaries_[n - lo_];
    }

    bool hasLabels() const { return !labels_.empty(); }

    const std::vector<std::string>& labels(int n) const
    {
        static const std::vector<std::string> empty;
        if (!hasLabels() || n < lo_ || n > hi_)
            return empty;
        return labels_[n - lo_];
    }

    const std::string& label(int n, int i) const { return labels(n)[i]; }

    bool operator==(const ChainComplex& o) const
    {
        if (lo_ != o.lo_ || ranks_ != o.ranks_)
            return false;
        for (int n = lo_; n <= hi_; ++n)
            if (!(boundary(n) == o.boundary(n)))
                return false;
        return true;
    }

private:
    void validate() const
    {
        if (static_cast<int>(boundaries_.size()) != static_cast<int>(ranks_.size()))
            throw std::invalid_argument("ChainComplex: boundary count mismatch");
        if (!labels_.empty()) {
            if (static_cast<int>(labels_.size()) != static_cast<int>(ranks_.size()))
                throw std::invalid_argument("ChainComplex: label rows mismatch");
            for (size_t k = 0; k < labels_.size(); ++k)
                if (static_cast<int>(labels_[k].size()) != ranks_[k])
                    throw std::invalid_argument("ChainComplex: label count mismatch");
        }
        for (int n = lo_; n <= hi_; ++n) {
            const SparseMat& d = boundaries_[n - lo_];
            int below = (n - 1 < lo_) ? 0 : ranks_[n - 1 - lo_];
            if (d.rows() != below || d.cols() != ranks_[n - lo_])
                throw std::invalid_argument("ChainComplex: boundary shape mismatch");
        }
        for (int n = lo_ + 1; n <= hi_; ++n) {
            if (!boundary(n - 1).multiply(boundary(n)).isZero())
                throw std::logic_error("ChainComplex: d*d != 0 in degree " + std::to_string(n));
        }
    }

    int lo_, hi_;
    std::vector<int> ranks_;
    std::vector<SparseMat> boundaries_;
    std::vector<std::vector<std::string>> labels_;
};

using ChainComplexPtr = std::shared_ptr<const ChainComplex>;

inline ChainComplexPtr share(ChainComplex c) { return std::make_shared<const ChainComplex>(std::move(c)); }

// A chain map of the given degree: components[n] maps source_n -> target_{n+degree},
// satisfying d f = (-1)^degree f d.
class ChainMap {
public:
    ChainMap(ChainComplexPtr source, ChainComplexPtr target, int degree,
             std::map<int, SparseMat> components)
        : source_(std::move(source)), target_(std::move(target)), degree_(degree),
          components_(std::move(components))
    {
        validate();
    }

    static ChainMap identity(const ChainComplexPtr& c)
    {
        std::map<int, SparseMat> comps;
        for (int n = c->lo(); n <= c->hi(); ++n)
            comps[n] = SparseMat::identity(c->rank(n));
        return ChainMap(c, c, 0, std::move(comps));
    }

    static ChainMap zeroMap(const ChainComplexPtr& src, const ChainComplexPtr& tgt, int degree = 0)
    {
        return ChainMap(src, tgt, degree, {});
    }

    const ChainComplex& source() const { return *source_; }
    const ChainComplex& target() const { return *target_; }
    const ChainComplexPtr& sourcePtr() const { return source_; }
    const ChainComplexPtr& targetPtr() const { return target_; }
    int degree() const { return degree_; }

    SparseMat component(int n) const
    {
        auto it = components_.find(n);
        if (it != components_.end())
            return it->second;
        return SparseMat(target_->rank(n + degree_), source_->rank(n));
    }

    ChainMap compose(const ChainMap& inner) const
    {
        // this o inner
        std::map<int, SparseMat> comps;
        for (int n = inner.source().lo(); n <= inner.source().hi(); ++n) {
            SparseMat m = component(n + inner.degree()).multiply(inner.component(n));
            if (!m.isZero())
                comps[n] = std::move(m);
        }
        return ChainMap(inner.source_, target_, degree_ + inner.degree_, std::move(comps));
    }

    ChainMap scaled(const Int& s) const
    {
        std::map<int, SparseMat> comps;
        for (const auto& [n, m] : components_)
            comps[n] = m.scaled(s);
        return ChainMap(source_, target_, degree_, std::move(comps));
    }

    ChainMap plus(const ChainMap& o) const
    {
        std::map<int, SparseMat> comps;
        for (int n = source_->lo(); n <= source_->hi(); ++n) {
            SparseMat m = component(n).plus(o.component(n));
            if (!m.isZero())
                comps[n] = std::move(m);
        }
        return ChainMap(source_, target_, degree_, std::move(comps));
    }

    bool operator==(const ChainMap& o) const
    {
        if (degree_ != o.degree_)
            return false;
        for (int n = source_->lo(); n <= source_->hi(); ++n)
            if (!(component(n) == o.component(n)))
                return false;
        return true;
    }

private:
    void validate() const
    {
        for (const auto& [n, m] : components_) {
            if (m.rows() != target_->rank(n + degree_) || m.cols() != source_->rank(n))
                throw std::invalid_argument("ChainMap: component shape mismatch at degree " +
                                            std::to_string(n));
        }
        // d_target f = (-1)^degree f d_source
        int sign = (degree_ % 2 == 0) ? 1 : -1;
        for (int n = source_->lo(); n <= source_->hi() + 1; ++n) {
            SparseMat lhs = target_->boundary(n + degree_).multiply(component(n));
            SparseMat rhs = component(n - 1).multiply(source_->boundary(n)).scaled(Int(sign));
            if (!(lhs == rhs))
                throw std::logic_error("ChainMap: not a chain map at degree " + std::to_string(n));
        }
    }

    ChainComplexPtr source_, target_;
    int degree_;
    std::map<int, SparseMat> components_;
};

// ---------------------------------------------------------------------------
// homology

inline HomologyGroup homology(const ChainComplex& c, int n)
{
    HomologyGroup h;
    h.degree = n;
    if (c.rank(n) == 0)
        return h;
    SmithResult sIn = smith(c.boundary(n + 1));
    SmithResult sOut = smith(c.boundary(n));
    h.betti = c.rank(n) - sOut.rank - sIn.rank;
    h.torsion = sIn.torsion();
    return h;
}

inline bool isAcyclic(const ChainComplex& c)
{
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (!homology(c, n).isZero())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// constructions

inline ChainComplex mappingCone(const ChainMap& f)
{
    if (f.degree() != 0)
        throw std::invalid_argument("mappingCone: degree of f must be 0");
    const ChainComplex& src = f.source();
    const ChainComplex& tgt = f.target();
    int lo = std::min(tgt.lo(), src.lo() + 1);
    int hi = std::max(tgt.hi(), src.hi() + 1);
    if (hi < lo)
        return ChainComplex::zero();

    bool withLabels = src.hasLabels() && tgt.hasLabels();
    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    for (int n = lo; n <= hi; ++n) {
        int rT = tgt.rank(n), rS = src.rank(n - 1);
        ranks.push_back(rT + rS);
        int rTb = tgt.rank(n - 1), rSb = src.rank(n - 2);
        SparseMat d(rTb + rSb, rT + rS);
        const SparseMat dT = tgt.boundary(n);
        for (int j = 0; j < rT; ++j)
            d.setColumn(j, dT.column(j));
        const SparseMat F = f.component(n - 1);
        const SparseMat dS = src.boundary(n - 1);
        for (int j = 0; j < rS; ++j) {
            SparseMat::Column col = F.column(j);
            for (const auto& [i, v] : dS.column(j))
                col.push_back({rTb + i, -v});
            d.setColumn(rT + j, std::move(col));
        }
        bnds.push_back(std::move(d));
        if (withLabels) {
            std::vector<std::string> ls;
            for (int i = 0; i < rT; ++i)
                ls.push_back("t:" + tgt.label(n, i));
            for (int i = 0; i < rS; ++i)
                ls.push_back("s:" + src.label(n - 1, i));
            labels.push_back(std::move(ls));
        }
    }
    return ChainComplex(lo, std::move(ranks), std::move(bnds), std::move(labels));
}

inline bool isQuasiIso(const ChainMap& f)
{
    if (f.degree() != 0)
        throw std::invalid_argument("isQuasiIso: degree of f must be 0");
    return isAcyclic(mappingCone(f));
}

// Quasi-isomorphism after inverting 2: cone homology is all 2-power torsion.
inline bool isQuasiIsoAwayFrom2(const ChainMap& f)
{
    ChainComplex cone = mappingCone(f);
    for (int n = cone.lo(); n <= cone.hi(); ++n) {
        HomologyGroup h = homology(cone, n);
        if (h.betti != 0)
            return false;
        for (const Int& d : h.torsion) {
            Int m = d;
            while (m % 2 == 0)
                m /= 2;
            if (m != 1)
                return false;
        }
    }
    return true;
}

inline ChainComplex tensorComplex(const ChainComplex& a, const ChainComplex& b)
{
    if (a.hi() < a.lo() || b.hi() < b.lo())
        return ChainComplex::zero();
    int lo = a.lo() + b.lo();
    int hi = a.hi() + b.hi();
    bool withLabels = a.hasLabels() && b.hasLabels();

    // Basis of degree n: blocks (p, q = n-p) with p ascending; inside a block,
    // index i*rank_b(q)+j.
    auto blockOffsets = [&](int n, std::vector<int>& ps, std::vector<int>& offs) {
        int off = 0;
        for (int p = a.lo(); p <= a.hi(); ++p) {
            int q = n - p;
            int sz = a.rank(p) * b.rank(q);
            if (sz > 0) {
                ps.push_back(p);
                offs.push_back(off);
                off += sz;
            }
        }
        offs.push_back(off);
    };

    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> ps, offs, psB, offsB;
        blockOffsets(n, ps, offs);
        blockOffsets(n - 1, psB, offsB);
        auto blockOffBelow = [&](int p) -> int {
            for (size_t k = 0; k < psB.size(); ++k)
                if (psB[k] == p)
                    return offsB[k];
            return -1;
        };
        int total = offs.empty() ? 0 : offs.back();
        int totalBelow = offsB.empty() ? 0 : offsB.back();
        SparseMat d(totalBelow, total);
        for (size_t k = 0; k < ps.size(); ++k) {
            int p = ps[k], q = n - p;
            const SparseMat dA = a.boundary(p);
            const SparseMat dB = b.boundary(q);
            int offLeft = blockOffBelow(p - 1);   // d(x) (x) y block
            int offRight = blockOffBelow(p);      // (-1)^p x (x) d(y) block
            for (int i = 0; i < a.rank(p); ++i)
                for (int j = 0; j < b.rank(q); ++j) {
                    int col = offs[k] + i * b.rank(q) + j;
                    SparseMat::Column entries;
                    if (offLeft >= 0)
                        for (const auto& [i2, v] : dA.column(i))
                            entries.push_back({offLeft + i2 * b.rank(q) + j, v});
                    if (offRight >= 0) {
                        int sgn = (p % 2 == 0) ? 1 : -1;
                        for (const auto& [j2, v] : dB.column(j))
                            entries.push_back({offRight + i * b.rank(q - 1) + j2, v * sgn});
                    }
                    std::sort(entries.begin(), entries.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    d.setColumn(col, std::move(entries));
                }
        }
        ranks.push_back(total);
        bnds.push_back(std::move(d));
        if (withLabels) {
            std::vector<std::string> ls(total);
            for (size_t k = 0; k < ps.size(); ++k) {
                int p = ps[k], q = n - p;
                for (int i = 0; i < a.rank(p); ++i)
                    for (int j = 0; j < b.rank(q); ++j)
                        ls[offs[k] + i * b.rank(q) + j] = a.label(p, i) + "|" + b.label(q, j);
            }
            labels.push_back(std::move(ls));
        }
    }
    return ChainComplex(lo, std::move(ranks), std::move(bnds), std::move(labels));
}

// Index of x (x) y inside degree p+q of the tensor complex built above.
inline int tensorBasisIndex(const ChainComplex& a, const ChainComplex& b, int p, int i, int q, int j)
{
    int n = p + q;
    int off = 0;
    for (int p2 = a.lo(); p2 < p; ++p2)
        off += a.rank(p2) * b.rank(n - p2);
    return off + i * b.rank(q) + j;
}

// Enumerate the degree-n basis of a tensor complex as (p, i, q, j) blocks.
template <typename Fn>
void forEachTensorBasis(const ChainComplex& a, const ChainComplex& b, int n, Fn&& fn)
{
    int idx = 0;
    for (int p = a.lo(); p <= a.hi(); ++p) {
        int q = n - p;
        for (int i = 0; i < a.rank(p); ++i)
            for (int j = 0; j < b.rank(q); ++j)
                fn(idx++, p, i, q, j);
    }
}

// f (x) g with the Koszul sign (-1)^{deg(g) * p} on the block in degree p of a.
inline ChainMap tensorMap(const ChainMap& f, const ChainMap& g,
                          const ChainComplexPtr& sourceTensor, const ChainComplexPtr& targetTensor)
{
    const ChainComplex& a = f.source();
    const ChainComplex& b = g.source();
    const ChainComplex& a2 = f.target();
    const ChainComplex& b2 = g.target();
    std::map<int, SparseMat> comps;
    for (int n = sourceTensor->lo(); n <= sourceTensor->hi(); ++n) {
        int m = n + f.degree() + g.degree();
        SparseMat comp(targetTensor->rank(m), sourceTensor->rank(n));
        forEachTensorBasis(a, b, n, [&](int col, int p, int i, int q, int j) {
            int sgn = ((g.degree() * p) % 2 == 0) ? 1 : -1;
            const SparseMat fm = f.component(p);
            const SparseMat gm = g.component(q);
            for (const auto& [i2, fv] : fm.column(i))
                for (const auto& [j2, gv] : gm.column(j)) {
                    int row = tensorBasisIndex(a2, b2, p + f.degree(), i2, q + g.degree(), j2);
                    comp.add(row, col, fv * gv * sgn);
                }
        });
        if (!comp.isZero())
            comps[n] = std::move(comp);
    }
    return ChainMap(sourceTensor, targetTensor, f.degree() + g.degree(), std::move(comps));
}

// The symmetry x (x) y -> (-1)^{pq} y (x) x.
inline ChainMap tensorSwapMap(const ChainComplex& a, const ChainComplex& b,
                              const ChainComplexPtr& aTensorB, const ChainComplexPtr& bTensorA)
{
    std::map<int, SparseMat> comps;
    for (int n = aTensorB->lo(); n <= aTensorB->hi(); ++n) {
        SparseMat comp(bTensorA->rank(n), aTensorB->rank(n));
        forEachTensorBasis(a, b, n, [&](int col, int p, int i, int q, int j) {
            int row = tensorBasisIndex(b, a, q, j, p, i);
            int sgn = ((p * q) % 2 == 0) ? 1 : -1;
            comp.set(row, col, Int(sgn));
        });
        if (!comp.isZero())
            comps[n] = std::move(comp);
    }
    return ChainMap(aTensorB, bTensorA, 0, std::move(comps));
}

// Canonical evaluation C -> dual(dual(C, n), n); always an isomorphism here.
inline ChainMap doubleDualEvaluation(const ChainComplexPtr& c, int n,
                                     const ChainComplexPtr& doubleDual)
{
    std::map<int, SparseMat> comps;
    for (int k = c->lo(); k <= c->hi(); ++k) {
        int sgn = (((n + 1) * k) % 2 + 2) % 2 == 0 ? 1 : -1;
        comps[k] = SparseMat::identity(c->rank(k)).scaled(Int(sgn));
    }
    return ChainMap(c, doubleDual, 0, std::move(comps));
}

inline ChainComplex dualComplex(const ChainComplex& c, int n)
{
    if (c.hi() < c.lo())
        return ChainComplex::zero();
    int lo = n - c.hi();
    int hi = n - c.lo();
    bool withLabels = c.hasLabels();
    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    for (int k = lo; k <= hi; ++k) {
        ranks.push_back(c.rank(n - k));
        // dual_k -> dual_{k-1} is (-1)^k (d_{n-k+1})^T
        SparseMat t = c.boundary(n - k + 1).transpose();
        int sgn = ((k % 2) + 2) % 2 == 0 ? 1 : -1;
        bnds.push_back(t.scaled(Int(sgn)));
        if (withLabels) {
            std::vector<std::string> ls;
            for (int i = 0; i < c.rank(n - k); ++i)
                ls.push_back("^" + c.label(n - k, i));
            labels.push_back(std::move(ls));
        }
    }
    return ChainComplex(lo, std::move(ranks), std::move(bnds), std::move(labels));
}

inline ChainComplex directSum(const ChainComplex& a, const ChainComplex& b)
{
    if (a.hi() < a.lo())
        return b;
    if (b.hi() < b.lo())
        return a;
    int lo = std::min(a.lo(), b.lo());
    int hi = std::max(a.hi(), b.hi());
    bool withLabels = a.hasLabels() && b.hasLabels();
    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    for (int n = lo; n <= hi; ++n) {
        ranks.push_back(a.rank(n) + b.rank(n));
        SparseMat d(a.rank(n - 1) + b.rank(n - 1), a.rank(n) + b.rank(n));
        const SparseMat dA = a.boundary(n);
        for (int j = 0; j < a.rank(n); ++j)
            d.setColumn(j, dA.column(j));
        const SparseMat dB = b.boundary(n);
        for (int j = 0; j < b.rank(n); ++j) {
            SparseMat::Column col = dB.column(j);
            for (auto& e : col)
                e.first += a.rank(n - 1);
            d.setColumn(a.rank(n) + j, std::move(col));
        }
        bnds.push_back(std::move(d));
        if (withLabels) {
            std::vector<std::string> ls;
            for (int i = 0; i < a.rank(n); ++i)
                ls.push_back("l:" + a.label(n, i));
            for (int i = 0; i < b.rank(n); ++i)
                ls.push_back("r:" + b.label(n, i));
            labels.push_back(std::move(ls));
        }
    }
    return ChainComplex(lo, std::move(ranks), std::move(bnds), std::move(labels));
}

// Degree shift: (shift(C,k))_n = C_{n-k}, boundary scaled by (-1)^k.
inline ChainComplex shiftComplex(const ChainComplex& c, int k)
{
    if (c.hi() < c.lo())
        return c;
    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    int sgn = ((k % 2) + 2) % 2 == 0 ? 1 : -1;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        ranks.push_back(c.rank(n));
        bnds.push_back(c.boundary(n).scaled(Int(sgn)));
        if (c.hasLabels())
            labels.push_back(c.labels(n));
    }
    return ChainComplex(c.lo() + k, std::move(ranks), std::move(bnds), std::move(labels));
}

// Subcomplex spanned by the selected basis indices (must be closed under d).
inline ChainComplex subComplexOn(const ChainComplex& c,
                                 const std::vector<std::vector<int>>& keep)
{
    // keep[n - lo] = sorted basis indices kept in degree n
    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    int lo = c.lo();
    std::vector<std::vector<int>> pos(c.hi() - c.lo() + 2);
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const auto& k = keep[n - lo];
        std::vector<int> p(c.rank(n), -1);
        for (int t = 0; t < static_cast<int>(k.size()); ++t)
            p[k[t]] = t;
        pos[n - lo] = std::move(p);
    }
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const auto& k = keep[n - lo];
        ranks.push_back(static_cast<int>(k.size()));
        int belowRank = (n == c.lo()) ? 0 : static_cast<int>(keep[n - 1 - lo].size());
        SparseMat d(belowRank, static_cast<int>(k.size()));
        const SparseMat dc = c.boundary(n);
        for (int t = 0; t < static_cast<int>(k.size()); ++t) {
            SparseMat::Column col;
            for (const auto& [i, v] : dc.column(k[t])) {
                int np = (n == c.lo()) ? -1 : pos[n - 1 - lo][i];
                if (np < 0)
                    throw std::logic_error("subComplexOn: selection not closed under boundary");
                col.push_back({np, v});
            }
            std::sort(col.begin(), col.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            d.setColumn(t, std::move(col));
        }
        bnds.push_back(std::move(d));
        if (c.hasLabels()) {
            std::vector<std::string> ls;
            for (int i : k)
                ls.push_back(c.label(n, i));
            labels.push_back(std::move(ls));
        }
    }
    return ChainComplex(lo, std::move(ranks), std::move(bnds), std::move(labels));
}

// Quotient by the span of the dropped indices (their span must be a subcomplex);
// the kept indices form the quotient basis and boundary terms into dropped
// generators are discarded.
inline ChainComplex quotientComplexOn(const ChainComplex& c,
                                      const std::vector<std::vector<int>>& keep)
{
    std::vector<int> ranks;
    std::vector<SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    int lo = c.lo();
    std::vector<std::vector<int>> pos(c.hi() - c.lo() + 2);
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const auto& k = keep[n - lo];
        std::vector<int> p(c.rank(n), -1);
        for (int t = 0; t < static_cast<int>(k.size()); ++t)
            p[k[t]] = t;
        pos[n - lo] = std::move(p);
    }
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const auto& k = keep[n - lo];
        ranks.push_back(static_cast<int>(k.size()));
        int belowRank = (n == c.lo()) ? 0 : static_cast<int>(keep[n - 1 - lo].size());
        SparseMat d(belowRank, static_cast<int>(k.size()));
        const SparseMat dc = c.boundary(n);
        for (int t = 0; t < static_cast<int>(k.size()); ++t) {
            SparseMat::Column col;
            for (const auto& [i, v] : dc.column(k[t])) {
                int np = (n == c.lo()) ? -1 : pos[n - 1 - lo][i];
                if (np >= 0)
                    col.push_back({np, v});
            }
            std::sort(col.begin(), col.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            d.setColumn(t, std::move(col));
        }
        bnds.push_back(std::move(d));
        if (c.hasLabels()) {
            std::vector<std::string> ls;
            for (int i : k)
                ls.push_back(c.label(n, i));
            labels.push_back(std::move(ls));
        }
    }
    return ChainComplex(lo, std::move(ranks), std::move(bnds), std::move(labels));
}

// ---------------------------------------------------------------------------
// Homology coordinates: presents H_n(C) as Z^z / im(W) in a saturated cycle
// basis, and expresses cycles in those coordinates. Used to realize induced
// maps on homology as integer matrices without choosing explicit generators.

class HomologyCoordinates {
public:
    HomologyCoordinates(const ChainComplex& c, int n) : degree_(n)
    {
        SparseMat dOut = c.boundary(n);
        cycleBasis_ = kernelBasis(dOut);
        cycleSmith_ = smith(cycleBasis_, true);
        int z = cycleBasis_.cols();
        SparseMat dIn = c.boundary(n + 1);
        presentation_ = SparseMat(z, dIn.cols());
        for (int j = 0; j < dIn.cols(); ++j) {
            std::vector<Int> b(dOut.cols(), Int(0));
            for (const auto& [i, v] : dIn.column(j))
                b[i] = v;
            auto y = solveWithSmith(cycleSmith_, cycleBasis_, b);
            if (!y)
                throw std::logic_error("HomologyCoordinates: boundary is not a cycle");
            for (int i = 0; i < z; ++i)
                if ((*y)[i] != 0)
                    presentation_.set(i, j, (*y)[i]);
        }
        SmithResult sp = smith(presentation_);
        group_.degree = n;
        group_.betti = z - sp.rank;
        group_.torsion = sp.torsion();
    }

    int generatorCount() const { return cycleBasis_.cols(); }
    const SparseMat& presentation() const { return presentation_; }
    const HomologyGroup& group() const { return group_; }
    int degree() const { return degree_; }

    // Coordinates of a cycle in the saturated cycle basis.
    std::vector<Int> coordinates(const std::vector<Int>& cycle) const
    {
        auto y = solveWithSmith(cycleSmith_, cycleBasis_, cycle);
        if (!y)
            throw std::logic_error("HomologyCoordinates: vector is not a cycle");
        return *y;
    }

    // The i-th saturated cycle-basis vector, as a chain.
    std::vector<Int> cycleVector(int i) const
    {
        std::vector<Int> v(cycleBasis_.rows(), Int(0));
        for (const auto& [r, val] : cycleBasis_.column(i))
            v[r] = val;
        return v;
    }

private:
    int degree_;
    SparseMat cycleBasis_;
    SmithResult cycleSmith_;
    SparseMat presentation_;
    HomologyGroup group_;
};

// The map on homology induced by a chain-level map L : C_n -> D_m (given as a
// function on chains that sends cycles to cycles and boundaries to boundaries),
// expressed against the coordinate presentations.
struct InducedMap {
    SparseMat matrix;  // generator coordinates, source -> target
    HomologyGroup source;
    HomologyGroup target;

    bool isSurjective(const HomologyCoordinates& tgt) const
    {
        SparseMat m = hconcat(matrix, tgt.presentation());
        SmithResult s = smith(m);
        if (s.rank != matrix.rows())
            return false;
        for (const Int& d : s.invariantFactors)
            if (d != 1)
                return false;
        return true;
    }

    // Isomorphism test for finitely generated abelian groups: equal invariants
    // plus surjectivity (f.g. abelian groups are Hopfian).
    bool isIsomorphism(const HomologyCoordinates& tgt) const
    {
        return source.betti == target.betti && source.torsion == target.torsion &&
               isSurjective(tgt);
    }
};

template <typename ChainFn>
InducedMap inducedMap(const HomologyCoordinates& src, const HomologyCoordinates& tgt,
                      ChainFn&& chainLevel)
{
    InducedMap out;
    out.source = src.group();
    out.target = tgt.group();
    out.matrix = SparseMat(tgt.generatorCount(), src.generatorCount());
    for (int j = 0; j < src.generatorCount(); ++j) {
        std::vector<Int> image = chainLevel(src.cycleVector(j));
        std::vector<Int> coords = tgt.coordinates(image);
        for (int i = 0; i < tgt.generatorCount(); ++i)
            if (coords[i] != 0)
                out.matrix.set(i, j, coords[i]);
    }
    return out;
}

}  // namespace sapc
