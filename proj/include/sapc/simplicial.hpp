// Finite ordered triangulations: face-closed complexes, oriented manifolds,
// fundamental cycles, staircase products, barycentric subdivision, and the
// finite lattice of open-star unions that stands in for the open sets.

#pragma once

#include "sapc/chain_complex.hpp"
#include "sapc/errors.hpp"

#include <json.hpp>  // vendored nlohmann/json

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sapc {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Bitsets over simplex ids

class Bitset {
public:
    Bitset() : n_(0) {}
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= (std::uint64_t(1) << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    int count() const
    {
        int c = 0;
        for (std::uint64_t x : w_)
            c += __builtin_popcountll(x);
        return c;
    }

    bool none() const
    {
        for (std::uint64_t x : w_)
            if (x)
                return false;
        return true;
    }

    Bitset operator|(const Bitset& o) const
    {
        Bitset r(n_);
        for (size_t k = 0; k < w_.size(); ++k)
            r.w_[k] = w_[k] | o.w_[k];
        return r;
    }
    Bitset operator&(const Bitset& o) const
    {
        Bitset r(n_);
        for (size_t k = 0; k < w_.size(); ++k)
            r.w_[k] = w_[k] & o.w_[k];
        return r;
    }
    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const Bitset& o) const { return w_ < o.w_; }

    bool isSubsetOf(const Bitset& o) const
    {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k])
                return false;
        return true;
    }

    template <typename Fn>
    void forEach(Fn&& fn) const
    {
        for (size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                int b = __builtin_ctzll(x);
                fn(static_cast<int>(k * 64 + b));
                x &= x - 1;
            }
        }
    }

private:
    int n_;
    std::vector<std::uint64_t> w_;
};

// ---------------------------------------------------------------------------
// SimplicialComplex

class SimplicialComplex {
public:
    SimplicialComplex() : vertexCount_(0) {}

    // Close the generating simplices under faces. Vertex tuples are sorted;
    // repeated vertices are rejected.
    static SimplicialComplex closureOf(int vertexCount, const std::vector<std::vector<int>>& gens)
    {
        SimplicialComplex sc;
        sc.vertexCount_ = vertexCount;
        std::set<std::vector<int>> all;
        for (auto g : gens) {
            std::sort(g.begin(), g.end());
            if (g.empty())
                throw NotClosedUnderFaces("empty simplex");
            for (size_t i = 0; i + 1 < g.size(); ++i)
                if (g[i] == g[i + 1])
                    throw NotClosedUnderFaces("repeated vertex in simplex");
            if (g.front() < 0 || g.back() >= vertexCount)
                throw SchemaError("/top_simplices", "vertex index out of range");
            int k = static_cast<int>(g.size());
            for (int mask = 1; mask < (1 << k); ++mask) {
                std::vector<int> face;
                for (int i = 0; i < k; ++i)
                    if (mask & (1 << i))
                        face.push_back(g[i]);
                all.insert(face);
            }
        }
        sc.build(all);
        return sc;
    }

    int vertexCount() const { return vertexCount_; }
    int dim() const { return static_cast<int>(byDim_.size()) - 1; }
    int simplexCount() const { return static_cast<int>(tuples_.size()); }
    int countInDim(int d) const
    {
        if (d < 0 || d > dim())
            return 0;
        return static_cast<int>(byDim_[d].size());
    }
    int sidAt(int d, int i) const { return byDim_[d][i]; }
    int dimOf(int sid) const { return static_cast<int>(tuples_[sid].size()) - 1; }
    int indexInDim(int sid) const { return posInDim_[sid]; }
    const std::vector<int>& vertices(int sid) const { return tuples_[sid]; }

    int sidOf(const std::vector<int>& sortedTuple) const
    {
        auto it = index_.find(sortedTuple);
        return it == index_.end() ? -1 : it->second;
    }

    const std::vector<int>& facetsOf(int sid) const { return facets_[sid]; }
    const std::vector<int>& cofacetsOf(int sid) const { return cofacets_[sid]; }
    // All faces of sid including itself, as sids.
    const std::vector<int>& allFacesOf(int sid) const { return allFaces_[sid]; }

    std::string labelOf(int sid) const
    {
        std::string s;
        for (size_t i = 0; i < tuples_[sid].size(); ++i) {
            if (i)
                s += ".";
            s += std::to_string(tuples_[sid][i]);
        }
        return s;
    }

    // Open star of sid: all cofaces (including sid), an up-closed set.
    Bitset star(int sid) const
    {
        Bitset b(simplexCount());
        std::deque<int> q{sid};
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            if (b.test(s))
                continue;
            b.set(s);
            for (int c : cofacets_[s])
                q.push_back(c);
        }
        return b;
    }

    Bitset fullSet() const
    {
        Bitset b(simplexCount());
        for (int s = 0; s < simplexCount(); ++s)
            b.set(s);
        return b;
    }

    bool isUpClosed(const Bitset& b) const
    {
        for (int s = 0; s < simplexCount(); ++s)
            if (b.test(s))
                for (int c : cofacets_[s])
                    if (!b.test(c))
                        return false;
        return true;
    }

    // closure(sid) contained in the set?
    bool closedSimplexInside(int sid, const Bitset& b) const
    {
        for (int f : allFaces_[sid])
            if (!b.test(f))
                return false;
        return true;
    }

    // Largest subcomplex whose closed simplices all lie in the up-set.
    Bitset maxClosedSubcomplexIn(const Bitset& upset) const
    {
        Bitset out(simplexCount());
        for (int s = 0; s < simplexCount(); ++s) {
            // sids are ordered by dimension, so facets are already decided
            if (!upset.test(s))
                continue;
            bool ok = true;
            for (int f : facets_[s])
                if (!out.test(f)) {
                    ok = false;
                    break;
                }
            if (ok)
                out.set(s);
        }
        return out;
    }

    // Chain complex of ordered simplicial chains, basis ordered like sids.
    ChainComplex chains() const
    {
        if (simplexCount() == 0)
            return ChainComplex::zero();
        std::vector<int> ranks;
        std::vector<SparseMat> bnds;
        std::vector<std::vector<std::string>> labels;
        for (int d = 0; d <= dim(); ++d) {
            ranks.push_back(countInDim(d));
            SparseMat m(countInDim(d - 1), countInDim(d));
            for (int i = 0; i < countInDim(d); ++i) {
                int sid = sidAt(d, i);
                const auto& t = tuples_[sid];
                for (int omit = 0; omit <= d && d > 0; ++omit) {
                    std::vector<int> face;
                    for (int k = 0; k <= d; ++k)
                        if (k != omit)
                            face.push_back(t[k]);
                    int fs = sidOf(face);
                    m.add(posInDim_[fs], i, Int((omit % 2 == 0) ? 1 : -1));
                }
            }
            bnds.push_back(std::move(m));
            std::vector<std::string> ls;
            for (int i = 0; i < countInDim(d); ++i)
                ls.push_back(labelOf(sidAt(d, i)));
            labels.push_back(std::move(ls));
        }
        return ChainComplex(0, std::move(ranks), std::move(bnds), std::move(labels));
    }

    // Subcomplex on a down-closed sid set, keeping vertex numbering.
    SimplicialComplex restrictedTo(const Bitset& downClosed) const
    {
        std::vector<std::vector<int>> gens;
        downClosed.forEach([&](int sid) { gens.push_back(tuples_[sid]); });
        if (gens.empty())
            return SimplicialComplex();
        return closureOf(vertexCount_, gens);
    }

    bool operator==(const SimplicialComplex& o) const
    {
        return vertexCount_ == o.vertexCount_ && tuples_ == o.tuples_;
    }

private:
    void build(const std::set<std::vector<int>>& all)
    {
        int maxDim = 0;
        for (const auto& s : all)
            maxDim = std::max(maxDim, static_cast<int>(s.size()) - 1);
        byDim_.assign(maxDim + 1, {});
        // sids ordered by (dim, lex)
        std::vector<std::vector<std::vector<int>>> grouped(maxDim + 1);
        for (const auto& s : all)
            grouped[s.size() - 1].push_back(s);
        for (auto& g : grouped)
            std::sort(g.begin(), g.end());
        for (int d = 0; d <= maxDim; ++d)
            for (auto& t : grouped[d]) {
                int sid = static_cast<int>(tuples_.size());
                index_[t] = sid;
                byDim_[d].push_back(sid);
                posInDim_.push_back(static_cast<int>(byDim_[d].size()) - 1);
                tuples_.push_back(t);
            }
        facets_.assign(tuples_.size(), {});
        cofacets_.assign(tuples_.size(), {});
        allFaces_.assign(tuples_.size(), {});
        for (int sid = 0; sid < simplexCount(); ++sid) {
            const auto& t = tuples_[sid];
            int d = static_cast<int>(t.size()) - 1;
            if (d > 0)
                for (int omit = 0; omit <= d; ++omit) {
                    std::vector<int> face;
                    for (int k = 0; k <= d; ++k)
                        if (k != omit)
                            face.push_back(t[k]);
                    int fs = sidOf(face);
                    facets_[sid].push_back(fs);
                    cofacets_[fs].push_back(sid);
                }
            int k = d + 1;
            for (int mask = 1; mask < (1 << k); ++mask) {
                std::vector<int> face;
                for (int i = 0; i < k; ++i)
                    if (mask & (1 << i))
                        face.push_back(t[i]);
                allFaces_[sid].push_back(sidOf(face));
            }
            std::sort(allFaces_[sid].begin(), allFaces_[sid].end());
        }
    }

    int vertexCount_;
    std::vector<std::vector<int>> tuples_;
    std::vector<std::vector<int>> byDim_;
    std::vector<int> posInDim_;
    std::map<std::vector<int>, int> index_;
    std::vector<std::vector<int>> facets_;
    std::vector<std::vector<int>> cofacets_;
    std::vector<std::vector<int>> allFaces_;
};

// ---------------------------------------------------------------------------
// Simplicial maps (vertex maps whose simplex images are simplices)

class SimplicialMap {
public:
    SimplicialMap(std::shared_ptr<const SimplicialComplex> source,
                  std::shared_ptr<const SimplicialComplex> target, std::vector<int> vertexImage)
        : src_(std::move(source)), tgt_(std::move(target)), vertexImage_(std::move(vertexImage))
    {
        if (static_cast<int>(vertexImage_.size()) != src_->vertexCount())
            throw NotSimplicial("vertex image has wrong length");
        imageSid_.assign(src_->simplexCount(), -1);
        degenerate_.assign(src_->simplexCount(), false);
        for (int sid = 0; sid < src_->simplexCount(); ++sid) {
            std::vector<int> img;
            for (int v : src_->vertices(sid))
                img.push_back(vertexImage_[v]);
            std::sort(img.begin(), img.end());
            degenerate_[sid] = std::adjacent_find(img.begin(), img.end()) != img.end();
            img.erase(std::unique(img.begin(), img.end()), img.end());
            int t = tgt_->sidOf(img);
            if (t < 0)
                throw NotSimplicial("image of a simplex is not a simplex of the target");
            imageSid_[sid] = t;
        }
    }

    const SimplicialComplex& source() const { return *src_; }
    const SimplicialComplex& target() const { return *tgt_; }
    const std::shared_ptr<const SimplicialComplex>& sourcePtr() const { return src_; }
    const std::shared_ptr<const SimplicialComplex>& targetPtr() const { return tgt_; }
    int vertexImage(int v) const { return vertexImage_[v]; }

    // sid of the image simplex (vertex duplicates collapsed).
    int imageSid(int sid) const { return imageSid_[sid]; }
    bool isDegenerate(int sid) const { return degenerate_[sid]; }

    // Preimage of an up-closed target set: { s : image(s) in U }, up-closed.
    Bitset preimage(const Bitset& targetUpset) const
    {
        Bitset b(src_->simplexCount());
        for (int s = 0; s < src_->simplexCount(); ++s)
            if (targetUpset.test(imageSid_[s]))
                b.set(s);
        return b;
    }

    static SimplicialMap identityOn(const std::shared_ptr<const SimplicialComplex>& c)
    {
        std::vector<int> id(c->vertexCount());
        for (int v = 0; v < c->vertexCount(); ++v)
            id[v] = v;
        return SimplicialMap(c, c, std::move(id));
    }

    SimplicialMap composeWith(const SimplicialMap& inner) const
    {
        // this o inner
        std::vector<int> img(inner.source().vertexCount());
        for (int v = 0; v < inner.source().vertexCount(); ++v)
            img[v] = vertexImage_[inner.vertexImage(v)];
        return SimplicialMap(inner.src_, tgt_, std::move(img));
    }

private:
    std::shared_ptr<const SimplicialComplex> src_, tgt_;
    std::vector<int> vertexImage_;
    std::vector<int> imageSid_;
    std::vector<bool> degenerate_;
};

// ---------------------------------------------------------------------------
// Oriented manifolds

class OrientedManifoldComplex {
public:
    // Signs indexed like base.sidAt(n, i). boundary faces allowed only when
    // allowBoundary is set; orientation invariants are always verified.
    OrientedManifoldComplex(SimplicialComplex base, int n, std::vector<int> orientationSigns,
                            bool allowBoundary)
        : base_(std::make_shared<const SimplicialComplex>(std::move(base))), n_(n),
          signs_(std::move(orientationSigns))
    {
        verifyAndExtractBoundary(allowBoundary);
    }

    const SimplicialComplex& base() const { return *base_; }
    const std::shared_ptr<const SimplicialComplex>& basePtr() const { return base_; }
    int dimension() const { return n_; }
    int topCount() const { return base_->countInDim(n_); }
    int sign(int i) const { return signs_[i]; }
    const std::vector<int>& signs() const { return signs_; }

    bool hasBoundary() const { return !boundarySids_.none(); }
    const Bitset& boundarySet() const { return boundarySids_; }  // down-closed
    const SimplicialComplex& boundaryComplex() const { return boundary_; }

    OrientedManifoldComplex reversed() const
    {
        std::vector<int> s = signs_;
        for (int& x : s)
            x = -x;
        return OrientedManifoldComplex(*base_, n_, std::move(s), hasBoundary());
    }

    // Signed sum of top simplices, as a degree-n chain vector.
    std::vector<Int> fundamentalCycle() const
    {
        std::vector<Int> w(base_->countInDim(n_), Int(0));
        for (int i = 0; i < topCount(); ++i)
            w[i] = signs_[i];
        return w;
    }

    // Induced orientation signs on the boundary complex's top simplices.
    std::vector<int> inducedBoundarySigns(const SimplicialComplex& bd) const
    {
        std::vector<int> out(bd.countInDim(n_ - 1), 0);
        for (int i = 0; i < topCount(); ++i) {
            int sid = base_->sidAt(n_, i);
            const auto& t = base_->vertices(sid);
            for (int omit = 0; omit <= n_; ++omit) {
                std::vector<int> face;
                for (int k = 0; k <= n_; ++k)
                    if (k != omit)
                        face.push_back(t[k]);
                int fsid = base_->sidOf(face);
                if (!boundarySids_.test(fsid))
                    continue;
                int bsid = bd.sidOf(face);
                out[bd.indexInDim(bsid)] = signs_[i] * ((omit % 2 == 0) ? 1 : -1);
            }
        }
        return out;
    }

private:
    void verifyAndExtractBoundary(bool allowBoundary)
    {
        if (base_->dim() != n_)
            throw NonManifoldLink("formal dimension does not match the complex");
        if (static_cast<int>(signs_.size()) != base_->countInDim(n_))
            throw InconsistentOrientation("orientation sign count mismatch");
        for (int s : signs_)
            if (s != 1 && s != -1)
                throw InconsistentOrientation("orientation signs must be +-1");

        Bitset bd(base_->simplexCount());
        for (int i = 0; i < base_->countInDim(n_ - 1); ++i) {
            int fsid = base_->sidAt(n_ - 1, i);
            const auto& cof = base_->cofacetsOf(fsid);
            if (cof.size() > 2)
                throw NonManifoldLink("codimension-1 simplex in more than two top simplices");
            if (cof.size() == 1) {
                if (!allowBoundary)
                    throw NonManifoldLink("codimension-1 simplex in a single top simplex");
                bd.set(fsid);
            } else if (cof.size() == 2) {
                // induced orientations must cancel
                int total = 0;
                for (int top : cof) {
                    const auto& t = base_->vertices(top);
                    const auto& f = base_->vertices(fsid);
                    int omit = -1;
                    for (int k = 0, fi = 0; k <= n_; ++k) {
                        if (fi < n_ && t[k] == f[fi])
                            ++fi;
                        else
                            omit = k;
                    }
                    total += signs_[base_->indexInDim(top)] * ((omit % 2 == 0) ? 1 : -1);
                }
                if (total != 0)
                    throw InconsistentOrientation(
                        "induced orientations do not cancel on an interior face");
            } else {
                throw NonManifoldLink("codimension-1 simplex in no top simplex");
            }
        }
        // close the boundary set downward
        Bitset closed(base_->simplexCount());
        bd.forEach([&](int sid) {
            for (int f : base_->allFacesOf(sid))
                closed.set(f);
        });
        boundarySids_ = closed;
        if (!closed.none())
            boundary_ = base_->restrictedTo(closed);
    }

    std::shared_ptr<const SimplicialComplex> base_;
    int n_;
    std::vector<int> signs_;
    Bitset boundarySids_;
    SimplicialComplex boundary_;
};

// Greedy orientation propagation across codimension-1 faces. Throws
// InconsistentOrientation if no consistent assignment exists (e.g. RP2).
inline std::vector<int> propagateOrientation(const SimplicialComplex& sc, int n)
{
    int tops = sc.countInDim(n);
    std::vector<int> signs(tops, 0);
    for (int start = 0; start < tops; ++start) {
        if (signs[start])
            continue;
        signs[start] = 1;
        std::deque<int> q{start};
        while (!q.empty()) {
            int i = q.front();
            q.pop_front();
            int sid = sc.sidAt(n, i);
            const auto& t = sc.vertices(sid);
            for (int omit = 0; omit <= n; ++omit) {
                std::vector<int> face;
                for (int k = 0; k <= n; ++k)
                    if (k != omit)
                        face.push_back(t[k]);
                int fsid = sc.sidOf(face);
                for (int top2 : sc.cofacetsOf(fsid)) {
                    if (top2 == sid)
                        continue;
                    const auto& t2 = sc.vertices(top2);
                    int omit2 = -1;
                    for (int k = 0, fi = 0; k <= n; ++k) {
                        if (fi < n && t2[k] == face[fi])
                            ++fi;
                        else
                            omit2 = k;
                    }
                    int need = -signs[i] * ((omit % 2 == 0) ? 1 : -1) * ((omit2 % 2 == 0) ? 1 : -1);
                    int j = sc.indexInDim(top2);
                    if (signs[j] == 0) {
                        signs[j] = need;
                        q.push_back(j);
                    } else if (signs[j] != need) {
                        throw InconsistentOrientation("orientation propagation found an odd cycle");
                    }
                }
            }
        }
    }
    return signs;
}

// ---------------------------------------------------------------------------
// Triangulation documents (JSON schema of the external interface)

struct TriangulationDocument {
    std::string name;
    int vertices = 0;
    std::vector<std::vector<int>> topSimplices;
    std::vector<int> orientationSigns;  // empty = absent
    bool boundaryMarked = false;
};

inline TriangulationDocument parseTriangulationDocument(const Json& j)
{
    TriangulationDocument doc;
    if (!j.is_object())
        throw SchemaError("", "document must be an object");
    if (!j.contains("name") || !j["name"].is_string())
        throw SchemaError("/name", "required string");
    doc.name = j["name"].get<std::string>();
    if (!j.contains("vertices") || !j["vertices"].is_number_integer())
        throw SchemaError("/vertices", "required integer");
    doc.vertices = j["vertices"].get<int>();
    if (doc.vertices <= 0)
        throw SchemaError("/vertices", "must be positive");
    if (!j.contains("top_simplices") || !j["top_simplices"].is_array() || j["top_simplices"].empty())
        throw SchemaError("/top_simplices", "required nonempty array");
    int k = 0;
    for (const auto& row : j["top_simplices"]) {
        std::string base = "/top_simplices/" + std::to_string(k);
        if (!row.is_array() || row.empty())
            throw SchemaError(base, "must be a nonempty array");
        std::vector<int> t;
        int c = 0;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw SchemaError(base + "/" + std::to_string(c), "must be an integer");
            int vi = v.get<int>();
            if (vi < 0 || vi >= doc.vertices)
                throw SchemaError(base + "/" + std::to_string(c), "vertex index out of range");
            t.push_back(vi);
            ++c;
        }
        doc.topSimplices.push_back(std::move(t));
        ++k;
    }
    if (j.contains("orientation_signs")) {
        if (!j["orientation_signs"].is_array() ||
            j["orientation_signs"].size() != j["top_simplices"].size())
            throw SchemaError("/orientation_signs", "must match top_simplices length");
        int i = 0;
        for (const auto& v : j["orientation_signs"]) {
            if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
                throw SchemaError("/orientation_signs/" + std::to_string(i), "must be +-1");
            doc.orientationSigns.push_back(v.get<int>());
            ++i;
        }
    }
    if (j.contains("boundary_marked")) {
        if (!j["boundary_marked"].is_boolean())
            throw SchemaError("/boundary_marked", "must be a boolean");
        doc.boundaryMarked = j["boundary_marked"].get<bool>();
    }
    return doc;
}

inline TriangulationDocument loadTriangulationDocument(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SapcError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return parseTriangulationDocument(j);
}

// The top simplices of a document, face-closed; no manifold checking.
inline SimplicialComplex complexOfDocument(const TriangulationDocument& doc)
{
    return SimplicialComplex::closureOf(doc.vertices, doc.topSimplices);
}

// Build the oriented manifold: face closure, manifold link conditions,
// orientation verification (or propagation when signs are absent), boundary
// subcomplex extraction.
inline OrientedManifoldComplex loadComplex(const TriangulationDocument& doc)
{
    SimplicialComplex sc = complexOfDocument(doc);
    int n = sc.dim();
    for (const auto& t : doc.topSimplices)
        if (static_cast<int>(t.size()) != n + 1)
            throw NonManifoldLink("top simplices must all have the same dimension");
    std::vector<int> signs;
    if (!doc.orientationSigns.empty()) {
        // reorder the given signs to the complex's sid order
        signs.assign(sc.countInDim(n), 0);
        for (size_t i = 0; i < doc.topSimplices.size(); ++i) {
            std::vector<int> t = doc.topSimplices[i];
            std::sort(t.begin(), t.end());
            int sid = sc.sidOf(t);
            signs[sc.indexInDim(sid)] = doc.orientationSigns[i];
        }
    } else {
        signs = propagateOrientation(sc, n);
    }
    return OrientedManifoldComplex(std::move(sc), n, std::move(signs), doc.boundaryMarked);
}

inline OrientedManifoldComplex loadComplexFile(const std::string& path)
{
    return loadComplex(loadTriangulationDocument(path));
}

inline ChainComplex chainComplexOf(const SimplicialComplex& sc) { return sc.chains(); }

// ---------------------------------------------------------------------------
// Staircase (shuffle) product triangulation

namespace detail {

inline int shuffleSign(const std::vector<int>& word)
{
    // word of 0s (advance first factor) and 1s (advance second); parity of
    // the number of pairs (1 before 0)
    int inv = 0, ones = 0;
    for (int c : word) {
        if (c == 1)
            ++ones;
        else
            inv += ones;
    }
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

// Product of oriented manifolds, triangulated by monotone staircases in each
// cell sigma x tau; orientation = shuffle parity times the product of signs.
inline OrientedManifoldComplex productComplex(const OrientedManifoldComplex& x,
                                              const OrientedManifoldComplex& y)
{
    const SimplicialComplex& a = x.base();
    const SimplicialComplex& b = y.base();
    int wy = b.vertexCount();
    auto vid = [&](int va, int vb) { return va * wy + vb; };
    int m = x.dimension(), l = y.dimension();

    std::vector<std::vector<int>> tops;
    std::vector<int> signs;
    for (int i = 0; i < x.topCount(); ++i)
        for (int j = 0; j < y.topCount(); ++j) {
            const auto& s = a.vertices(a.sidAt(m, i));
            const auto& t = b.vertices(b.sidAt(l, j));
            // enumerate monotone words with m zeros and l ones
            std::vector<int> word(m + l, 0);
            for (int k = m; k < m + l; ++k)
                word[k] = 1;
            std::sort(word.begin(), word.end());
            do {
                std::vector<int> tup;
                int ai = 0, bi = 0;
                tup.push_back(vid(s[0], t[0]));
                for (int c : word) {
                    if (c == 0)
                        ++ai;
                    else
                        ++bi;
                    tup.push_back(vid(s[ai], t[bi]));
                }
                tops.push_back(tup);
                signs.push_back(detail::shuffleSign(word) * x.sign(i) * y.sign(j));
            } while (std::next_permutation(word.begin(), word.end()));
        }

    SimplicialComplex prod =
        SimplicialComplex::closureOf(a.vertexCount() * wy, tops);
    std::vector<int> ordered(prod.countInDim(m + l), 0);
    for (size_t k = 0; k < tops.size(); ++k) {
        std::vector<int> t = tops[k];
        std::sort(t.begin(), t.end());
        int sid = prod.sidOf(t);
        ordered[prod.indexInDim(sid)] = signs[k];
    }
    bool withBoundary = x.hasBoundary() || y.hasBoundary();
    return OrientedManifoldComplex(std::move(prod), m + l, std::move(ordered), withBoundary);
}

// ---------------------------------------------------------------------------
// Barycentric subdivision (vertices = simplices of the base, ordered by sid)

inline OrientedManifoldComplex barycentricSubdivide(const OrientedManifoldComplex& mfd)
{
    const SimplicialComplex& sc = mfd.base();
    int n = mfd.dimension();
    std::vector<std::vector<int>> tops;
    std::vector<int> signs;

    // flags sid0 < sid1 < ... < sidn with dim(sid_k) = k, sid_n a top simplex
    std::vector<int> flag;
    std::function<void(int, int)> extend = [&](int topIdx, int sid) {
        flag.push_back(sid);
        if (sc.dimOf(sid) == 0) {
            // complete flag: compute permutation sign of vertex-addition order
            std::vector<int> order;  // vertices from smallest face up
            std::vector<int> prev;
            for (auto it = flag.rbegin(); it != flag.rend(); ++it) {
                for (int v : sc.vertices(*it))
                    if (std::find(prev.begin(), prev.end(), v) == prev.end())
                        order.push_back(v);
                prev = sc.vertices(*it);
            }
            // order lists vertices as added going up the flag
            int inv = 0;
            for (size_t p = 0; p < order.size(); ++p)
                for (size_t q = p + 1; q < order.size(); ++q)
                    if (order[p] > order[q])
                        ++inv;
            std::vector<int> tup(flag.rbegin(), flag.rend());
            tops.push_back(tup);
            signs.push_back(mfd.sign(topIdx) * (inv % 2 == 0 ? 1 : -1));
        } else {
            for (int f : sc.facetsOf(sid))
                extend(topIdx, f);
        }
        flag.pop_back();
    };
    for (int i = 0; i < mfd.topCount(); ++i)
        extend(i, sc.sidAt(n, i));

    SimplicialComplex sd = SimplicialComplex::closureOf(sc.simplexCount(), tops);
    std::vector<int> ordered(sd.countInDim(n), 0);
    for (size_t k = 0; k < tops.size(); ++k) {
        std::vector<int> t = tops[k];
        std::sort(t.begin(), t.end());
        ordered[sd.indexInDim(sd.sidOf(t))] = signs[k];
    }
    return OrientedManifoldComplex(std::move(sd), n, std::move(ordered), mfd.hasBoundary());
}

// ---------------------------------------------------------------------------
// Open star families

class OpenFamily {
public:
    // Enumerates all unions of the seed stars (deduplicated), plus the empty
    // set and the whole space. Throws PosetTooLarge when the lattice exceeds
    // maxOpens.
    OpenFamily(std::shared_ptr<const SimplicialComplex> complex, const std::vector<int>& seedSids,
               std::size_t maxOpens = 20000)
        : sc_(std::move(complex)), seeds_(seedSids)
    {
        for (int s : seeds_)
            if (s < 0 || s >= sc_->simplexCount())
                throw UnknownSimplex("seed simplex not in complex");
        std::vector<Bitset> stars;
        for (int s : seeds_)
            stars.push_back(sc_->star(s));

        std::map<Bitset, int> seen;
        auto insert = [&](const Bitset& b) -> int {
            auto it = seen.find(b);
            if (it != seen.end())
                return it->second;
            int id = static_cast<int>(opens_.size());
            if (opens_.size() >= maxOpens)
                throw PosetTooLarge("open-star lattice exceeds the poset cap");
            seen[b] = id;
            opens_.push_back(b);
            return id;
        };

        emptyId_ = insert(Bitset(sc_->simplexCount()));
        // breadth-first closure under union with single stars
        std::deque<int> queue{emptyId_};
        while (!queue.empty()) {
            int id = queue.front();
            queue.pop_front();
            for (const Bitset& st : stars) {
                Bitset u = opens_[id] | st;
                std::size_t before = opens_.size();
                int nid = insert(u);
                if (opens_.size() != before)
                    queue.push_back(nid);
            }
        }
        totalId_ = insert(sc_->fullSet());
        index_ = std::move(seen);
    }

    const SimplicialComplex& complex() const { return *sc_; }
    const std::shared_ptr<const SimplicialComplex>& complexPtr() const { return sc_; }
    int size() const { return static_cast<int>(opens_.size()); }
    const Bitset& open(int id) const { return opens_[id]; }
    int emptyId() const { return emptyId_; }
    int totalId() const { return totalId_; }
    const std::vector<int>& seeds() const { return seeds_; }

    int idOf(const Bitset& b) const
    {
        auto it = index_.find(b);
        return it == index_.end() ? -1 : it->second;
    }

    // Smallest enumerated open containing the closure of sid; with vertex
    // seeds this is the union of the vertex stars of sid.
    Bitset smallestOpenContaining(int sid) const
    {
        if (sid < 0 || sid >= sc_->simplexCount())
            throw UnknownSimplex("simplex not in complex");
        Bitset acc = sc_->fullSet();
        bool found = false;
        for (const Bitset& u : opens_) {
            if (sc_->closedSimplexInside(sid, u)) {
                acc = acc & u;
                found = true;
            }
        }
        if (!found)
            throw UnknownSimplex("no open contains the closed simplex");
        return acc;
    }

    Bitset maxClosedSubcomplexIn(const Bitset& u) const { return sc_->maxClosedSubcomplexIn(u); }

private:
    std::shared_ptr<const SimplicialComplex> sc_;
    std::vector<int> seeds_;
    std::vector<Bitset> opens_;
    std::map<Bitset, int> index_;
    int emptyId_ = -1, totalId_ = -1;
};

// Star family seeded on all vertices (the default `stars` family).
inline OpenFamily vertexStarFamily(const std::shared_ptr<const SimplicialComplex>& sc,
                                   std::size_t maxOpens = 20000)
{
    std::vector<int> seeds;
    for (int i = 0; i < sc->countInDim(0); ++i)
        seeds.push_back(sc->sidAt(0, i));
    return OpenFamily(sc, seeds, maxOpens);
}

inline OpenFamily openStarFamily(const std::shared_ptr<const SimplicialComplex>& sc,
                                 const std::vector<std::vector<int>>& seedTuples,
                                 std::size_t maxOpens = 20000)
{
    std::vector<int> seeds;
    for (auto t : seedTuples) {
        std::sort(t.begin(), t.end());
        int sid = sc->sidOf(t);
        if (sid < 0)
            throw UnknownSimplex("seed simplex not in complex");
        seeds.push_back(sid);
    }
    return OpenFamily(sc, seeds, maxOpens);
}

}  // namespace sapc
