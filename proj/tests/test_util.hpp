// Shared test helpers: an independent simplicial-chains builder used as an
// oracle against the production code paths, and tiny fixtures.

#pragma once

#include "sapc/chain_complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace testutil {

inline std::string tupleLabel(const std::vector<int>& t)
{
    std::string s;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ".";
        s += std::to_string(t[i]);
    }
    return s;
}

// Build ordered simplicial chains from a facet list (faces closed here),
// independently of the production simplicial module.
inline sapc::ChainComplex simplicialChains(const std::vector<std::vector<int>>& facets)
{
    std::set<std::vector<int>> simplices;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        int k = static_cast<int>(f.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> face;
            for (int i = 0; i < k; ++i)
                if (mask & (1 << i))
                    face.push_back(f[i]);
            simplices.insert(face);
        }
    }
    int dim = 0;
    for (const auto& s : simplices)
        dim = std::max(dim, static_cast<int>(s.size()) - 1);
    std::vector<std::vector<std::vector<int>>> byDim(dim + 1);
    for (const auto& s : simplices)
        byDim[s.size() - 1].push_back(s);
    for (auto& v : byDim)
        std::sort(v.begin(), v.end());

    std::vector<int> ranks;
    std::vector<sapc::SparseMat> bnds;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::map<std::vector<int>, int>> index(dim + 1);
    for (int d = 0; d <= dim; ++d)
        for (int i = 0; i < static_cast<int>(byDim[d].size()); ++i)
            index[d][byDim[d][i]] = i;
    for (int d = 0; d <= dim; ++d) {
        int below = d == 0 ? 0 : static_cast<int>(byDim[d - 1].size());
        sapc::SparseMat m(below, static_cast<int>(byDim[d].size()));
        for (int j = 0; j < static_cast<int>(byDim[d].size()); ++j) {
            const auto& s = byDim[d][j];
            for (int i = 0; i <= d && d > 0; ++i) {
                std::vector<int> face = s;
                face.erase(face.begin() + i);
                m.set(index[d - 1][face], j, sapc::Int((i % 2 == 0) ? 1 : -1));
            }
        }
        ranks.push_back(static_cast<int>(byDim[d].size()));
        bnds.push_back(std::move(m));
        std::vector<std::string> ls;
        for (const auto& s : byDim[d])
            ls.push_back(tupleLabel(s));
        labels.push_back(std::move(ls));
    }
    return sapc::ChainComplex(0, std::move(ranks), std::move(bnds), std::move(labels));
}

inline std::vector<std::vector<int>> boundaryOfSimplexFacets(int nVertices)
{
    std::vector<std::vector<int>> facets;
    for (int omit = 0; omit < nVertices; ++omit) {
        std::vector<int> f;
        for (int v = 0; v < nVertices; ++v)
            if (v != omit)
                f.push_back(v);
        facets.push_back(f);
    }
    return facets;
}

inline std::vector<std::vector<int>> rp2Facets()
{
    return {{0, 1, 2}, {0, 1, 3}, {0, 2, 5}, {0, 3, 4}, {0, 4, 5},
            {1, 2, 4}, {1, 3, 5}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
}

inline std::vector<std::vector<int>> torus7Facets()
{
    std::set<std::vector<int>> t;
    for (int i = 0; i < 7; ++i) {
        std::vector<int> a = {i, (i + 1) % 7, (i + 3) % 7};
        std::vector<int> b = {i, (i + 2) % 7, (i + 3) % 7};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        t.insert(a);
        t.insert(b);
    }
    return {t.begin(), t.end()};
}

inline std::string corpusDir()
{
    if (const char* env = std::getenv("SAPC_CORPUS_DIR"))
        return env;
#ifdef SAPC_CORPUS_DIR_FALLBACK
    return SAPC_CORPUS_DIR_FALLBACK;
#else
    return "data";
#endif
}

}  // namespace testutil
