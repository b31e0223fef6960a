#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"

namespace hypercert {

/// A connected vertex set of size <= K; canonical form is the sorted vertex list.
struct KSubset {
    std::vector<int> v;

    bool operator==(const KSubset& o) const { return v == o.v; }
    bool operator<(const KSubset& o) const { return v < o.v; }
};

inline constexpr std::size_t kDefaultSubsetCap = 5'000'000;

namespace detail {

// Connected-subset enumeration rooted at each vertex in turn: a set is grown
// only with vertices larger than its minimum, and candidates skipped at a
// branch point stay forbidden below it, so every set appears exactly once.
template <class F>
void extend_connected(const Graph& g, int root, std::vector<int>& S, std::vector<char>& inS,
                      std::vector<char>& forbidden, int K, std::size_t cap, std::size_t& count,
                      F& visit) {
    if (static_cast<int>(S.size()) == K) return;
    std::vector<int> cand;
    for (int v : S)
        for (int w : g.adj[v])
            if (w > root && !inS[w] && !forbidden[w]) cand.push_back(w);
    cand = vset::normalize(cand);
    for (std::size_t i = 0; i < cand.size(); ++i) {
        int u = cand[i];
        S.push_back(u);
        inS[u] = 1;
        ++count;
        if (count > cap) fail(Err::ExplosionCap, "connected-subset count exceeds cap");
        {
            std::vector<int> sorted = S;
            std::sort(sorted.begin(), sorted.end());
            visit(sorted);
        }
        for (std::size_t j = 0; j < i; ++j) forbidden[cand[j]] = 1;
        extend_connected(g, root, S, inS, forbidden, K, cap, count, visit);
        for (std::size_t j = 0; j < i; ++j) forbidden[cand[j]] = 0;
        inS[u] = 0;
        S.pop_back();
    }
}

}  // namespace detail

/// Visits every connected subset of size <= K exactly once (deterministic
/// root-ascending order). Throws ExplosionCap past `cap` subsets.
template <class F>
void for_each_connected_subset(const Graph& g, int K, std::size_t cap, F&& visit) {
    require(K >= 1, Err::BadParams, "K must be >= 1");
    std::size_t count = 0;
    std::vector<char> inS(g.n, 0), forbidden(g.n, 0);
    for (int root = 0; root < g.n; ++root) {
        std::vector<int> S{root};
        inS[root] = 1;
        ++count;
        if (count > cap) fail(Err::ExplosionCap, "connected-subset count exceeds cap");
        visit(std::vector<int>{root});
        detail::extend_connected(g, root, S, inS, forbidden, K, cap, count, visit);
        inS[root] = 0;
    }
}

/// All connected subsets of size <= K in lexicographic order of their sorted
/// vertex lists.
inline std::vector<KSubset> enumerate_k_subsets(const Graph& g, int K,
                                                std::size_t cap = kDefaultSubsetCap) {
    std::vector<KSubset> out;
    for_each_connected_subset(g, K, cap, [&](const std::vector<int>& s) { out.push_back({s}); });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t count_connected_subsets(const Graph& g, int K,
                                           std::size_t cap = kDefaultSubsetCap) {
    std::size_t c = 0;
    for_each_connected_subset(g, K, cap, [&](const std::vector<int>&) { ++c; });
    return c;
}

}  // namespace hypercert
