#pragma once

// Exhaustive enumeration of all graphs on up to `max_n` vertices, one
// representative per isomorphism class, by vertex extension with canonical
// deduplication (minimum edge code over all vertex permutations).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hypercert/graph.hpp"

namespace small_graphs {

using EdgeMask = std::uint32_t;  // up to n = 8: C(8,2) = 28 bits

inline int pair_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    // index of (i, j), i < j, in row-major pair order
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += n - 1 - a;
    return idx + (j - i - 1);
}

inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline EdgeMask canonical(EdgeMask mask, const std::vector<std::vector<int>>& perms,
                          const std::vector<std::vector<int>>& edge_maps) {
    EdgeMask best = mask;
    for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        EdgeMask m = 0;
        const std::vector<int>& emap = edge_maps[pi];
        EdgeMask rest = mask;
        while (rest) {
            int e = std::countr_zero(rest);
            rest &= rest - 1;
            m |= EdgeMask(1) << emap[e];
        }
        if (m < best) best = m;
    }
    return best;
}

/// Canonical representatives of every graph with exactly n vertices,
/// for n = 1..max_n (index 0 of the result is n = 1).
inline std::vector<std::vector<EdgeMask>> all_graphs_by_size(int max_n) {
    std::vector<std::vector<EdgeMask>> levels;
    levels.push_back({0});  // the one-vertex graph
    for (int n = 2; n <= max_n; ++n) {
        auto perms = permutations(n);
        std::vector<std::vector<int>> edge_maps(perms.size());
        int m = n * (n - 1) / 2;
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
            edge_maps[pi].resize(m);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    edge_maps[pi][pair_index(i, j, n)] =
                        pair_index(perms[pi][i], perms[pi][j], n);
        }
        std::set<EdgeMask> seen;
        for (EdgeMask parent : levels.back()) {
            // re-index the parent's edges from n-1 vertices into n vertices
            EdgeMask base = 0, rest = parent;
            while (rest) {
                int e = std::countr_zero(rest);
                rest &= rest - 1;
                // recover (i, j) in the (n-1)-vertex indexing
                int i = 0, acc = 0;
                while (acc + (n - 2 - i) <= e) acc += n - 2 - i, ++i;
                int j = i + 1 + (e - acc);
                base |= EdgeMask(1) << pair_index(i, j, n);
            }
            for (EdgeMask nbhd = 0; nbhd < (EdgeMask(1) << (n - 1)); ++nbhd) {
                EdgeMask g = base;
                for (int v = 0; v < n - 1; ++v)
                    if (nbhd >> v & 1) g |= EdgeMask(1) << pair_index(v, n - 1, n);
                seen.insert(canonical(g, perms, edge_maps));
            }
        }
        levels.emplace_back(seen.begin(), seen.end());
    }
    return levels;
}

inline hypercert::Graph to_graph(EdgeMask mask, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask >> pair_index(i, j, n) & 1) edges.emplace_back(i, j);
    return hypercert::build_graph(n, edges);
}

inline bool mask_connected(EdgeMask mask, int n) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask >> pair_index(i, j, n) & 1) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return count == n;
}

/// All connected graphs with at most max_n vertices, one per isomorphism class.
inline std::vector<hypercert::Graph> connected_graphs_up_to(int max_n) {
    std::vector<hypercert::Graph> out;
    auto levels = all_graphs_by_size(max_n);
    for (int n = 1; n <= max_n; ++n)
        for (EdgeMask mask : levels[n - 1])
            if (mask_connected(mask, n)) out.push_back(to_graph(mask, n));
    return out;
}

}  // namespace small_graphs
