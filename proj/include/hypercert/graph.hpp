#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "hypercert/errors.hpp"

namespace hypercert {

// Finite simple undirected graph with dense vertex ids [0, n) and sorted
// adjacency lists. Immutable after build_graph; all operations on it are pure.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    int max_degree = 0;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    bool has_edge(int u, int v) const {
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }

    std::size_t edge_count() const {
        std::size_t s = 0;
        for (const auto& a : adj) s += a.size();
        return s / 2;
    }
};

namespace vset {

// Vertex sets are canonically sorted, duplicate-free int vectors.

inline bool contains(const std::vector<int>& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<int> normalize(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline std::vector<int> unite(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<int> full(int n) {
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    return out;
}

inline std::string to_string(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace vset

inline void check_vertex(const Graph& g, int v, const char* what) {
    require(v >= 0 && v < g.n, Err::OutOfRange,
            std::string(what) + " " + std::to_string(v) + " outside [0," + std::to_string(g.n) + ")");
}

inline Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    require(n >= 0, Err::OutOfRange, "negative vertex count");
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    for (auto [u, v] : edges) {
        check_vertex(g, u, "edge endpoint");
        check_vertex(g, v, "edge endpoint");
        require(u != v, Err::SelfLoop, "self-loop at vertex " + std::to_string(u));
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        g.max_degree = std::max(g.max_degree, static_cast<int>(a.size()));
    }
    return g;
}

/// Distances from src via BFS; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
    check_vertex(g, src, "source");
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

/// B_r(x): all vertices at shortest-path distance <= r from x, sorted.
inline std::vector<int> ball(const Graph& g, int x, int r) {
    check_vertex(g, x, "center");
    require(r >= 0, Err::OutOfRange, "negative radius");
    std::vector<int> dist(g.n, -1), out;
    std::queue<int> q;
    dist[x] = 0;
    q.push(x);
    out.push_back(x);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (dist[u] == r) continue;
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
                out.push_back(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// N_r: the largest radius-r ball in the graph.
inline int max_ball_size(const Graph& g, int r) {
    int best = 0;
    for (int v = 0; v < g.n; ++v) best = std::max(best, static_cast<int>(ball(g, v, r).size()));
    return best;
}

/// Outer boundary of A relative to B: vertices of B \ A adjacent to A. Requires A ⊆ B.
inline std::vector<int> outer_boundary(const Graph& g, const std::vector<int>& A,
                                       const std::vector<int>& B) {
    for (int v : A) check_vertex(g, v, "set vertex");
    for (int v : B) check_vertex(g, v, "set vertex");
    require(vset::is_subset(A, B), Err::NotSubset, "outer_boundary needs A ⊆ B");
    std::vector<char> inA(g.n, 0), inB(g.n, 0);
    for (int v : A) inA[v] = 1;
    for (int v : B) inB[v] = 1;
    std::vector<int> out;
    for (int v : B) {
        if (inA[v]) continue;
        for (int w : g.adj[v])
            if (inA[w]) {
                out.push_back(v);
                break;
            }
    }
    return out;  // B sorted, so out is sorted
}

/// Inner boundary: vertices of A with a neighbor outside A.
inline std::vector<int> inner_boundary(const Graph& g, const std::vector<int>& A) {
    for (int v : A) check_vertex(g, v, "set vertex");
    std::vector<char> inA(g.n, 0);
    for (int v : A) inA[v] = 1;
    std::vector<int> out;
    for (int v : A)
        for (int w : g.adj[v])
            if (!inA[w]) {
                out.push_back(v);
                break;
            }
    return out;
}

/// Connected components of the subgraph induced on S, each sorted, ordered by minimum vertex.
inline std::vector<std::vector<int>> components_within(const Graph& g, const std::vector<int>& S) {
    std::vector<char> inS(g.n, 0), seen(g.n, 0);
    for (int v : S) {
        check_vertex(g, v, "set vertex");
        inS[v] = 1;
    }
    std::vector<std::vector<int>> comps;
    for (int v : S) {
        if (seen[v]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        seen[v] = 1;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int w : g.adj[u])
                if (inS[w] && !seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline std::vector<std::vector<int>> components(const Graph& g) {
    return components_within(g, vset::full(g.n));
}

inline int max_component_size_within(const Graph& g, const std::vector<int>& S) {
    int best = 0;
    for (const auto& c : components_within(g, S)) best = std::max(best, static_cast<int>(c.size()));
    return best;
}

inline bool is_connected_subset(const Graph& g, const std::vector<int>& S) {
    if (S.empty()) return false;
    return components_within(g, S).size() == 1;
}

/// Induced subgraph on S with local ids 0..|S|-1; global_of_local maps back.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& S,
                              std::vector<int>* global_of_local = nullptr) {
    std::vector<int> local(g.n, -1);
    for (std::size_t i = 0; i < S.size(); ++i) {
        check_vertex(g, S[i], "set vertex");
        local[S[i]] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v : S)
        for (int w : g.adj[v])
            if (v < w && local[w] >= 0) edges.emplace_back(local[v], local[w]);
    if (global_of_local) *global_of_local = S;
    return build_graph(static_cast<int>(S.size()), edges);
}

}  // namespace hypercert
