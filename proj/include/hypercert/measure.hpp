#pragma once

#include <vector>

#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/rational.hpp"

namespace hypercert {

// Strictly positive weight vector on the vertices. May be normalized (total 1)
// or raw; all consumers work with mass ratios, so either convention is fine.
struct VertexMeasure {
    std::vector<Rat> w;
    Rat total = 0;

    static VertexMeasure uniform(int n) {
        require(n > 0, Err::BadParams, "uniform measure needs n > 0");
        VertexMeasure m;
        m.w.assign(n, Rat(1, n));
        m.total = 1;
        return m;
    }

    static VertexMeasure from_weights(std::vector<Rat> weights) {
        VertexMeasure m;
        m.total = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            require(weights[i] > 0, Err::BadParams,
                    "measure weight at vertex " + std::to_string(i) + " not positive");
            m.total += weights[i];
        }
        m.w = std::move(weights);
        return m;
    }

    int size() const { return static_cast<int>(w.size()); }

    const Rat& operator[](int v) const { return w[v]; }

    Rat mass(const std::vector<int>& A) const {
        Rat s = 0;
        for (int v : A) s += w[v];
        return s;
    }
};

/// mu_A: weights of A rescaled by 1/mu(A); indices follow A's order, total 1.
inline VertexMeasure normalized_restriction(const VertexMeasure& mu, const std::vector<int>& A) {
    require(!A.empty(), Err::EmptySubset, "restriction to empty set");
    Rat mA = mu.mass(A);
    VertexMeasure out;
    out.w.reserve(A.size());
    for (int v : A) out.w.push_back(mu[v] / mA);
    out.total = 1;
    return out;
}

/// Bounded-type constant M: the largest measure ratio across an oriented edge.
/// Uniform measures give exactly 1; M >= 1 always.
inline Rat bounded_type_constant(const Graph& g, const VertexMeasure& mu) {
    require(g.edge_count() > 0, Err::NoEdges, "bounded_type_constant needs at least one edge");
    require(mu.size() == g.n, Err::BadParams, "measure size mismatch");
    Rat best = 0;
    for (int x = 0; x < g.n; ++x)
        for (int y : g.adj[x]) {
            Rat r = mu[y] / mu[x];
            if (r > best) best = r;
        }
    return best;
}

}  // namespace hypercert
