#pragma once

#include <vector>

#include "hypercert/graph.hpp"

namespace hypercert {

struct Coloring {
    std::vector<int> color;
    int num_colors = 0;
};

/// Greedy coloring of the r-th graph power: vertices at distance 1..r receive
/// distinct colors. Uses at most N_r colors (every vertex sees fewer than N_r
/// earlier vertices inside its radius-r ball). r = 0 yields the constant coloring.
inline Coloring distance_power_coloring(const Graph& g, int r) {
    require(r >= 0, Err::OutOfRange, "negative radius");
    Coloring c;
    c.color.assign(g.n, -1);
    if (g.n == 0) return c;
    if (r == 0) {
        c.color.assign(g.n, 0);
        c.num_colors = 1;
        return c;
    }
    for (int v = 0; v < g.n; ++v) {
        std::vector<char> used;
        for (int u : ball(g, v, r)) {
            int col = c.color[u];
            if (col >= 0) {
                if (col >= static_cast<int>(used.size())) used.resize(col + 1, 0);
                used[col] = 1;
            }
        }
        int pick = 0;
        while (pick < static_cast<int>(used.size()) && used[pick]) ++pick;
        c.color[v] = pick;
        c.num_colors = std::max(c.num_colors, pick + 1);
    }
    return c;
}

}  // namespace hypercert
