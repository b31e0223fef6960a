#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/measure.hpp"
#include "hypercert/rational.hpp"

namespace hypercert {

// All generators are deterministic in their parameters and seed; randomness
// always flows through mt19937_64 with hand-rolled rejection sampling so the
// same seed yields the same graph on every platform.

namespace detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t lim = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= lim);
        return x % bound;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace detail

inline Graph make_cycle(int n) {
    require(n >= 3, Err::BadParams, "cycle needs n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return build_graph(n, e);
}

inline Graph make_path(int n) {
    require(n >= 1, Err::BadParams, "path needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build_graph(n, e);
}

/// Row-major grid: vertex (r, c) is r * cols + c.
inline Graph make_grid(int rows, int cols) {
    require(rows >= 1 && cols >= 1, Err::BadParams, "grid needs positive dimensions");
    std::vector<std::pair<int, int>> e;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    return build_graph(rows * cols, e);
}

inline Graph make_torus(int rows, int cols) {
    require(rows >= 3 && cols >= 3, Err::BadParams, "torus needs dimensions >= 3");
    std::vector<std::pair<int, int>> e;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            e.emplace_back(id(r, c), id(r, (c + 1) % cols));
            e.emplace_back(id(r, c), id((r + 1) % rows, c));
        }
    return build_graph(rows * cols, e);
}

inline Graph make_complete(int n) {
    require(n >= 1, Err::BadParams, "complete graph needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return build_graph(n, e);
}

/// Full arity-ary tree of the given depth, root 0, children in BFS order.
inline Graph make_tree(int arity, int depth) {
    require(arity >= 1 && depth >= 0, Err::BadParams, "tree needs arity >= 1, depth >= 0");
    std::vector<std::pair<int, int>> e;
    int next = 1;
    std::vector<int> frontier{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<int> nf;
        for (int v : frontier)
            for (int c = 0; c < arity; ++c) {
                e.emplace_back(v, next);
                nf.push_back(next++);
            }
        frontier = std::move(nf);
    }
    return build_graph(next, e);
}

/// Configuration-model d-regular graph, resampled until simple (at most 1000
/// attempts, then BadParams).
inline Graph random_regular(int n, int d, std::uint64_t seed) {
    require(n > d && d >= 1, Err::BadParams, "need n > d >= 1");
    require((static_cast<long long>(n) * d) % 2 == 0, Err::BadParams, "n*d must be even");
    detail::Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * d);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);
        rng.shuffle(stubs);
        std::vector<std::pair<int, int>> e;
        bool simple = true;
        std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || seen[u][v]) simple = false;
            else {
                seen[u][v] = seen[v][u] = 1;
                e.emplace_back(u, v);
            }
        }
        if (simple) return build_graph(n, e);
    }
    fail(Err::BadParams, "no simple configuration after 1000 attempts");
}

// ---------------------------------------------------------------------------
// Hybrid family: a cycle with expander-like gadgets hanging off markers
// ---------------------------------------------------------------------------

/// A cycle with 3-regular gadgets attached by single edges at every
/// `spacing`-th vertex. Uniform measure. The gadget structure is retained so
/// the geometric reweighting below can find the pieces again.
struct HybridGraph {
    Graph graph;
    VertexMeasure measure;
    int cycle_n = 0;
    int spacing = 0;
    std::vector<int> markers;
    struct GadgetRange {
        int first = 0;  // global id of the gadget's distinguished vertex
        int size = 0;
        std::uint64_t seed = 0;
    };
    std::vector<GadgetRange> gadgets;
};

inline HybridGraph hybrid_example1(int cycle_n,
                                   const std::vector<std::pair<int, std::uint64_t>>& gadget_specs,
                                   int spacing) {
    require(cycle_n >= 3, Err::BadParams, "cycle needs n >= 3");
    require(spacing >= 1 && cycle_n % spacing == 0, Err::BadParams,
            "spacing must divide the cycle length");
    int marker_count = cycle_n / spacing;
    require(static_cast<int>(gadget_specs.size()) <= marker_count, Err::BadParams,
            "more gadgets than markers");
    HybridGraph h;
    h.cycle_n = cycle_n;
    h.spacing = spacing;
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < cycle_n; ++i) e.emplace_back(i, (i + 1) % cycle_n);
    int next = cycle_n;
    for (std::size_t gi = 0; gi < gadget_specs.size(); ++gi) {
        auto [size, seed] = gadget_specs[gi];
        require(size >= 4, Err::BadParams, "gadget size must be >= 4");
        Graph t = random_regular(size, 3, seed);
        int marker = static_cast<int>(gi) * spacing;
        h.markers.push_back(marker);
        e.emplace_back(marker, next);  // marker to the gadget's distinguished vertex
        for (int v = 0; v < t.n; ++v)
            for (int w : t.adj[v])
                if (v < w) e.emplace_back(next + v, next + w);
        h.gadgets.push_back({next, size, seed});
        next += size;
    }
    h.graph = build_graph(next, e);
    h.measure = VertexMeasure::uniform(next);
    return h;
}

/// Geometric reweighting: cycle vertices keep their uniform weight, gadget
/// vertices ranked by local index get 1/2, 1/4, ..., with the last two ranks
/// equal, scaled so each gadget keeps its uniform total. The edge measure
/// ratio then grows like 2^(largest rank gap across a gadget edge).
inline VertexMeasure geometric_measure_example2(const HybridGraph& h) {
    require(!h.gadgets.empty(), Err::NotHybrid, "graph has no gadget structure");
    int n = h.graph.n;
    std::vector<Rat> w(n, Rat(1, n));
    for (const auto& gr : h.gadgets) {
        require(gr.size >= 2 && gr.first + gr.size <= n, Err::NotHybrid,
                "gadget range out of bounds");
        // ranks 1..m: 1/2, 1/4, ..., 1/2^{m-1}, 1/2^{m-1}; total exactly 1
        for (int r = 1; r <= gr.size; ++r) {
            long long expo = std::min<long long>(r, gr.size - 1);
            w[gr.first + r - 1] = Rat(gr.size, n) * pow_rat(Rat(1, 2), expo);
        }
    }
    return VertexMeasure::from_weights(std::move(w));
}

// ---------------------------------------------------------------------------
// Cayley ball of a free group with an exponentially decaying measure
// ---------------------------------------------------------------------------

/// Ball of the given radius in the Cayley graph of the free group of the given
/// rank (a 2*rank-regular tree), carrying the normalized measure
/// rho(gamma) ∝ base^(-2 * |gamma|). Taking base = e^lambda, the sphere bound
/// |S_r| <= base^r needs base >= 2*rank, and every edge ratio is <= base^2.
struct CayleyBall {
    Graph graph;
    VertexMeasure measure;
    std::vector<int> word_length;
    Rat base;
};

inline CayleyBall cayley_ball_free_group(int rank, int radius, const Rat& base) {
    require(rank >= 1, Err::BadParams, "rank must be >= 1");
    require(radius >= 1, Err::BadParams, "radius must be >= 1");
    require(base >= 2 * rank, Err::BadParams, "base must be at least 2*rank");
    CayleyBall out;
    out.base = base;
    std::vector<std::pair<int, int>> e;
    std::vector<int> len{0};
    // generator labels: 2*i is the i-th generator, 2*i+1 its inverse
    std::vector<int> last_label{-1};
    std::vector<int> frontier{0};
    int next = 1;
    for (int r = 1; r <= radius; ++r) {
        std::vector<int> nf;
        for (int v : frontier)
            for (int lab = 0; lab < 2 * rank; ++lab) {
                if (last_label[v] >= 0 && (lab ^ 1) == last_label[v]) continue;  // reduced words
                e.emplace_back(v, next);
                len.push_back(r);
                last_label.push_back(lab);
                nf.push_back(next++);
            }
        frontier = std::move(nf);
    }
    out.graph = build_graph(next, e);
    out.word_length = std::move(len);
    // normalization: Z = sum over the ball of base^(-2 len)
    Rat z = 0;
    for (int v = 0; v < next; ++v) z += pow_rat(base, -2 * out.word_length[v]);
    std::vector<Rat> w(next);
    for (int v = 0; v < next; ++v) w[v] = pow_rat(base, -2 * out.word_length[v]) / z;
    out.measure = VertexMeasure::from_weights(std::move(w));
    return out;
}

}  // namespace hypercert
