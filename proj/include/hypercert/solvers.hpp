#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hypercert/certificates.hpp"
#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/measure.hpp"
#include "hypercert/rational.hpp"
#include "hypercert/simplex.hpp"
#include "hypercert/subsets.hpp"

namespace hypercert {

namespace bits {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask(1) << v; }

inline Mask all_mask(int n) { return n >= 64 ? ~Mask(0) : (Mask(1) << n) - 1; }

inline std::vector<Mask> adjacency_masks(const Graph& g) {
    require(g.n <= 64, Err::Budget, "bitmask routines limited to 64 vertices");
    std::vector<Mask> adj(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v]) adj[v] |= bit(w);
    return adj;
}

inline Mask component_of(const std::vector<Mask>& adj, Mask alive, int v) {
    Mask comp = 0, frontier = bit(v) & alive;
    while (frontier) {
        comp |= frontier;
        Mask next = 0, f = frontier;
        while (f) {
            int u = std::countr_zero(f);
            f &= f - 1;
            next |= adj[u];
        }
        frontier = next & alive & ~comp;
    }
    return comp;
}

inline int max_component_size(const std::vector<Mask>& adj, Mask alive) {
    Mask left = alive;
    int best = 0;
    while (left) {
        Mask comp = component_of(adj, alive, std::countr_zero(left));
        best = std::max(best, std::popcount(comp));
        left &= ~comp;
    }
    return best;
}

inline std::vector<int> to_set(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

}  // namespace bits

// ---------------------------------------------------------------------------
// Minimum-weight K-separator
// ---------------------------------------------------------------------------

enum class SepMode { Exact, Greedy };

namespace detail {

// Branch and bound over the hitting-set view: a set is a K-separator exactly
// when it meets every connected (K+1)-subset, so branching walks the undecided
// vertices of one violated subset at a time.
template <class WT>
class SeparatorBB {
public:
    SeparatorBB(const std::vector<bits::Mask>& adj, bits::Mask universe, int K,
                const std::vector<WT>& w, std::uint64_t node_budget)
        : adj_(adj), universe_(universe), K_(K), w_(w), budget_(node_budget) {}

    // Initial incumbent must be a valid separator mask.
    bits::Mask solve(bits::Mask incumbent, WT incumbent_cost) {
        best_ = incumbent;
        best_cost_ = incumbent_cost;
        rec(0, 0, WT(0));
        return best_;
    }

    WT best_cost() const { return best_cost_; }

private:
    const std::vector<bits::Mask>& adj_;
    bits::Mask universe_;
    int K_;
    const std::vector<WT>& w_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bits::Mask best_ = 0;
    WT best_cost_{};

    // First K+1 vertices in BFS order inside the lowest oversized component;
    // 0 when every component already fits.
    bits::Mask violated_set(bits::Mask in_t) const {
        bits::Mask alive = universe_ & ~in_t, left = alive;
        while (left) {
            int v = std::countr_zero(left);
            bits::Mask comp = bits::component_of(adj_, alive, v);
            left &= ~comp;
            if (std::popcount(comp) <= K_) continue;
            bits::Mask chosen = 0, frontier = bits::bit(v);
            int need = K_ + 1;
            while (need > 0 && frontier) {
                bits::Mask f = frontier;
                frontier = 0;
                while (f && need > 0) {
                    int u = std::countr_zero(f);
                    f &= f - 1;
                    if (chosen & bits::bit(u)) continue;
                    chosen |= bits::bit(u);
                    --need;
                    frontier |= adj_[u] & comp & ~chosen;
                }
            }
            require(need == 0, Err::InvariantViolation, "oversized component smaller than K+1");
            return chosen;
        }
        return 0;
    }

    void rec(bits::Mask in_t, bits::Mask keep, WT cost) {
        if (++nodes_ > budget_) fail(Err::Budget, "separator branch-and-bound node budget");
        if (cost >= best_cost_) return;
        bits::Mask viol = violated_set(in_t);
        if (!viol) {
            best_cost_ = cost;
            best_ = in_t;
            return;
        }
        bits::Mask undecided = viol & ~keep;
        bits::Mask before = 0, u = undecided;
        while (u) {
            int v = std::countr_zero(u);
            u &= u - 1;
            rec(in_t | bits::bit(v), keep | before, cost + w_[v]);
            before |= bits::bit(v);
        }
    }
};

}  // namespace detail

/// Greedy mode: repeatedly removes the cheapest BFS layer of an oversized
/// component (W-cost per unit of split balance), then prunes redundant
/// vertices. Deterministic; valid but not optimal.
inline KSeparator greedy_separator(const Graph& g, const WeightFunction& W, int K) {
    require(K >= 1, Err::BadParams, "K must be >= 1");
    require(W.size() == g.n, Err::BadParams, "weight size mismatch");
    validate_weight(W);
    std::vector<char> removed(g.n, 0);
    std::vector<int> T;

    auto alive_set = [&] {
        std::vector<int> s;
        for (int v = 0; v < g.n; ++v)
            if (!removed[v]) s.push_back(v);
        return s;
    };

    for (;;) {
        std::vector<std::vector<int>> comps = components_within(g, alive_set());
        const std::vector<int>* target = nullptr;
        for (const auto& c : comps)
            if (static_cast<int>(c.size()) > K && (!target || c[0] < (*target)[0])) target = &c;
        if (!target) break;
        const std::vector<int>& comp = *target;

        // Double-sweep BFS layering: layers from the far end cut better.
        std::vector<char> inC(g.n, 0);
        for (int v : comp) inC[v] = 1;
        auto layers_from = [&](int root) {
            std::vector<int> dist(g.n, -1);
            std::queue<int> q;
            dist[root] = 0;
            q.push(root);
            int maxd = 0;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                maxd = std::max(maxd, dist[x]);
                for (int y : g.adj[x])
                    if (inC[y] && !removed[y] && dist[y] < 0) {
                        dist[y] = dist[x] + 1;
                        q.push(y);
                    }
            }
            std::vector<std::vector<int>> L(maxd + 1);
            for (int v : comp) L[dist[v]].push_back(v);
            return L;
        };
        auto far_end = layers_from(comp[0]);
        int root = far_end.back()[0];
        auto L = layers_from(root);
        int D = static_cast<int>(L.size()) - 1;

        if (D <= 1) {
            int pick = -1;
            for (int v : comp)
                if (pick < 0 || g.degree(v) > g.degree(pick)) pick = v;
            removed[pick] = 1;
            T.push_back(pick);
            continue;
        }
        int best_l = -1;
        Rat best_cost = 0;
        long long best_side = 1;
        long long below = static_cast<long long>(L[0].size());
        for (int l = 1; l < D; ++l) {
            Rat cost = 0;
            for (int v : L[l]) cost += W.W[v];
            long long above = static_cast<long long>(comp.size()) - below -
                              static_cast<long long>(L[l].size());
            long long side = std::min(below, above);
            // minimize cost/side by cross-multiplication
            if (best_l < 0 || cost * best_side < best_cost * side) {
                best_l = l;
                best_cost = cost;
                best_side = side;
            }
            below += static_cast<long long>(L[l].size());
        }
        for (int v : L[best_l]) {
            removed[v] = 1;
            T.push_back(v);
        }
    }

    // Minimality pass: drop any vertex whose removal from T keeps T valid.
    std::sort(T.begin(), T.end());
    std::vector<int> pruned = T;
    for (int v : T) {
        std::vector<int> trial = vset::minus(pruned, {v});
        std::vector<int> rest = vset::minus(vset::full(g.n), trial);
        if (max_component_size_within(g, rest) <= K) pruned = trial;
    }
    return KSeparator{pruned, K};
}

namespace detail {

// The search only replaces the incumbent with strictly cheaper separators, so
// the incumbent itself is returned whenever it is already optimal.
template <class WT>
KSeparator exact_separator_masked(const Graph& g, const std::vector<WT>& weights, int K,
                                  std::uint64_t node_budget, const KSeparator& incumbent) {
    std::vector<bits::Mask> adj = bits::adjacency_masks(g);
    bits::Mask universe = bits::all_mask(g.n);
    bits::Mask inc = 0;
    for (int v : incumbent.T) inc |= bits::bit(v);
    WT inc_cost(0);
    for (int v : incumbent.T) inc_cost += weights[v];
    SeparatorBB<WT> bb(adj, universe, K, weights, node_budget);
    bits::Mask best = bb.solve(inc, inc_cost);
    return KSeparator{bits::to_set(best), K};
}

}  // namespace detail

inline constexpr int kDefaultExactSeparatorBudget = 22;
inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

/// Minimum-weight K-separator. Exact mode runs the branch-and-bound (graph
/// size capped by exact_budget_n); greedy mode is the layer-cut heuristic.
inline KSeparator min_weight_separator(const Graph& g, const WeightFunction& W, int K,
                                       SepMode mode,
                                       int exact_budget_n = kDefaultExactSeparatorBudget,
                                       std::uint64_t node_budget = kDefaultNodeBudget) {
    require(K >= 1, Err::BadParams, "K must be >= 1");
    require(W.size() == g.n, Err::BadParams, "weight size mismatch");
    KSeparator seed = greedy_separator(g, W, K);
    if (mode == SepMode::Greedy) return seed;
    require(g.n <= exact_budget_n, Err::Budget,
            "exact separator search limited to n <= " + std::to_string(exact_budget_n));
    // Small integer weights (the uniform case in particular) take a fast path.
    // Scaling by 4n and adding 1 per vertex prefers smaller separators among
    // equal-weight optima without disturbing the weight order.
    bool integral = true;
    for (const Rat& x : W.W)
        if (denominator(x) != 1 || numerator(x) > 1'000'000) integral = false;
    if (integral) {
        std::vector<long long> scaled(g.n);
        for (int v = 0; v < g.n; ++v)
            scaled[v] = numerator(W.W[v]).convert_to<long long>() * (4LL * g.n) + 1;
        return detail::exact_separator_masked<long long>(g, scaled, K, node_budget, seed);
    }
    return detail::exact_separator_masked<Rat>(g, W.W, K, node_budget, seed);
}

// ---------------------------------------------------------------------------
// Minimal K-separator enumeration (exhaustive, desk scale)
// ---------------------------------------------------------------------------

/// All inclusion-minimal K-separators. Non-minimal ones are dominated in both
/// the primal (pointwise larger coverage) and the dual (implied constraints,
/// W >= 0), so the game LP restricted to these has the same value.
inline std::vector<std::vector<int>> enumerate_minimal_separators(const Graph& g, int K,
                                                                  std::size_t cap = 2'000'000) {
    require(g.n <= 22, Err::ExplosionCap, "separator enumeration limited to n <= 22");
    require(K >= 0, Err::BadParams, "negative K");
    std::vector<bits::Mask> adj = bits::adjacency_masks(g);
    bits::Mask all = bits::all_mask(g.n);
    std::vector<std::vector<int>> out;
    auto valid = [&](bits::Mask t) { return bits::max_component_size(adj, all & ~t) <= K; };
    for (bits::Mask t = 0; t <= all; ++t) {
        if (!valid(t)) {
            if (t == all) break;
            continue;
        }
        bool minimal = true;
        bits::Mask m = t;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if (valid(t & ~bits::bit(v))) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            out.push_back(bits::to_set(t));
            require(out.size() <= cap, Err::ExplosionCap, "minimal separator count exceeds cap");
        }
        if (t == all) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The separator game
// ---------------------------------------------------------------------------

/// Zero-sum covering game: the separator player mixes K-separators to minimize
/// worst-case vertex coverage; the weight player maximizes the cheapest
/// separator's normalized weight. Finite LP duality makes the values equal.
struct GameSolution {
    Rat lower = 0;
    Rat upper = 1;
    bool exact = false;            // lower == upper certified in rational arithmetic
    bool lower_certified = false;  // lower bound backed by exact best responses
    SeparatorDistribution primal;
    WeightFunction dual;
    int iterations = 0;
};

namespace detail {

struct RestrictedGame {
    Rat value;
    SeparatorDistribution primal;
    WeightFunction dual;  // normalized to total 1
};

inline RestrictedGame solve_game_over(const Graph& g, int K,
                                      const std::vector<std::vector<int>>& columns) {
    require(!columns.empty(), Err::BadParams, "game LP with no separators");
    const std::size_t m = columns.size();
    std::vector<Rat> c(m + 1, Rat(0));
    c[m] = 1;
    std::vector<LPRow<Rat>> rows;
    rows.reserve(g.n + 1);
    for (int x = 0; x < g.n; ++x) {
        LPRow<Rat> row{std::vector<Rat>(m + 1, Rat(0)), RowSense::LE, Rat(0)};
        for (std::size_t i = 0; i < m; ++i)
            if (vset::contains(columns[i], x)) row.a[i] = 1;
        row.a[m] = -1;
        rows.push_back(std::move(row));
    }
    LPRow<Rat> one{std::vector<Rat>(m + 1, Rat(0)), RowSense::EQ, Rat(1)};
    for (std::size_t i = 0; i < m; ++i) one.a[i] = 1;
    rows.push_back(std::move(one));

    LPResult<Rat> lp = solve_lp_exact(m + 1, c, rows);
    require(lp.status == LPStatus::Optimal, Err::InvariantViolation, "game LP did not solve");

    RestrictedGame out;
    out.value = lp.objective;
    out.primal.K = K;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.x[i] > 0) out.primal.atoms.push_back({KSeparator{columns[i], K}, lp.x[i]});
    out.dual.W.assign(g.n, Rat(0));
    Rat total = 0;
    for (int x = 0; x < g.n; ++x) {
        Rat w = -lp.dual[x];
        if (w < 0) w = 0;  // exact optimality gives w >= 0; clamp is for float reuse
        out.dual.W[x] = w;
        total += w;
    }
    if (total == 0)
        out.dual = WeightFunction::uniform(g.n);
    else if (total != 1)
        for (Rat& w : out.dual.W) w /= total;
    return out;
}

}  // namespace detail

/// Float-mode results carry plain doubles and a 1e-9 pivot tolerance.
struct GameSolutionFloat {
    double value = 0;
    std::vector<std::pair<std::vector<int>, double>> primal;  // separator, probability
    std::vector<double> dual;
};

inline GameSolutionFloat separator_game_float(const Graph& g, int K,
                                              std::size_t cap = 2'000'000) {
    std::vector<std::vector<int>> cols = enumerate_minimal_separators(g, K, cap);
    const std::size_t m = cols.size();
    std::vector<double> c(m + 1, 0.0);
    c[m] = 1.0;
    std::vector<LPRow<double>> rows;
    for (int x = 0; x < g.n; ++x) {
        LPRow<double> row{std::vector<double>(m + 1, 0.0), RowSense::LE, 0.0};
        for (std::size_t i = 0; i < m; ++i)
            if (vset::contains(cols[i], x)) row.a[i] = 1.0;
        row.a[m] = -1.0;
        rows.push_back(std::move(row));
    }
    LPRow<double> one{std::vector<double>(m + 1, 0.0), RowSense::EQ, 1.0};
    for (std::size_t i = 0; i < m; ++i) one.a[i] = 1.0;
    rows.push_back(std::move(one));
    LPResult<double> lp = solve_lp_float(m + 1, c, rows);
    require(lp.status == LPStatus::Optimal, Err::InvariantViolation, "game LP did not solve");
    GameSolutionFloat out;
    out.value = lp.objective;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.x[i] > FloatOps::eps) out.primal.emplace_back(cols[i], lp.x[i]);
    out.dual.assign(g.n, 0.0);
    for (int x = 0; x < g.n; ++x) out.dual[x] = std::max(0.0, -lp.dual[x]);
    return out;
}

/// Exact game value over all inclusion-minimal K-separators; asserts strong
/// duality (primal coverage = value = cheapest separator under the dual).
inline GameSolution separator_game_exact(const Graph& g, int K, std::size_t cap = 2'000'000) {
    std::vector<std::vector<int>> cols = enumerate_minimal_separators(g, K, cap);
    detail::RestrictedGame r = detail::solve_game_over(g, K, cols);
    GameSolution sol;
    sol.lower = sol.upper = r.value;
    sol.exact = true;
    sol.lower_certified = true;
    sol.primal = std::move(r.primal);
    sol.dual = std::move(r.dual);

    Rat cov = coverage(g, sol.primal).max_coverage;
    require(cov == r.value, Err::InvariantViolation, "primal coverage differs from game value");
    Rat wtotal = sol.dual.sum_all();
    Rat best_sep = -1;
    for (const auto& y : cols) {
        Rat frac = sol.dual.sum(y) / wtotal;
        if (best_sep < 0 || frac < best_sep) best_sep = frac;
    }
    require(best_sep == r.value, Err::InvariantViolation, "dual value differs from game value");
    return sol;
}

/// Column generation: restricted LP upper bounds alternate with best-response
/// lower bounds. With exact best responses (n within budget) the bracket
/// closes and is certified; with greedy responses it is reported as a bracket.
inline GameSolution separator_game_column_generation(
    const Graph& g, int K, int max_iters = 60,
    int exact_budget_n = kDefaultExactSeparatorBudget) {
    require(K >= 1, Err::BadParams, "K must be >= 1");
    bool exact_br = g.n <= exact_budget_n;
    std::vector<std::vector<int>> pool;
    pool.push_back(greedy_separator(g, WeightFunction::uniform(g.n), K).T);

    GameSolution sol;
    sol.lower = 0;
    sol.upper = 1;
    sol.lower_certified = exact_br;
    for (int iter = 1; iter <= max_iters; ++iter) {
        sol.iterations = iter;
        detail::RestrictedGame r = detail::solve_game_over(g, K, pool);
        if (r.value < sol.upper) sol.upper = r.value;
        sol.primal = r.primal;
        sol.dual = r.dual;

        KSeparator y = min_weight_separator(g, r.dual, K,
                                            exact_br ? SepMode::Exact : SepMode::Greedy);
        Rat br = r.dual.sum(y.T);  // dual normalized to total 1
        if (br > sol.lower) sol.lower = br;
        if (br >= r.value) {
            if (exact_br) {
                sol.lower = r.value;  // no improving column exists: optimum reached
                sol.exact = true;
            }
            break;
        }
        if (std::find(pool.begin(), pool.end(), y.T) != pool.end()) break;  // stalled
        pool.push_back(y.T);
    }
    // greedy responses overshoot the true minimum, so the heuristic lower
    // bound can drift past the sound upper bound; keep the bracket ordered
    if (sol.lower > sol.upper) sol.lower = sol.upper;
    if (sol.lower == sol.upper && sol.lower_certified) sol.exact = true;
    return sol;
}

// ---------------------------------------------------------------------------
// Fractional partition LP
// ---------------------------------------------------------------------------

struct PartitionLPResult {
    Rat value;  // min over fractional K-partitions of the worst boundary load
    FractionalKPartition partition;
};

struct PartitionLPFloat {
    double value = 0;
    std::vector<std::pair<std::vector<int>, double>> support;
};

inline PartitionLPFloat fractional_partition_lp_float(const Graph& g, int K,
                                                      std::size_t cap = kDefaultSubsetCap) {
    std::vector<KSubset> subsets = enumerate_k_subsets(g, K, cap);
    const std::size_t m = subsets.size();
    std::vector<double> c(m + 1, 0.0);
    c[m] = 1.0;
    std::vector<LPRow<double>> rows;
    for (int x = 0; x < g.n; ++x) {
        LPRow<double> row{std::vector<double>(m + 1, 0.0), RowSense::EQ, 1.0};
        for (std::size_t i = 0; i < m; ++i)
            if (vset::contains(subsets[i].v, x)) row.a[i] = 1.0;
        rows.push_back(std::move(row));
    }
    for (int x = 0; x < g.n; ++x) {
        LPRow<double> row{std::vector<double>(m + 1, 0.0), RowSense::LE, 0.0};
        for (std::size_t i = 0; i < m; ++i)
            if (vset::contains(inner_boundary(g, subsets[i].v), x)) row.a[i] = 1.0;
        row.a[m] = -1.0;
        rows.push_back(std::move(row));
    }
    LPResult<double> lp = solve_lp_float(m + 1, c, rows);
    require(lp.status == LPStatus::Optimal, Err::InvariantViolation,
            "partition LP did not solve");
    PartitionLPFloat out;
    out.value = lp.objective;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.x[i] > FloatOps::eps) out.support.emplace_back(subsets[i].v, lp.x[i]);
    return out;
}

inline PartitionLPResult fractional_partition_lp(const Graph& g, int K,
                                                 std::size_t cap = kDefaultSubsetCap) {
    std::vector<KSubset> subsets = enumerate_k_subsets(g, K, cap);
    const std::size_t m = subsets.size();
    std::vector<std::vector<int>> bnd(m);
    for (std::size_t i = 0; i < m; ++i) bnd[i] = inner_boundary(g, subsets[i].v);

    std::vector<Rat> c(m + 1, Rat(0));
    c[m] = 1;
    std::vector<LPRow<Rat>> rows;
    for (int x = 0; x < g.n; ++x) {
        LPRow<Rat> row{std::vector<Rat>(m + 1, Rat(0)), RowSense::EQ, Rat(1)};
        for (std::size_t i = 0; i < m; ++i)
            if (vset::contains(subsets[i].v, x)) row.a[i] = 1;
        rows.push_back(std::move(row));
    }
    for (int x = 0; x < g.n; ++x) {
        LPRow<Rat> row{std::vector<Rat>(m + 1, Rat(0)), RowSense::LE, Rat(0)};
        for (std::size_t i = 0; i < m; ++i)
            if (vset::contains(bnd[i], x)) row.a[i] = 1;
        row.a[m] = -1;
        rows.push_back(std::move(row));
    }
    LPResult<Rat> lp = solve_lp_exact(m + 1, c, rows);
    require(lp.status == LPStatus::Optimal, Err::InvariantViolation,
            "partition LP did not solve");

    PartitionLPResult out;
    out.value = lp.objective;
    out.partition.K = K;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.x[i] > 0) out.partition.support[subsets[i].v] = lp.x[i];
    validate_partition(g, out.partition);
    require(boundary_operator(g, out.partition).max_del == out.value, Err::InvariantViolation,
            "optimizer boundary load differs from LP value");
    return out;
}

// ---------------------------------------------------------------------------
// Uniform hyperfiniteness profile
// ---------------------------------------------------------------------------

/// eps_U(K): the worst normalized separator cost over induced sub-instances.
struct ProfileResult {
    Rat value;
    bool is_lower_bound = false;  // sampled mode never claims the maximum
    std::vector<int> witness_subset;
};

namespace detail {

inline Rat subset_min_separator_mass(const Graph& g, const VertexMeasure& mu, int K,
                                     bits::Mask subset, const std::vector<bits::Mask>& adj,
                                     std::uint64_t node_budget) {
    std::vector<int> A = bits::to_set(subset);
    if (static_cast<int>(A.size()) <= K) return Rat(0);
    // Incumbent: remove everything except the heaviest vertex.
    int keep = A[0];
    for (int v : A)
        if (mu[v] > mu[keep]) keep = v;
    bits::Mask inc = subset & ~bits::bit(keep);

    bool uniform = true;
    for (int v : A)
        if (mu[v] != mu[A[0]]) uniform = false;
    Rat cost;
    if (uniform) {
        std::vector<long long> w(g.n, 1);
        SeparatorBB<long long> bb(adj, subset, K, w, node_budget);
        bits::Mask best = bb.solve(inc, static_cast<long long>(A.size()) - 1);
        cost = Rat(std::popcount(best)) * mu[A[0]];
    } else {
        std::vector<Rat> w(g.n, Rat(0));
        for (int v : A) w[v] = mu[v];
        Rat inc_cost = 0;
        for (int v : bits::to_set(inc)) inc_cost += mu[v];
        SeparatorBB<Rat> bb(adj, subset, K, w, node_budget);
        bits::Mask best = bb.solve(inc, inc_cost);
        cost = 0;
        for (int v : bits::to_set(best)) cost += mu[v];
    }
    return cost / mu.mass(A);
}

}  // namespace detail

inline constexpr int kDefaultProfileBudget = 14;

/// Exact profile: scans all nonempty subsets; n capped by budget_n.
inline ProfileResult uniform_profile_exact(const Graph& g, const VertexMeasure& mu, int K,
                                           int budget_n = kDefaultProfileBudget,
                                           std::uint64_t node_budget = kDefaultNodeBudget) {
    require(K >= 1, Err::BadParams, "K must be >= 1");
    require(g.n <= budget_n, Err::Budget,
            "exact profile limited to n <= " + std::to_string(budget_n));
    require(mu.size() == g.n, Err::BadParams, "measure size mismatch");
    std::vector<bits::Mask> adj = bits::adjacency_masks(g);
    ProfileResult out;
    out.value = 0;
    bits::Mask all = bits::all_mask(g.n);
    for (bits::Mask s = 1; s <= all; ++s) {
        Rat v = detail::subset_min_separator_mass(g, mu, K, s, adj, node_budget);
        if (v > out.value) {
            out.value = v;
            out.witness_subset = bits::to_set(s);
        }
        if (s == all) break;
    }
    return out;
}

/// Sampled profile: a certified lower bound from seeded random subsets (sizes
/// within the exact-solver budget so each inner minimum stays exact).
inline ProfileResult uniform_profile_sampled(const Graph& g, const VertexMeasure& mu, int K,
                                             int samples, std::uint64_t seed,
                                             int inner_budget_n = kDefaultExactSeparatorBudget,
                                             std::uint64_t node_budget = kDefaultNodeBudget) {
    require(K >= 1, Err::BadParams, "K must be >= 1");
    require(samples >= 1, Err::BadParams, "sample count must be >= 1");
    require(g.n <= 64, Err::Budget, "sampled profile limited to n <= 64");
    std::vector<bits::Mask> adj = bits::adjacency_masks(g);
    std::mt19937_64 rng(seed);
    auto draw_below = [&](std::uint64_t bound) {  // unbiased, engine-portable
        std::uint64_t lim = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= lim);
        return x % bound;
    };
    int max_size = std::min(g.n, inner_budget_n);
    ProfileResult out;
    out.value = 0;
    out.is_lower_bound = true;
    for (int s = 0; s < samples; ++s) {
        int size = 1 + static_cast<int>(draw_below(static_cast<std::uint64_t>(max_size)));
        bits::Mask subset = 0;
        while (std::popcount(subset) < size)
            subset |= bits::bit(static_cast<int>(draw_below(static_cast<std::uint64_t>(g.n))));
        Rat v = detail::subset_min_separator_mass(g, mu, K, subset, adj, node_budget);
        if (v > out.value) {
            out.value = v;
            out.witness_subset = bits::to_set(subset);
        }
    }
    return out;
}

}  // namespace hypercert
