// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one [PASS]/[FAIL] line; the binary exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "hypercert/certificates.hpp"
#include "hypercert/generators.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/measure.hpp"
#include "hypercert/solvers.hpp"
#include "hypercert/subsets.hpp"
#include "hypercert/transforms.hpp"
#include "support/small_graphs.hpp"

using namespace hypercert;

namespace {

int failures = 0;
std::vector<std::string> notes;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        notes.push_back(what);
        std::cout << "    violation: " << what << "\n";
    }
}

struct Criterion {
    int number;
    std::string title;
    std::function<void()> body;
};

bool run_criterion(const Criterion& c) {
    int before = failures;
    auto t0 = std::chrono::steady_clock::now();
    try {
        c.body();
    } catch (const std::exception& e) {
        ++failures;
        std::cout << "    exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = failures == before;
    std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), secs);
    std::fflush(stdout);
    return ok;
}

Rat random_unit_rational(std::mt19937_64& rng) {
    long long den = 1 + static_cast<long long>(rng() % 20);
    long long num = static_cast<long long>(rng() % (den + 1));
    return Rat(num, den);
}

// ---------------------------------------------------------------------------
// 1. Threshold identity on 1000 random rational pairs, exact, < 10 s
// ---------------------------------------------------------------------------

void criterion1() {
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(rng() % 16);
        std::vector<Rat> f, g;
        for (int i = 0; i < n; ++i) f.push_back(random_unit_rational(rng));
        for (int i = 0; i < n; ++i) g.push_back(random_unit_rational(rng));
        NamiokaDecomposition d = namioka_threshold(f, g);
        check(d.integral == d.l1_distance, "threshold identity failed at trial " +
                                               std::to_string(trial));
    }
}

// ---------------------------------------------------------------------------
// 2. Strong duality over all connected graphs n <= 7, K in {1,2,3}
// ---------------------------------------------------------------------------

void criterion2() {
    std::vector<Graph> corpus = small_graphs::connected_graphs_up_to(7);
    // known counts of connected graphs on 1..7 vertices
    std::vector<int> per_n(8, 0);
    for (const Graph& g : corpus) ++per_n[g.n];
    check(per_n[1] == 1 && per_n[2] == 1 && per_n[3] == 2 && per_n[4] == 6 && per_n[5] == 21 &&
              per_n[6] == 112 && per_n[7] == 853,
          "connected-graph census mismatch");

    std::mt19937_64 rng(2002);
    for (const Graph& g : corpus) {
        std::vector<bits::Mask> adj = bits::adjacency_masks(g);
        bits::Mask all = bits::all_mask(g.n);
        for (int K = 1; K <= 3; ++K) {
            // separator_game_exact already asserts primal coverage == value ==
            // cheapest separator under the dual, in exact arithmetic
            GameSolution sol = separator_game_exact(g, K);
            check(sol.exact && sol.lower == sol.upper, "duality gap on n=" +
                                                           std::to_string(g.n));
            check(coverage(g, sol.primal).max_coverage == sol.lower,
                  "primal coverage drifts from value");

            // valid separators as masks, for the sampled cross-check
            std::vector<bits::Mask> valid;
            for (bits::Mask t = 0;; ++t) {
                if (bits::max_component_size(adj, all & ~t) <= K) valid.push_back(t);
                if (t == all) break;
            }
            for (int s = 0; s < 200; ++s) {
                std::vector<long long> w(g.n);
                long long total = 0;
                for (int v = 0; v < g.n; ++v) {
                    w[v] = static_cast<long long>(rng() % 5);
                    total += w[v];
                }
                if (total == 0) continue;
                long long best = -1;
                for (bits::Mask t : valid) {
                    long long cost = 0;
                    bits::Mask m = t;
                    while (m) {
                        cost += w[std::countr_zero(m)];
                        m &= m - 1;
                    }
                    if (best < 0 || cost < best) best = cost;
                }
                check(Rat(best, total) <= sol.lower, "sampled weight beats the dual value");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 3. Desk-scale exact values
// ---------------------------------------------------------------------------

void criterion3() {
    Graph c6 = make_cycle(6);
    check(separator_game_exact(c6, 2).lower == Rat(1, 3), "C_6 K=2 game value != 1/3");
    check(fractional_partition_lp(c6, 2).value == Rat(1), "C_6 K=2 partition value != 1");

    Graph c12 = make_cycle(12);
    PartitionLPResult lp = fractional_partition_lp(c12, 4);
    check(lp.value <= Rat(1, 2), "C_12 K=4 partition value above 1/2");

    // arc-translate construction achieves exactly 1/2
    FractionalKPartition arcs;
    arcs.K = 4;
    for (int s = 0; s < 4; ++s)
        for (int a = 0; a < 3; ++a) {
            std::vector<int> arc;
            for (int i = 0; i < 4; ++i) arc.push_back((s + 4 * a + i) % 12);
            arcs.support[vset::normalize(arc)] += Rat(1, 4);
        }
    validate_partition(c12, arcs);
    check(boundary_operator(c12, arcs).max_del == Rat(1, 2),
          "translate construction boundary != 1/2");
}

// ---------------------------------------------------------------------------
// 4. Transform postconditions on the corpus
// ---------------------------------------------------------------------------

struct CorpusEntry {
    std::string name;
    Graph graph;
    int window_radius;
};

std::vector<CorpusEntry> transform_corpus() {
    std::vector<CorpusEntry> out;
    out.push_back({"C_12", make_cycle(12), 2});
    out.push_back({"grid4x4", make_grid(4, 4), 1});
    out.push_back({"regular12", random_regular(12, 3, 1), 1});
    out.push_back({"hybrid(12,[8],12)", hybrid_example1(12, {{8, 1}}, 12).graph, 1});
    return out;
}

void criterion4() {
    std::mt19937_64 rng(4004);
    for (const CorpusEntry& entry : transform_corpus()) {
        const Graph& g = entry.graph;
        VertexMeasure mu = VertexMeasure::uniform(g.n);
        ReiterFamily fam = ball_uniform_family(g, entry.window_radius);
        ReiterQuality q = reiter_defect(g, fam);
        int bound = max_ball_size(g, 2 * q.radius);

        // T1 on the full set and on random subsets
        std::vector<std::vector<int>> bs{vset::full(g.n)};
        for (int s = 0; s < 5; ++s) {
            std::vector<int> B;
            for (int v = 0; v < g.n; ++v)
                if (rng() % 2) B.push_back(v);
            if (!B.empty()) bs.push_back(B);
        }
        for (const auto& B : bs) {
            std::vector<int> A = amenable_to_local(g, mu, fam, B);
            check(!A.empty() && vset::is_subset(A, B), entry.name + ": T1 piece malformed");
            check(mu.mass(outer_boundary(g, A, B)) <= q.defect * mu.mass(A),
                  entry.name + ": T1 boundary bound");
            check(max_component_size_within(g, A) <= bound, entry.name + ": T1 component bound");
        }

        // T2 through the oracle
        LocalOracle oracle = [&](const std::vector<int>& B) {
            return amenable_to_local(g, mu, fam, B, &q.defect);
        };
        ExhaustionResult t2 = local_to_global(g, mu, oracle, q.defect, bound);
        check(separator_quality(g, mu, t2.sep).mass <= q.defect, entry.name + ": T2 mass bound");
        check(separator_quality(g, mu, t2.sep).max_component <= bound,
              entry.name + ": T2 component bound");

        // T4 dichotomy against exhaustive enumeration, at the chain K and at K=3
        for (int K : {bound, 3}) {
            GameSolution game = separator_game_exact(g, K);
            auto minimal = enumerate_minimal_separators(g, K);
            DistributionOrWitness feas = weighted_to_distribution(g, K, game.lower);
            check(feas.feasible, entry.name + ": T4 not feasible at the game value");
            check(coverage(g, feas.dist).max_coverage <= game.lower,
                  entry.name + ": T4 coverage above epsilon");
            if (game.lower > 0) {
                Rat below = game.lower * Rat(9, 10);
                DistributionOrWitness infeas = weighted_to_distribution(g, K, below);
                check(!infeas.feasible, entry.name + ": T4 feasible below the value");
                Rat total = infeas.witness.sum_all();
                bool all_heavy = true;
                for (const auto& y : minimal)
                    if (!(infeas.witness.sum(y) > below * total)) all_heavy = false;
                check(all_heavy, entry.name + ": T4 witness misses a separator");
            }

            // T5 on the game's optimal distribution
            PartitionTransformResult t5 = distribution_to_partition(g, game.primal);
            for (int x = 0; x < g.n; ++x) {
                Rat closed = t5.cov.c[x];
                for (int y : g.adj[x]) closed += t5.cov.c[y];
                check(t5.boundary.del[x] <= closed, entry.name + ": T5 pointwise bound");
            }
            check(t5.boundary.max_del <= (g.max_degree + 1) * t5.cov.max_coverage,
                  entry.name + ": T5 (d+1) bound");

            // T6 on the mixed partition
            ReiterTransformResult t6 = partition_to_reiter(g, t5.partition);
            check(t6.quality.defect <= 2 * t5.boundary.max_del * g.max_degree,
                  entry.name + ": T6 defect bound");
            validate_reiter(g, t6.family);
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Bucket algorithm: weighted separators on 100 random weights per graph
// ---------------------------------------------------------------------------

void criterion5() {
    std::mt19937_64 rng(5005);
    std::vector<std::pair<std::string, Graph>> graphs;
    graphs.emplace_back("C_12", make_cycle(12));
    graphs.emplace_back("grid4x4", make_grid(4, 4));
    for (auto& [name, g] : graphs) {
        VertexMeasure mu = VertexMeasure::uniform(g.n);
        UhOracle oracle = exact_uh_oracle(g, mu, g.n, g.n);
        for (int trial = 0; trial < 100; ++trial) {
            WeightFunction W;
            bool positive = false;
            for (int v = 0; v < g.n; ++v) {
                long long den = 1 + static_cast<long long>(rng() % 32);
                long long num = static_cast<long long>(rng() % (den + 1));
                W.W.push_back(Rat(num, den));
                positive |= num > 0;
            }
            if (!positive) W.W[0] = 1;
            for (const Rat& eps : {Rat(1, 2), Rat(1)}) {
                // internal requires re-verify W(B'_{j*}) <= W(V)/L and
                // W(F_i) <= (eps/3) W(C_i); anything off throws
                WeightedSeparatorResult r = uniform_to_weighted(g, mu, W, eps, oracle);
                check(weighted_mass(W, mu, r.sep.T) <= eps * r.w_total,
                      name + ": weighted separator above eps*W(V)");
                check(r.w_residue * r.L <= r.w_total, name + ": residue above W(V)/L");
                for (const auto& [t, f_members] : r.cascades) {
                    const std::vector<int>* group = nullptr;
                    for (const auto& [gt, g_members] : r.groups)
                        if (gt == t) group = &g_members;
                    check(group && 3 * weighted_mass(W, mu, f_members) <=
                                       eps * weighted_mass(W, mu, *group),
                          name + ": cascade bound");
                }
                validate_separator(g, r.sep);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 6. Monotonicity in K and chain consistency
// ---------------------------------------------------------------------------

void criterion6() {
    std::vector<int> ks{1, 2, 3, 4, 6};
    for (const CorpusEntry& entry : transform_corpus()) {
        const Graph& g = entry.graph;
        VertexMeasure mu = VertexMeasure::uniform(g.n);
        Rat prev_game = 2, prev_profile = 2;
        for (int K : ks) {
            GameSolution game = separator_game_exact(g, K);
            check(game.lower <= prev_game, entry.name + ": game value rose at K=" +
                                               std::to_string(K));
            prev_game = game.lower;

            Rat profile;
            if (g.n <= kDefaultProfileBudget)
                profile = uniform_profile_exact(g, mu, K).value;
            else
                profile = uniform_profile_sampled(g, mu, K, 40, 6).value;  // fixed sample
            check(profile <= prev_profile,
                  entry.name + ": profile rose at K=" + std::to_string(K));
            prev_profile = profile;

            PartitionLPResult lp = fractional_partition_lp(g, K);
            check(lp.value <= (g.max_degree + 1) * game.lower,
                  entry.name + ": partition LP above (d+1) * game at K=" + std::to_string(K));
        }
    }
}

// ---------------------------------------------------------------------------
// 7. Example reproduction: gadget profile, measure growth, Cayley ratios
// ---------------------------------------------------------------------------

void criterion7() {
    // the hybrid's profile strictly exceeds the bare cycle's for some K
    HybridGraph h = hybrid_example1(6, {{8, 1}}, 6);
    Graph bare = make_cycle(6);
    bool exceeded = false;
    for (int K : {2, 3}) {
        Rat hybrid_val = uniform_profile_exact(h.graph, h.measure, K).value;
        Rat cycle_val = uniform_profile_exact(bare, VertexMeasure::uniform(6), K).value;
        if (hybrid_val > cycle_val) exceeded = true;
    }
    check(exceeded, "hybrid profile never exceeds the bare cycle");

    // the geometric measure's bounded-type constant grows with gadget size
    std::vector<Rat> ms;
    for (int size : {4, 6, 8}) {
        HybridGraph hg = hybrid_example1(12, {{size, 1}}, 12);
        ms.push_back(bounded_type_constant(hg.graph, geometric_measure_example2(hg)));
    }
    check(ms[0] <= ms[1] && ms[1] <= ms[2] && ms[0] < ms[2],
          "bounded-type constant fails to grow over gadget sizes 4, 6, 8");

    // Cayley ball: every oriented edge ratio bounded by base^2
    CayleyBall ball = cayley_ball_free_group(2, 3, Rat(4));
    Rat bound = Rat(16);
    for (int x = 0; x < ball.graph.n; ++x)
        for (int y : ball.graph.adj[x])
            check(ball.measure[y] / ball.measure[x] <= bound, "Cayley edge ratio above e^{2l}");
}

// ---------------------------------------------------------------------------
// 8. Expander separation: disjoint column-generation brackets at K=8
// ---------------------------------------------------------------------------

void criterion8() {
    Graph grid = make_grid(8, 8);
    Graph expander = random_regular(64, 3, 8);
    GameSolution grid_sol = separator_game_column_generation(grid, 8, 120);
    GameSolution exp_sol = separator_game_column_generation(expander, 8, 120);
    std::cout << "    grid bracket [" << to_fraction_string(grid_sol.lower) << ", "
              << to_fraction_string(grid_sol.upper) << "], expander bracket ["
              << to_fraction_string(exp_sol.lower) << ", " << to_fraction_string(exp_sol.upper)
              << "]\n";
    check(grid_sol.upper < exp_sol.lower,
          "grid upper bound does not stay below the expander lower bound");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "threshold identity, 1000 exact random instances", criterion1},
        {2, "strong duality over all connected graphs n <= 7, K in {1,2,3}", criterion2},
        {3, "exact desk values: C_6 game 1/3, C_6 partition 1, C_12 translates 1/2", criterion3},
        {4, "transform postconditions across the corpus", criterion4},
        {5, "bucket algorithm weighted separators, 100 weights per graph", criterion5},
        {6, "monotonicity in K and partition/game chain consistency", criterion6},
        {7, "example reproduction: profiles, measure growth, Cayley ratios", criterion7},
        {8, "empirical expander separation at K=8", criterion8},
    };
    bool all = true;
    for (const Criterion& c : criteria) all = run_criterion(c) && all;
    if (!all) {
        std::cout << failures << " violation(s)\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
