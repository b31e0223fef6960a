#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypercert/certificates.hpp"
#include "hypercert/coloring.hpp"
#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/measure.hpp"
#include "hypercert/rational.hpp"
#include "hypercert/solvers.hpp"

namespace hypercert {

/// Every transform reports the constant its contract promises next to the
/// value the validators actually measure; achieved <= guaranteed on every
/// input satisfying the preconditions.
struct TransformReport {
    std::string stage;
    Rat eps_in = 0;
    int k_in = 0;  // K or R, whichever parametrizes the input certificate
    Rat eps_guaranteed = 0;
    Rat eps_achieved = 0;
    int k_out = 0;
};

// ---------------------------------------------------------------------------
// Threshold (level-set) decomposition
// ---------------------------------------------------------------------------

/// Exact finite form of the threshold identity: integrating the l1 distance
/// of the level-set indicators I_{a,inf}(f), I_{a,inf}(g) over a recovers
/// ||f - g||_1. The integrand is constant between consecutive entry values,
/// so the integral is a finite sum over breakpoint intervals.
struct NamiokaDecomposition {
    std::vector<Rat> breakpoints;  // 0 plus the distinct entry values, ascending
    Rat integral;
    Rat l1_distance;
};

inline NamiokaDecomposition namioka_threshold(const std::vector<Rat>& f,
                                              const std::vector<Rat>& g) {
    require(f.size() == g.size(), Err::BadParams, "vector length mismatch");
    for (const Rat& v : f) require(v >= 0 && v <= 1, Err::OutOfRange, "entry outside [0,1]");
    for (const Rat& v : g) require(v >= 0 && v <= 1, Err::OutOfRange, "entry outside [0,1]");

    NamiokaDecomposition out;
    out.breakpoints.push_back(Rat(0));
    for (const Rat& v : f) out.breakpoints.push_back(v);
    for (const Rat& v : g) out.breakpoints.push_back(v);
    std::sort(out.breakpoints.begin(), out.breakpoints.end());
    out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                          out.breakpoints.end());

    out.integral = 0;
    for (std::size_t k = 0; k + 1 < out.breakpoints.size(); ++k) {
        const Rat& a = out.breakpoints[k];
        long long diff = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if ((f[i] > a) != (g[i] > a)) ++diff;
        out.integral += (out.breakpoints[k + 1] - a) * diff;
    }
    out.l1_distance = 0;
    for (std::size_t i = 0; i < f.size(); ++i) out.l1_distance += abs(f[i] - g[i]);
    require(out.integral == out.l1_distance, Err::InvariantViolation,
            "threshold integral differs from l1 distance");
    return out;
}

/// Picks the breakpoint minimizing objective(a) = num/den over candidates with
/// den > 0; ties go to the smaller breakpoint. Returns the index, or npos.
template <class Obj>
std::size_t select_threshold(const std::vector<Rat>& breakpoints, Obj&& objective) {
    std::size_t best = static_cast<std::size_t>(-1);
    Rat bn, bd;
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        auto [num, den] = objective(breakpoints[k]);
        if (!(den > 0)) continue;
        if (best == static_cast<std::size_t>(-1) || num * bd < bn * den) {
            best = k;
            bn = num;
            bd = den;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// T1: uniform amenability -> local hyperfiniteness
// ---------------------------------------------------------------------------

namespace detail {

struct NearestProjection {
    std::vector<int> dist;  // distance to B, -1 unreachable
    std::vector<int> tau;   // nearest B-vertex, lowest id among nearest
};

inline NearestProjection nearest_in_set(const Graph& g, const std::vector<int>& B) {
    NearestProjection np;
    np.dist.assign(g.n, -1);
    np.tau.assign(g.n, -1);
    std::vector<int> order;
    std::queue<int> q;
    for (int b : B) {
        np.dist[b] = 0;
        np.tau[b] = b;
        q.push(b);
    }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        order.push_back(u);
        for (int w : g.adj[u])
            if (np.dist[w] < 0) {
                np.dist[w] = np.dist[u] + 1;
                q.push(w);
            }
    }
    // layer-by-layer: tau(y) = min tau over predecessors one step closer to B
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return np.dist[a] != np.dist[b] ? np.dist[a] < np.dist[b] : a < b;
    });
    for (int u : order) {
        if (np.dist[u] == 0) continue;
        int best = -1;
        for (int w : g.adj[u])
            if (np.dist[w] == np.dist[u] - 1 && np.tau[w] >= 0)
                if (best < 0 || np.tau[w] < best) best = np.tau[w];
        np.tau[u] = best;
    }
    return np;
}

using SparseRow = std::vector<std::pair<int, Rat>>;

inline std::size_t sym_diff_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0, s = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j]))
            ++i, ++s;
        else if (i == a.size() || b[j] < a[i])
            ++j, ++s;
        else
            ++i, ++j;
    }
    return s;
}

}  // namespace detail

/// Finds a nonempty A ⊆ B with mu(outer boundary of A in B) <= eps * mu(A)
/// whose induced components have at most N_{2R} vertices. Implements the
/// projection-threshold-coloring argument: push the family onto B through the
/// nearest-point map, scan level-set thresholds for one satisfying the
/// averaged inequality, then select a color class of a distance coloring so
/// the chosen level sets collapse to single marked vertices.
inline std::vector<int> amenable_to_local(const Graph& g, const VertexMeasure& mu,
                                          const ReiterFamily& fam, const std::vector<int>& B,
                                          const Rat* claimed_eps = nullptr) {
    require(!B.empty(), Err::EmptySubset, "amenable_to_local with empty B");
    for (int v : B) check_vertex(g, v, "subset vertex");
    require(mu.size() == g.n, Err::BadParams, "measure size mismatch");
    ReiterQuality quality = reiter_defect(g, fam);
    const Rat eps = claimed_eps ? *claimed_eps : quality.defect;
    const int R = quality.radius;

    detail::NearestProjection np = detail::nearest_in_set(g, B);

    // p_B(x)(z) = total p(x)-mass of the tau-fiber over z; support stays in
    // B_{2R}(x) ∩ B and the pushforward contracts every l1 distance.
    std::vector<detail::SparseRow> pb(g.n);
    std::vector<char> inB(g.n, 0);
    for (int b : B) inB[b] = 1;
    for (int x : B) {
        std::map<int, Rat> acc;
        for (const auto& [t, v] : fam.p[x]) {
            if (v == 0) continue;
            require(np.tau[t] >= 0, Err::InvariantViolation, "support outside B's components");
            acc[np.tau[t]] += v;
        }
        pb[x].assign(acc.begin(), acc.end());
    }
    std::vector<std::vector<int>> nbB(g.n);
    for (int x : B)
        for (int y : g.adj[x])
            if (inB[y]) nbB[x].push_back(y);

    std::vector<Rat> breakpoints{Rat(0)};
    for (int x : B)
        for (const auto& [z, v] : pb[x]) breakpoints.push_back(v);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    // Level sets at threshold a, as plain vertex lists per x in B.
    auto lambda_at = [&](const Rat& a) {
        std::vector<std::vector<int>> lam(g.n);
        for (int x : B) {
            for (const auto& [z, v] : pb[x])
                if (v > a) lam[x].push_back(z);
        }
        return lam;
    };

    // Feasibility of a: sum_x mu(x) sum_{y~x in B} |Lam_x △ Lam_y|
    //                   <= eps * sum_x mu(x) |Lam_x|, with nonzero mass.
    std::size_t best_k = static_cast<std::size_t>(-1);
    Rat best_num, best_den;
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        const Rat& a = breakpoints[k];
        auto lam = lambda_at(a);
        Rat mass = 0, lhs = 0;
        for (int x : B) {
            mass += mu[x] * static_cast<long long>(lam[x].size());
            Rat s = 0;
            for (int y : nbB[x]) s += static_cast<long long>(detail::sym_diff_size(lam[x], lam[y]));
            lhs += mu[x] * s;
        }
        if (!(mass > 0)) continue;
        if (lhs > eps * mass) continue;
        if (best_k == static_cast<std::size_t>(-1) || lhs * best_den < best_num * mass) {
            best_k = k;
            best_num = lhs;
            best_den = mass;
        }
    }
    require(best_k != static_cast<std::size_t>(-1), Err::NoValidThreshold,
            "no level-set threshold satisfies the averaged inequality; family defect "
            "exceeds the claimed epsilon");
    const Rat a_star = breakpoints[best_k];
    auto lam = lambda_at(a_star);

    // Distance coloring: the argument needs distinct colors within 4R+2 so the
    // level sets across one edge collide in at most one vertex per color; the
    // classical radius is 10R, which only falls short at R = 0.
    const int color_radius = std::max(10 * R, 4 * R + 2);
    Coloring phi = distance_power_coloring(g, color_radius);

    std::vector<Rat> lhs_c(phi.num_colors, Rat(0)), mass_c(phi.num_colors, Rat(0));
    for (int x : B) {
        for (int z : lam[x]) mass_c[phi.color[z]] += mu[x];
        for (int y : nbB[x]) {
            std::vector<int> diff;
            std::set_symmetric_difference(lam[x].begin(), lam[x].end(), lam[y].begin(),
                                          lam[y].end(), std::back_inserter(diff));
            for (int z : diff) lhs_c[phi.color[z]] += mu[x];
        }
    }
    int r_star = -1;
    Rat rn, rd;
    for (int r = 0; r < phi.num_colors; ++r) {
        if (!(mass_c[r] > 0)) continue;
        if (lhs_c[r] > eps * mass_c[r]) continue;
        if (r_star < 0 || lhs_c[r] * rd < rn * mass_c[r]) {
            r_star = r;
            rn = lhs_c[r];
            rd = mass_c[r];
        }
    }
    require(r_star >= 0, Err::NoValidThreshold, "no feasible color class at chosen threshold");

    std::vector<int> A;
    for (int x : B)
        for (int z : lam[x])
            if (phi.color[z] == r_star) {
                A.push_back(x);
                break;
            }

    // Contractual postconditions, checked exactly.
    require(!A.empty(), Err::InvariantViolation, "selected subset is empty");
    Rat bd = mu.mass(outer_boundary(g, A, B));
    require(bd <= eps * mu.mass(A), Err::InvariantViolation, "boundary bound failed");
    int bound = max_ball_size(g, 2 * R);
    require(max_component_size_within(g, A) <= bound, Err::InvariantViolation,
            "component exceeds N_{2R}");
    return A;
}

// ---------------------------------------------------------------------------
// T2: local hyperfiniteness -> a global separator by greedy exhaustion
// ---------------------------------------------------------------------------

using LocalOracle = std::function<std::vector<int>(const std::vector<int>&)>;

struct ExhaustionResult {
    KSeparator sep;
    Rat boundary_mass_sum;  // sum of mu(boundary_i), telescopes to mu(T)
    Rat piece_mass_sum;     // sum of mu(A_i), at most mu(V)
    int rounds = 0;
    TransformReport report;
};

/// Peels the graph: X_1 = V, A_i = oracle(X_i), X_{i+1} = X_i minus A_i and its
/// outer boundary; T collects the boundaries. Distinct pieces are never
/// adjacent, so components of G[V \ T] are exactly the oracle pieces.
inline ExhaustionResult local_to_global(const Graph& g, const VertexMeasure& mu,
                                        const LocalOracle& oracle, const Rat& eps, int K) {
    require(mu.size() == g.n, Err::BadParams, "measure size mismatch");
    std::vector<int> X = vset::full(g.n), T;
    ExhaustionResult out;
    out.boundary_mass_sum = 0;
    out.piece_mass_sum = 0;
    while (!X.empty()) {
        require(out.rounds < g.n + 1, Err::InvariantViolation, "exhaustion failed to terminate");
        std::vector<int> A = oracle(X);
        A = vset::normalize(A);
        auto blame = [&](const std::string& what) {
            fail(Err::OracleViolation, what + " on B = " + vset::to_string(X));
        };
        if (A.empty()) blame("oracle returned empty piece");
        if (!vset::is_subset(A, X)) blame("oracle piece not inside B");
        if (max_component_size_within(g, A) > K) blame("oracle piece has component > K");
        std::vector<int> bd = outer_boundary(g, A, X);
        if (mu.mass(bd) > eps * mu.mass(A)) blame("oracle piece breaks the boundary bound");
        out.boundary_mass_sum += mu.mass(bd);
        out.piece_mass_sum += mu.mass(A);
        T = vset::unite(T, bd);
        X = vset::minus(X, vset::unite(A, bd));
        ++out.rounds;
    }
    out.sep = KSeparator{T, K};
    validate_separator(g, out.sep);
    Rat achieved = mu.mass(T) / mu.total;
    require(out.boundary_mass_sum == mu.mass(T), Err::InvariantViolation,
            "boundary masses fail to telescope");
    require(out.boundary_mass_sum <= eps * out.piece_mass_sum, Err::InvariantViolation,
            "telescoped boundary bound failed");
    require(achieved <= eps, Err::InvariantViolation, "separator mass exceeds epsilon");
    out.report = {"local-to-global", eps, K, eps, achieved, K};
    return out;
}

// ---------------------------------------------------------------------------
// T3: uniform hyperfiniteness -> weighted hyperfiniteness (bucket algorithm)
// ---------------------------------------------------------------------------

using UhOracle = std::function<KSeparator(const std::vector<int>&, const Rat&)>;

/// Standard oracle: exact minimum mu-mass K-separator of the induced subgraph.
inline UhOracle exact_uh_oracle(const Graph& g, const VertexMeasure& mu, int K,
                                int budget_n = kDefaultExactSeparatorBudget) {
    return [&g, &mu, K, budget_n](const std::vector<int>& subset, const Rat&) {
        std::vector<int> map;
        Graph h = induced_subgraph(g, subset, &map);
        WeightFunction w;
        for (int v : subset) w.W.push_back(mu[v]);
        KSeparator local = min_weight_separator(h, w, K, SepMode::Exact, budget_n);
        KSeparator out;
        out.K = K;
        for (int i : local.T) out.T.push_back(map[i]);
        out.T = vset::normalize(out.T);
        return out;
    };
}

inline UhOracle greedy_uh_oracle(const Graph& g, const VertexMeasure& mu, int K) {
    return [&g, &mu, K](const std::vector<int>& subset, const Rat&) {
        std::vector<int> map;
        Graph h = induced_subgraph(g, subset, &map);
        WeightFunction w;
        for (int v : subset) w.W.push_back(mu[v]);
        KSeparator local = greedy_separator(h, w, K);
        KSeparator out;
        out.K = K;
        for (int i : local.T) out.T.push_back(map[i]);
        out.T = vset::normalize(out.T);
        return out;
    };
}

struct WeightedSeparatorResult {
    KSeparator sep;  // Z ∪ Z'
    // every intermediate set, exposed for inspection
    std::vector<int> zero_set, residue_set, cascade_set, z_set, z_prime;
    std::vector<std::pair<long long, std::vector<int>>> buckets;   // occupied B_i
    std::vector<std::pair<long long, std::vector<int>>> groups;    // C_t
    std::vector<std::pair<long long, std::vector<int>>> cascades;  // F_t
    long long L = 0;
    long long j_star = 0;
    Rat q, eps_prime, M;
    Rat w_total, w_residue, w_cascade, w_z, w_zprime, mu_zprime_ratio;
    std::vector<std::pair<Rat, Rat>> component_spread;  // (min W, max W) before the oracle
    TransformReport report;
};

/// Bucket construction: group vertices by weight scale q = eps/(3Md), drop the
/// lightest residue class of buckets and all edges that jump down a group,
/// then let the uniform-hyperfiniteness oracle finish on the remainder, where
/// weights within any surviving component differ by at most q^{-L}.
/// W-masses are mu-weighted throughout: W(A) = sum over A of W(x) mu(x).
inline WeightedSeparatorResult uniform_to_weighted(const Graph& g, const VertexMeasure& mu,
                                                   const WeightFunction& W, const Rat& eps,
                                                   const UhOracle& oracle) {
    require(W.size() == g.n, Err::BadParams, "weight size mismatch");
    require(mu.size() == g.n, Err::BadParams, "measure size mismatch");
    require(eps > 0, Err::BadParams, "epsilon must be positive");
    validate_weight(W);

    WeightedSeparatorResult out;
    out.w_total = weighted_mass_all(W, mu);

    const int d = g.max_degree;
    if (d == 0) {  // every vertex is its own component; the empty set separates
        out.sep = KSeparator{{}, 1};
        out.L = ceil_rat(Rat(3) / eps).convert_to<long long>();
        out.report = {"uniform-to-weighted", Rat(0), 1, eps, Rat(0), 1};
        return out;
    }

    out.M = bounded_type_constant(g, mu);
    out.L = ceil_rat(Rat(3) / eps).convert_to<long long>();
    out.q = eps / (3 * out.M * d);
    require(out.q < 1, Err::BadParams, "epsilon must be below 3*M*d");
    out.eps_prime = (eps / 3) * pow_rat(out.q, out.L);

    Rat wmax = 0;
    for (const Rat& x : W.W) wmax = std::max(wmax, x);

    // Bucket index: the unique i >= -1 with q^{i+1} <= W(x)/wmax < q^i.
    std::map<long long, std::vector<int>> buckets;
    std::vector<long long> bucket_of(g.n, 0);
    std::vector<char> is_zero(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        if (W.W[v] == 0) {
            is_zero[v] = 1;
            out.zero_set.push_back(v);
            continue;
        }
        Rat wn = W.W[v] / wmax;
        long long i = -1;
        Rat power = 1;  // q^{i+1} as i advances
        while (wn < power) {
            power *= out.q;
            ++i;
        }
        buckets[i].push_back(v);
        bucket_of[v] = i;
    }
    for (auto& [i, members] : buckets) out.buckets.emplace_back(i, members);

    auto wm = [&](const std::vector<int>& s) { return weighted_mass(W, mu, s); };

    // Residue classes B'_j and the lightest one.
    std::vector<Rat> residue_mass(out.L, Rat(0));
    for (const auto& [i, members] : buckets) {
        long long j = ((i % out.L) + out.L) % out.L;
        residue_mass[j] += wm(members);
    }
    out.j_star = 0;
    for (long long j = 1; j < out.L; ++j)
        if (residue_mass[j] < residue_mass[out.j_star]) out.j_star = j;
    require(residue_mass[out.j_star] * out.L <= out.w_total, Err::InvariantViolation,
            "residue class heavier than the average");
    for (const auto& [i, members] : buckets)
        if (((i % out.L) + out.L) % out.L == out.j_star)
            out.residue_set.insert(out.residue_set.end(), members.begin(), members.end());
    out.residue_set = vset::normalize(out.residue_set);
    out.w_residue = residue_mass[out.j_star];

    // Groups C_t: the L-1 buckets strictly between consecutive removed ones.
    auto floordiv = [](long long a, long long b) {
        long long q0 = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q0;
        return q0;
    };
    std::map<long long, std::vector<int>> groups;
    std::vector<long long> group_of(g.n, 0);
    std::vector<char> grouped(g.n, 0);
    for (const auto& [i, members] : buckets) {
        if (((i % out.L) + out.L) % out.L == out.j_star) continue;
        long long t = floordiv(i - out.j_star - 1, out.L);
        for (int v : members) {
            groups[t].push_back(v);
            group_of[v] = t;
            grouped[v] = 1;
        }
    }
    for (auto& [t, members] : groups) {
        members = vset::normalize(members);
        out.groups.emplace_back(t, members);
    }

    // Cascade sets F_t: vertices in lower-weight groups adjacent to C_t.
    std::map<long long, std::vector<int>> cascades;
    for (int x = 0; x < g.n; ++x) {
        if (!grouped[x]) continue;
        for (int y : g.adj[x])
            if (grouped[y] && group_of[y] < group_of[x]) cascades[group_of[y]].push_back(x);
    }
    for (auto& [t, members] : cascades) {
        members = vset::normalize(members);
        out.cascades.emplace_back(t, members);
        out.cascade_set = vset::unite(out.cascade_set, members);
        // the jump-down inequalities, asserted exactly
        const std::vector<int>& ct = groups[t];
        require(wm(members) * 3 <= eps * wm(ct), Err::InvariantViolation,
                "cascade mass bound failed for group " + std::to_string(t));
        require(mu.mass(members) <= out.M * d * mu.mass(ct), Err::InvariantViolation,
                "cascade measure bound failed for group " + std::to_string(t));
    }
    out.w_cascade = wm(out.cascade_set);

    out.z_set = vset::unite(vset::unite(out.residue_set, out.cascade_set),
                            out.zero_set);
    out.w_z = wm(out.z_set);
    require(out.w_z * 3 <= 2 * eps * out.w_total, Err::InvariantViolation,
            "Z exceeds two thirds of the weighted budget");

    // Surviving components live inside a single group: weight spread <= q^{-L}.
    std::vector<int> rest = vset::minus(vset::full(g.n), out.z_set);
    Rat spread_bound = pow_rat(out.q, -out.L);
    for (const auto& comp : components_within(g, rest)) {
        Rat lo = W.W[comp[0]], hi = W.W[comp[0]];
        long long t0 = group_of[comp[0]];
        for (int v : comp) {
            require(grouped[v] && group_of[v] == t0, Err::InvariantViolation,
                    "surviving component crosses groups");
            lo = std::min(lo, W.W[v]);
            hi = std::max(hi, W.W[v]);
        }
        require(hi <= spread_bound * lo, Err::InvariantViolation,
                "component weight spread exceeds q^{-L}");
        out.component_spread.emplace_back(lo, hi);
    }

    int k_out = 1;
    if (!rest.empty()) {
        KSeparator zp = oracle(rest, out.eps_prime);
        require(vset::is_subset(zp.T, rest), Err::OracleViolation,
                "oracle separator leaves the queried subset");
        std::vector<int> kept = vset::minus(rest, zp.T);
        require(max_component_size_within(g, kept) <= zp.K, Err::OracleViolation,
                "oracle separator leaves a component above its K");
        require(mu.mass(zp.T) <= out.eps_prime * mu.mass(rest), Err::OracleViolation,
                "oracle separator heavier than eps' within the subset");
        out.z_prime = zp.T;
        out.mu_zprime_ratio = mu.mass(rest) > 0 ? mu.mass(zp.T) / mu.mass(rest) : Rat(0);
        k_out = std::max(zp.K, 1);
    }
    out.w_zprime = wm(out.z_prime);

    out.sep = KSeparator{vset::unite(out.z_set, out.z_prime), k_out};
    validate_separator(g, out.sep);
    Rat achieved_mass = wm(out.sep.T);
    if (achieved_mass > eps * out.w_total) {
        std::string diag = "weighted separator exceeds eps*W(V): W(Z u Z') = " +
                           to_fraction_string(achieved_mass) + ", W(V) = " +
                           to_fraction_string(out.w_total) + ", W(Z') = " +
                           to_fraction_string(out.w_zprime) + ", mu(Z')/mu(rest) = " +
                           to_fraction_string(out.mu_zprime_ratio);
        for (const auto& [lo, hi] : out.component_spread)
            diag += ", spread " + to_fraction_string(lo) + ".." + to_fraction_string(hi);
        fail(Err::InvariantViolation, diag);
    }
    Rat achieved = out.w_total > 0 ? achieved_mass / out.w_total : Rat(0);
    out.report = {"uniform-to-weighted", out.eps_prime, k_out, eps, achieved, k_out};
    return out;
}

// ---------------------------------------------------------------------------
// T4: weighted hyperfiniteness -> a separator distribution, or a witness
// ---------------------------------------------------------------------------

/// Finite separation dichotomy: either a distribution over K-separators covers
/// no vertex more than eps, or a nonnegative weight function certifies that
/// every K-separator carries more than an eps-fraction of the total weight.
struct DistributionOrWitness {
    bool feasible = false;
    SeparatorDistribution dist;
    WeightFunction witness;
    Rat game_value;
};

inline DistributionOrWitness weighted_to_distribution(const Graph& g, int K, const Rat& eps,
                                                      std::size_t cap = 2'000'000) {
    GameSolution sol = separator_game_exact(g, K, cap);
    DistributionOrWitness out;
    out.game_value = sol.lower;
    if (sol.lower <= eps) {
        out.feasible = true;
        out.dist = sol.primal;
    } else {
        out.feasible = false;
        out.witness = sol.dual;  // W(Y) >= value > eps * W(V) for every K-separator Y
    }
    return out;
}

// ---------------------------------------------------------------------------
// T5: separator distribution -> fractional partition
// ---------------------------------------------------------------------------

struct PartitionTransformResult {
    FractionalKPartition partition;
    Coverage cov;
    BoundaryProfile boundary;
    TransformReport report;
};

/// Phi_t = sum t_i Phi_{Y_i}. The boundary load obeys the pointwise bound
/// dPhi_t(x) <= sum of coverage over the closed unit ball at x, hence also
/// (d+1) * max coverage; both are asserted exactly on every run.
inline PartitionTransformResult distribution_to_partition(const Graph& g,
                                                          const SeparatorDistribution& nu) {
    validate_distribution(g, nu);
    PartitionTransformResult out;
    out.cov = coverage(g, nu);
    out.partition = mix_partitions(g, nu);
    validate_partition(g, out.partition);
    out.boundary = boundary_operator(g, out.partition);
    for (int x = 0; x < g.n; ++x) {
        Rat closed_ball = out.cov.c[x];
        for (int y : g.adj[x]) closed_ball += out.cov.c[y];
        require(out.boundary.del[x] <= closed_ball, Err::InvariantViolation,
                "pointwise boundary bound failed at vertex " + std::to_string(x));
    }
    Rat guaranteed = (g.max_degree + 1) * out.cov.max_coverage;
    require(out.boundary.max_del <= guaranteed, Err::InvariantViolation,
            "boundary load exceeds (d+1) * coverage");
    out.report = {"distribution-to-partition", out.cov.max_coverage, nu.K,
                  guaranteed, out.boundary.max_del, out.partition.K};
    return out;
}

/// Measured level-set comparison: mu(Q_{Phi_t, eps}) <= (d+1) M mu(S_{t, eps/(d+1)}).
/// Returns both masses for test assertions on weighted instances.
inline std::pair<Rat, Rat> level_set_comparison(const Graph& g, const VertexMeasure& mu,
                                                const SeparatorDistribution& nu,
                                                const Rat& eps) {
    Coverage cov = coverage(g, nu);
    FractionalKPartition phi = mix_partitions(g, nu);
    BoundaryProfile b = boundary_operator(g, phi);
    Rat mq = mu.mass(boundary_level_set(b, eps));
    Rat ms = mu.mass(coverage_level_set(cov, eps / (g.max_degree + 1)));
    Rat M = bounded_type_constant(g, mu);
    require(mq <= (g.max_degree + 1) * M * ms, Err::InvariantViolation,
            "measured level-set comparison failed");
    return {mq, ms};
}

// ---------------------------------------------------------------------------
// T6: fractional partition -> Reiter family
// ---------------------------------------------------------------------------

struct ReiterTransformResult {
    ReiterFamily family;
    ReiterQuality quality;
    BoundaryProfile boundary;
    TransformReport report;
};

/// p(x) = sum over supported A containing x of Phi(A) * (uniform on A).
/// Supports live in B_{K-1}(x); across an edge the l1 distance is at most
/// dPhi(x) + dPhi(y), so the per-vertex defect is at most 2*d*max(dPhi).
inline ReiterTransformResult partition_to_reiter(const Graph& g,
                                                 const FractionalKPartition& phi) {
    validate_partition(g, phi);
    ReiterTransformResult out;
    out.boundary = boundary_operator(g, phi);

    out.family.R = std::max(phi.K - 1, 0);
    out.family.p.resize(g.n);
    std::vector<std::map<int, Rat>> acc(g.n);
    for (const auto& [A, w] : phi.support) {
        Rat share = w / static_cast<long long>(A.size());
        for (int x : A)
            for (int z : A) acc[x][z] += share;
    }
    for (int x = 0; x < g.n; ++x) out.family.p[x].assign(acc[x].begin(), acc[x].end());

    // Per-edge chain, asserted exactly:
    //   ||p(x)-p(y)||_1 <= Phi(x only) + Phi(y only) <= dPhi(x) + dPhi(y).
    for (int x = 0; x < g.n; ++x)
        for (int y : g.adj[x]) {
            if (y < x) continue;
            Rat only_x = 0, only_y = 0;
            for (const auto& [A, w] : phi.support) {
                bool hx = vset::contains(A, x), hy = vset::contains(A, y);
                if (hx && !hy) only_x += w;
                if (hy && !hx) only_y += w;
            }
            Rat dist = l1_distance_sparse(out.family.p[x], out.family.p[y]);
            require(dist <= only_x + only_y, Err::InvariantViolation,
                    "edge l1 distance exceeds the one-sided sums");
            require(only_x <= out.boundary.del[x] && only_y <= out.boundary.del[y],
                    Err::InvariantViolation, "one-sided sums exceed boundary loads");
        }

    out.quality = reiter_defect(g, out.family);
    Rat guaranteed = 2 * out.boundary.max_del * g.max_degree;
    require(out.quality.defect <= guaranteed, Err::InvariantViolation,
            "family defect exceeds 2*eps*d");
    out.report = {"partition-to-reiter", out.boundary.max_del, phi.K,
                  guaranteed, out.quality.defect, out.family.R};
    return out;
}

// ---------------------------------------------------------------------------
// The full cycle
// ---------------------------------------------------------------------------

struct ChainResult {
    std::vector<TransformReport> stages;
    Rat defect_in;
    KSeparator separator;
    SeparatorDistribution dist;
    FractionalKPartition partition;
    ReiterFamily family;
    Rat final_defect;
    Rat composed_bound;  // 2 d (d+1) * game value, the bound the chain promises
};

/// Runs amenability -> local -> global separator -> game distribution ->
/// partition -> Reiter family, reporting guaranteed and achieved constants at
/// each stage.
inline ChainResult full_cycle(const Graph& g, const VertexMeasure& mu, const ReiterFamily& fam,
                              std::size_t cap = 2'000'000) {
    ChainResult out;
    ReiterQuality q0 = reiter_defect(g, fam);
    out.defect_in = q0.defect;
    const Rat eps0 = q0.defect;
    const int K1 = max_ball_size(g, 2 * q0.radius);

    Rat worst_ratio = 0;
    LocalOracle oracle = [&](const std::vector<int>& B) {
        std::vector<int> A = amenable_to_local(g, mu, fam, B, &eps0);
        Rat bd = mu.mass(outer_boundary(g, A, B));
        Rat ratio = bd / mu.mass(A);
        worst_ratio = std::max(worst_ratio, ratio);
        return A;
    };
    ExhaustionResult t2 = local_to_global(g, mu, oracle, eps0, K1);
    out.stages.push_back({"amenable-to-local", eps0, q0.radius, eps0, worst_ratio, K1});
    out.stages.push_back(t2.report);
    out.separator = t2.sep;

    GameSolution game = separator_game_exact(g, K1, cap);
    out.dist = game.primal;
    out.stages.push_back(
        {"weighted-to-distribution", t2.report.eps_achieved, K1, Rat(1), game.lower, K1});

    PartitionTransformResult t5 = distribution_to_partition(g, out.dist);
    out.partition = t5.partition;
    out.stages.push_back(t5.report);

    ReiterTransformResult t6 = partition_to_reiter(g, out.partition);
    out.family = t6.family;
    out.stages.push_back(t6.report);

    out.final_defect = t6.quality.defect;
    out.composed_bound = 2 * g.max_degree * (g.max_degree + 1) * game.lower;
    require(out.final_defect <= out.composed_bound, Err::InvariantViolation,
            "final defect exceeds the composed bound");
    return out;
}

}  // namespace hypercert
