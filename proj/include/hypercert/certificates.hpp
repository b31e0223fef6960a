#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/measure.hpp"
#include "hypercert/rational.hpp"

namespace hypercert {

// ---------------------------------------------------------------------------
// K-separators
// ---------------------------------------------------------------------------

/// Vertex set T whose removal leaves components of at most K vertices.
struct KSeparator {
    std::vector<int> T;  // sorted
    int K = 0;
};

struct SeparatorQuality {
    Rat mass;           // mu(T) / mu(V)
    int max_component;  // largest component of G[V \ T]
};

inline SeparatorQuality separator_quality(const Graph& g, const VertexMeasure& mu,
                                          const KSeparator& sep) {
    for (int v : sep.T) check_vertex(g, v, "separator vertex");
    require(mu.size() == g.n, Err::BadParams, "measure size mismatch");
    std::vector<int> rest = vset::minus(vset::full(g.n), sep.T);
    SeparatorQuality q;
    q.mass = mu.mass(sep.T) / mu.total;
    q.max_component = max_component_size_within(g, rest);
    return q;
}

inline bool is_valid_separator(const Graph& g, const KSeparator& sep) {
    std::vector<int> rest = vset::minus(vset::full(g.n), sep.T);
    return max_component_size_within(g, rest) <= sep.K;
}

inline void validate_separator(const Graph& g, const KSeparator& sep) {
    require(sep.K >= 0, Err::InvariantViolation, "separator with negative K");
    std::vector<int> t = sep.T;
    require(std::is_sorted(t.begin(), t.end()) && std::adjacent_find(t.begin(), t.end()) == t.end(),
            Err::InvariantViolation, "separator vertex list not sorted/unique");
    for (int v : t) check_vertex(g, v, "separator vertex");
    require(is_valid_separator(g, sep), Err::InvariantViolation,
            "component of G \\ T exceeds K=" + std::to_string(sep.K));
}

// ---------------------------------------------------------------------------
// Separator distributions
// ---------------------------------------------------------------------------

/// Finitely supported probability distribution over K-separators (all atoms
/// share the same K, probabilities are positive rationals summing to 1).
struct SeparatorDistribution {
    int K = 0;
    std::vector<std::pair<KSeparator, Rat>> atoms;
};

inline void validate_distribution(const Graph& g, const SeparatorDistribution& nu) {
    require(!nu.atoms.empty(), Err::InvariantViolation, "distribution with no atoms");
    Rat total = 0;
    for (const auto& [sep, p] : nu.atoms) {
        require(p > 0, Err::InvariantViolation, "atom probability not positive");
        require(sep.K == nu.K, Err::InvariantViolation, "atom K differs from distribution K");
        validate_separator(g, sep);
        total += p;
    }
    require(total == 1, Err::InvariantViolation,
            "atom probabilities sum to " + to_fraction_string(total));
}

struct Coverage {
    std::vector<Rat> c;  // barycenter: c(x) = sum of atom probabilities with x in T
    Rat max_coverage;
};

inline Coverage coverage(const Graph& g, const SeparatorDistribution& nu) {
    Coverage cov;
    cov.c.assign(g.n, Rat(0));
    for (const auto& [sep, p] : nu.atoms)
        for (int v : sep.T) cov.c[v] += p;
    cov.max_coverage = 0;
    for (const Rat& x : cov.c) cov.max_coverage = std::max(cov.max_coverage, x);
    return cov;
}

/// S_{t,eps}: vertices whose coverage is at least eps.
inline std::vector<int> coverage_level_set(const Coverage& cov, const Rat& eps) {
    std::vector<int> out;
    for (std::size_t v = 0; v < cov.c.size(); ++v)
        if (cov.c[v] >= eps) out.push_back(static_cast<int>(v));
    return out;
}

// ---------------------------------------------------------------------------
// Fractional K-partitions
// ---------------------------------------------------------------------------

/// Nonnegative weights on connected <=K-subsets with unit vertex sums:
/// Phi*(x) = sum over supported sets containing x equals 1 for every vertex.
struct FractionalKPartition {
    int K = 0;
    std::map<std::vector<int>, Rat> support;  // sorted vertex list -> positive weight
};

inline std::vector<Rat> partition_vertex_sums(const Graph& g, const FractionalKPartition& phi) {
    std::vector<Rat> star(g.n, Rat(0));
    for (const auto& [A, w] : phi.support)
        for (int v : A) star[v] += w;
    return star;
}

inline void validate_partition(const Graph& g, const FractionalKPartition& phi,
                               const Rat* tolerance = nullptr) {
    require(phi.K >= 1, Err::InvariantViolation, "partition with K < 1");
    for (const auto& [A, w] : phi.support) {
        require(w > 0, Err::InvariantViolation, "partition weight not positive");
        require(static_cast<int>(A.size()) <= phi.K, Err::InvariantViolation,
                "supported set " + vset::to_string(A) + " larger than K");
        require(is_connected_subset(g, A), Err::InvariantViolation,
                "supported set " + vset::to_string(A) + " not connected");
    }
    std::vector<Rat> star = partition_vertex_sums(g, phi);
    for (int v = 0; v < g.n; ++v) {
        bool ok = tolerance ? abs(star[v] - 1) <= *tolerance : star[v] == 1;
        require(ok, Err::InvariantViolation,
                "Phi*(" + std::to_string(v) + ") = " + to_fraction_string(star[v]));
    }
}

struct BoundaryProfile {
    std::vector<Rat> del;  // boundary operator: total weight of sets whose inner boundary has x
    Rat max_del;
};

inline BoundaryProfile boundary_operator(const Graph& g, const FractionalKPartition& phi) {
    BoundaryProfile b;
    b.del.assign(g.n, Rat(0));
    for (const auto& [A, w] : phi.support)
        for (int v : inner_boundary(g, A)) b.del[v] += w;
    b.max_del = 0;
    for (const Rat& x : b.del) b.max_del = std::max(b.max_del, x);
    return b;
}

/// Q_{Phi,eps}: vertices with boundary value at least eps.
inline std::vector<int> boundary_level_set(const BoundaryProfile& b, const Rat& eps) {
    std::vector<int> out;
    for (std::size_t v = 0; v < b.del.size(); ++v)
        if (b.del[v] >= eps) out.push_back(static_cast<int>(v));
    return out;
}

/// Phi_Y: weight 1 on each singleton {y}, y in T, and on each component of
/// G[V \ T]. A separator valid for its K yields a genuine K-partition.
inline FractionalKPartition separator_to_partition(const Graph& g, const KSeparator& sep) {
    for (int v : sep.T) check_vertex(g, v, "separator vertex");
    FractionalKPartition phi;
    phi.K = std::max(sep.K, 1);  // the T=V separator is valid at K=0 but its pieces are singletons
    for (int v : sep.T) phi.support[{v}] = 1;
    std::vector<int> rest = vset::minus(vset::full(g.n), sep.T);
    for (auto& comp : components_within(g, rest)) {
        require(static_cast<int>(comp.size()) <= sep.K, Err::ComponentTooLarge,
                "component " + vset::to_string(comp) + " exceeds K=" + std::to_string(sep.K));
        phi.support[comp] = 1;
    }
    return phi;
}

/// Phi_t = sum t_i * Phi_{Y_i}; vertex sums stay exactly 1.
inline FractionalKPartition mix_partitions(const Graph& g, const SeparatorDistribution& nu) {
    FractionalKPartition phi;
    phi.K = std::max(nu.K, 1);
    for (const auto& [sep, p] : nu.atoms) {
        FractionalKPartition part = separator_to_partition(g, sep);
        for (const auto& [A, w] : part.support) phi.support[A] += p * w;
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Reiter families
// ---------------------------------------------------------------------------

/// Per-vertex probability measures p(x) with Supp(p(x)) ⊆ B_R(x). Rows are
/// sparse (vertex, weight) pairs sorted by vertex.
struct ReiterFamily {
    int R = 0;
    std::vector<std::vector<std::pair<int, Rat>>> p;

    int size() const { return static_cast<int>(p.size()); }
};

inline void validate_reiter(const Graph& g, const ReiterFamily& fam) {
    require(fam.size() == g.n, Err::InvariantViolation, "family row count differs from n");
    require(fam.R >= 0, Err::InvariantViolation, "negative support radius");
    for (int x = 0; x < g.n; ++x) {
        Rat total = 0;
        int prev = -1;
        std::vector<int> support;
        for (const auto& [z, val] : fam.p[x]) {
            check_vertex(g, z, "support vertex");
            require(z > prev, Err::InvariantViolation, "row support not sorted/unique");
            prev = z;
            require(val >= 0, Err::NotProbability,
                    "negative mass in p(" + std::to_string(x) + ")");
            if (val > 0) support.push_back(z);
            total += val;
        }
        require(total == 1, Err::NotProbability,
                "p(" + std::to_string(x) + ") sums to " + to_fraction_string(total));
        std::vector<int> allowed = ball(g, x, fam.R);
        require(vset::is_subset(support, allowed), Err::SupportViolation,
                "Supp(p(" + std::to_string(x) + ")) leaves B_" + std::to_string(fam.R));
    }
}

inline Rat l1_distance_sparse(const std::vector<std::pair<int, Rat>>& a,
                              const std::vector<std::pair<int, Rat>>& b) {
    Rat s = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            s += abs(a[i++].second);
        else if (i == a.size() || b[j].first < a[i].first)
            s += abs(b[j++].second);
        else {
            s += abs(a[i].second - b[j].second);
            ++i, ++j;
        }
    }
    return s;
}

struct ReiterQuality {
    Rat defect;  // max over x of sum over neighbors y of ||p(x) - p(y)||_1
    int radius;  // minimal R containing all supports
};

inline ReiterQuality reiter_defect(const Graph& g, const ReiterFamily& fam) {
    validate_reiter(g, fam);
    ReiterQuality q;
    q.defect = 0;
    q.radius = 0;
    for (int x = 0; x < g.n; ++x) {
        Rat s = 0;
        for (int y : g.adj[x]) s += l1_distance_sparse(fam.p[x], fam.p[y]);
        q.defect = std::max(q.defect, s);
        std::vector<int> dist = bfs_distances(g, x);
        for (const auto& [z, val] : fam.p[x])
            if (val > 0) q.radius = std::max(q.radius, dist[z]);
    }
    return q;
}

/// The window family: p(x) uniform on B_R(x). The generic uniform-amenability
/// certificate used throughout the tests and the CLI.
inline ReiterFamily ball_uniform_family(const Graph& g, int R) {
    ReiterFamily fam;
    fam.R = R;
    fam.p.resize(g.n);
    for (int x = 0; x < g.n; ++x) {
        std::vector<int> b = ball(g, x, R);
        Rat each(1, static_cast<long long>(b.size()));
        for (int z : b) fam.p[x].emplace_back(z, each);
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Weight functions
// ---------------------------------------------------------------------------

/// Nonnegative vertex weights with at least one positive entry.
struct WeightFunction {
    std::vector<Rat> W;

    int size() const { return static_cast<int>(W.size()); }

    static WeightFunction uniform(int n) {
        WeightFunction f;
        f.W.assign(n, Rat(1));
        return f;
    }

    Rat sum(const std::vector<int>& A) const {
        Rat s = 0;
        for (int v : A) s += W[v];
        return s;
    }

    Rat sum_all() const {
        Rat s = 0;
        for (const Rat& x : W) s += x;
        return s;
    }
};

inline void validate_weight(const WeightFunction& f) {
    bool positive = false;
    for (const Rat& x : f.W) {
        require(x >= 0, Err::InvariantViolation, "negative weight");
        if (x > 0) positive = true;
    }
    require(positive, Err::ZeroWeight, "weight function identically zero");
}

/// mu-weighted mass of W on A: the finite form of the integral of W over A.
inline Rat weighted_mass(const WeightFunction& f, const VertexMeasure& mu,
                         const std::vector<int>& A) {
    Rat s = 0;
    for (int v : A) s += f.W[v] * mu[v];
    return s;
}

inline Rat weighted_mass_all(const WeightFunction& f, const VertexMeasure& mu) {
    Rat s = 0;
    for (int v = 0; v < f.size(); ++v) s += f.W[v] * mu[v];
    return s;
}

}  // namespace hypercert
