#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypercert/certificates.hpp"
#include "hypercert/errors.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/measure.hpp"
#include "hypercert/rational.hpp"
#include "hypercert/solvers.hpp"
#include "hypercert/transforms.hpp"

namespace hypercert {

using json = nlohmann::json;

inline Rat rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_unsigned()) return Rat(static_cast<long long>(j.get<std::uint64_t>()));
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    fail(Err::ParseError, "expected a rational (string \"p/q\" or number)");
}

inline json rational_to_json(const Rat& r) { return json(to_fraction_string(r)); }

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

struct GraphBundle {
    Graph graph;
    VertexMeasure measure;
    bool measure_given = false;
};

inline json graph_to_json(const Graph& g, const VertexMeasure* mu = nullptr) {
    json j;
    j["n"] = g.n;
    json edges = json::array();
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v])
            if (v < w) edges.push_back(json::array({v, w}));
    j["edges"] = std::move(edges);
    if (mu) {
        json m = json::array();
        for (int v = 0; v < g.n; ++v) m.push_back(to_fraction_string((*mu)[v]));
        j["measure"] = std::move(m);
    }
    return j;
}

inline GraphBundle graph_from_json(const json& j) {
    require(j.is_object() && j.contains("n") && j.contains("edges"), Err::ParseError,
            "graph JSON needs fields 'n' and 'edges'");
    GraphBundle b;
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        require(e.is_array() && e.size() == 2, Err::ParseError, "edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    b.graph = build_graph(n, edges);
    if (j.contains("measure")) {
        const auto& m = j.at("measure");
        require(m.is_array() && static_cast<int>(m.size()) == n, Err::ParseError,
                "measure must list one weight per vertex");
        std::vector<Rat> w;
        for (const auto& x : m) w.push_back(rational_from_json(x));
        b.measure = VertexMeasure::from_weights(std::move(w));
        b.measure_given = true;
    } else {
        b.measure = VertexMeasure::uniform(std::max(n, 1));
        b.measure_given = false;
    }
    return b;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

inline json separator_to_json(const KSeparator& s) {
    return json{{"K", s.K}, {"T", s.T}};
}

inline KSeparator separator_from_json(const json& j) {
    require(j.contains("K") && j.contains("T"), Err::ParseError, "separator needs 'K' and 'T'");
    KSeparator s;
    s.K = j.at("K").get<int>();
    for (const auto& v : j.at("T")) s.T.push_back(v.get<int>());
    s.T = vset::normalize(s.T);
    return s;
}

inline json distribution_to_json(const SeparatorDistribution& nu) {
    json atoms = json::array();
    for (const auto& [sep, p] : nu.atoms)
        atoms.push_back(json{{"T", sep.T}, {"p", to_fraction_string(p)}});
    return json{{"K", nu.K}, {"atoms", std::move(atoms)}};
}

inline SeparatorDistribution distribution_from_json(const json& j) {
    require(j.contains("K") && j.contains("atoms"), Err::ParseError,
            "distribution needs 'K' and 'atoms'");
    SeparatorDistribution nu;
    nu.K = j.at("K").get<int>();
    for (const auto& a : j.at("atoms")) {
        require(a.contains("T") && a.contains("p"), Err::ParseError, "atom needs 'T' and 'p'");
        KSeparator sep;
        sep.K = nu.K;
        for (const auto& v : a.at("T")) sep.T.push_back(v.get<int>());
        sep.T = vset::normalize(sep.T);
        nu.atoms.emplace_back(std::move(sep), rational_from_json(a.at("p")));
    }
    return nu;
}

inline json partition_to_json(const FractionalKPartition& phi) {
    json support = json::array();
    for (const auto& [A, w] : phi.support)
        support.push_back(json{{"A", A}, {"phi", to_fraction_string(w)}});
    return json{{"K", phi.K}, {"support", std::move(support)}};
}

inline FractionalKPartition partition_from_json(const json& j) {
    require(j.contains("K") && j.contains("support"), Err::ParseError,
            "partition needs 'K' and 'support'");
    FractionalKPartition phi;
    phi.K = j.at("K").get<int>();
    for (const auto& s : j.at("support")) {
        require(s.contains("A") && s.contains("phi"), Err::ParseError,
                "support entry needs 'A' and 'phi'");
        std::vector<int> A;
        for (const auto& v : s.at("A")) A.push_back(v.get<int>());
        phi.support[vset::normalize(A)] += rational_from_json(s.at("phi"));
    }
    return phi;
}

/// Rows may be dense (one value per vertex) or sparse ([vertex, value] pairs).
inline json reiter_to_json(const ReiterFamily& fam) {
    json rows = json::array();
    for (const auto& row : fam.p) {
        json r = json::array();
        for (const auto& [z, v] : row) r.push_back(json::array({z, to_fraction_string(v)}));
        rows.push_back(std::move(r));
    }
    return json{{"R", fam.R}, {"p", std::move(rows)}};
}

inline ReiterFamily reiter_from_json(const json& j) {
    require(j.contains("R") && j.contains("p"), Err::ParseError, "family needs 'R' and 'p'");
    ReiterFamily fam;
    fam.R = j.at("R").get<int>();
    for (const auto& row : j.at("p")) {
        require(row.is_array(), Err::ParseError, "family row must be an array");
        std::vector<std::pair<int, Rat>> r;
        if (!row.empty() && row[0].is_array()) {
            for (const auto& pr : row) {
                require(pr.is_array() && pr.size() == 2, Err::ParseError,
                        "sparse entry must be [vertex, value]");
                r.emplace_back(pr[0].get<int>(), rational_from_json(pr[1]));
            }
        } else {
            for (std::size_t z = 0; z < row.size(); ++z) {
                Rat v = rational_from_json(row[z]);
                if (v != 0) r.emplace_back(static_cast<int>(z), v);
            }
        }
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        fam.p.push_back(std::move(r));
    }
    return fam;
}

enum class CertKind { Separator, Distribution, Partition, Reiter };

inline const char* cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::Separator: return "separator";
        case CertKind::Distribution: return "distribution";
        case CertKind::Partition: return "partition";
        case CertKind::Reiter: return "reiter";
    }
    return "unknown";
}

struct AnyCert {
    CertKind kind;
    KSeparator separator;
    SeparatorDistribution distribution;
    FractionalKPartition partition;
    ReiterFamily reiter;
};

inline AnyCert cert_from_json(const json& j) {
    require(j.is_object(), Err::ParseError, "certificate must be a JSON object");
    AnyCert c;
    if (j.contains("T")) {
        c.kind = CertKind::Separator;
        c.separator = separator_from_json(j);
    } else if (j.contains("atoms")) {
        c.kind = CertKind::Distribution;
        c.distribution = distribution_from_json(j);
    } else if (j.contains("support")) {
        c.kind = CertKind::Partition;
        c.partition = partition_from_json(j);
    } else if (j.contains("p")) {
        c.kind = CertKind::Reiter;
        c.reiter = reiter_from_json(j);
    } else {
        fail(Err::ParseError, "certificate type not recognized");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Reports and solutions
// ---------------------------------------------------------------------------

inline json report_to_json(const TransformReport& r) {
    return json{{"stage", r.stage},
                {"eps_in", to_fraction_string(r.eps_in)},
                {"k_in", r.k_in},
                {"eps_guaranteed", to_fraction_string(r.eps_guaranteed)},
                {"eps_achieved", to_fraction_string(r.eps_achieved)},
                {"k_out", r.k_out}};
}

inline json game_solution_to_json(const GameSolution& sol, int K) {
    json j;
    j["K"] = K;
    j["lower"] = to_fraction_string(sol.lower);
    j["upper"] = to_fraction_string(sol.upper);
    j["exact"] = sol.exact;
    j["lower_certified"] = sol.lower_certified;
    j["iterations"] = sol.iterations;
    j["primal"] = distribution_to_json(sol.primal);
    json w = json::array();
    for (const Rat& x : sol.dual.W) w.push_back(to_fraction_string(x));
    j["dual"] = json{{"W", std::move(w)}};
    return j;
}

// ---------------------------------------------------------------------------
// Files and manifests
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Err::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad JSON in ") + path + ": " + e.what());
    }
}

/// Atomic write: temp file in place, then rename.
inline void write_file_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), Err::ParseError, "cannot write " + tmp);
        out << bytes;
    }
    require(std::rename(tmp.c_str(), path.c_str()) == 0, Err::ParseError,
            "cannot rename into " + path);
}

inline void write_json_atomic(const std::string& path, const json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace hypercert
