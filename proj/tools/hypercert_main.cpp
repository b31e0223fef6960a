// Command-line front end: graph and certificate I/O, certificate validation,
// the transform pipeline, the separator game and partition LP, and CSV
// profiles. Every command embeds a manifest (command line, input digests,
// seed, mode, caps) in its outputs so runs can be replayed bit for bit.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypercert/certificates.hpp"
#include "hypercert/generators.hpp"
#include "hypercert/graph.hpp"
#include "hypercert/json_io.hpp"
#include "hypercert/solvers.hpp"
#include "hypercert/transforms.hpp"
#include "hypercert/version.hpp"

using namespace hypercert;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct GlobalOpts {
    std::string mode = "rational";
    std::uint64_t cap = 2'000'000;
    int budget = 60;
    std::uint64_t seed = 1;
    std::string out;
    std::vector<std::string> argv;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
};

json make_manifest(const GlobalOpts& g) {
    json inputs = json::object();
    for (const auto& [path, digest] : g.inputs) inputs[path] = digest;
    return json{{"tool", "hypercert"}, {"version", kVersion},
                {"command", g.argv},   {"inputs", std::move(inputs)},
                {"seed", g.seed},      {"mode", g.mode},
                {"cap", g.cap},        {"budget", g.budget}};
}

json load_input(GlobalOpts& g, const std::string& path) {
    std::string bytes = read_file(path);
    std::ostringstream hex;
    hex << std::hex << fnv1a64(bytes);
    g.inputs.emplace_back(path, hex.str());
    try {
        return json::parse(bytes);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad JSON in ") + path + ": " + e.what());
    }
}

void emit(const GlobalOpts& g, json j, const std::string& fallback_path) {
    j["manifest"] = make_manifest(g);
    std::string path = g.out.empty() ? fallback_path : g.out;
    if (path == "-")
        std::cout << j.dump(2) << "\n";
    else {
        write_json_atomic(path, j);
        std::cout << "wrote " << path << "\n";
    }
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Err::Budget:
        case Err::ExplosionCap:
            return kExitBudget;
        case Err::OracleViolation:
        case Err::NoValidThreshold:
            return kExitFail;
        default:
            return kExitInput;
    }
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateOpts {
    std::string family;
    int n = 12, rows = 4, cols = 4, arity = 2, depth = 3, d = 3;
    int cycle = 12, spacing = 12, rank = 2, radius = 3;
    std::vector<int> gadgets;
    std::vector<std::uint64_t> gadget_seeds;
    std::string base;
};

int cmd_generate(GlobalOpts& g, const GenerateOpts& o) {
    json out;
    if (o.family == "cycle")
        out = graph_to_json(make_cycle(o.n));
    else if (o.family == "path")
        out = graph_to_json(make_path(o.n));
    else if (o.family == "grid")
        out = graph_to_json(make_grid(o.rows, o.cols));
    else if (o.family == "torus")
        out = graph_to_json(make_torus(o.rows, o.cols));
    else if (o.family == "complete")
        out = graph_to_json(make_complete(o.n));
    else if (o.family == "tree")
        out = graph_to_json(make_tree(o.arity, o.depth));
    else if (o.family == "regular")
        out = graph_to_json(random_regular(o.n, o.d, g.seed));
    else if (o.family == "hybrid1" || o.family == "example2") {
        std::vector<std::pair<int, std::uint64_t>> specs;
        for (std::size_t i = 0; i < o.gadgets.size(); ++i) {
            std::uint64_t seed = i < o.gadget_seeds.size() ? o.gadget_seeds[i] : g.seed + i;
            specs.emplace_back(o.gadgets[i], seed);
        }
        HybridGraph h = hybrid_example1(o.cycle, specs, o.spacing);
        if (o.family == "example2") {
            VertexMeasure nu = geometric_measure_example2(h);
            out = graph_to_json(h.graph, &nu);
        } else {
            out = graph_to_json(h.graph);
        }
    } else if (o.family == "cayley") {
        Rat base = o.base.empty() ? Rat(2 * o.rank) : parse_rational(o.base);
        CayleyBall ball = cayley_ball_free_group(o.rank, o.radius, base);
        out = graph_to_json(ball.graph, &ball.measure);
    } else {
        fail(Err::BadParams, "unknown family '" + o.family + "'");
    }
    emit(g, std::move(out), "graph.json");
    return kExitPass;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

int cmd_certify(GlobalOpts& g, const std::string& graph_path, const std::string& cert_path,
                const std::string& eps_str, int k_threshold, int r_threshold) {
    GraphBundle gb = graph_from_json(load_input(g, graph_path));
    AnyCert cert = cert_from_json(load_input(g, cert_path));
    std::optional<Rat> eps;
    if (!eps_str.empty()) eps = parse_rational(eps_str);
    bool float_mode = g.mode == "float";
    Rat tol = float_mode ? rational_from_double(1e-9) : Rat(0);

    json rep;
    rep["type"] = cert_kind_name(cert.kind);
    if (float_mode) rep["mode"] = "float";
    bool pass = true;
    switch (cert.kind) {
        case CertKind::Separator: {
            validate_separator(gb.graph, cert.separator);
            SeparatorQuality q = separator_quality(gb.graph, gb.measure, cert.separator);
            rep["mass"] = to_fraction_string(q.mass);
            rep["max_component"] = q.max_component;
            rep["K"] = cert.separator.K;
            if (eps && q.mass > *eps + tol) pass = false;
            if (k_threshold >= 0 && q.max_component > k_threshold) pass = false;
            break;
        }
        case CertKind::Distribution: {
            validate_distribution(gb.graph, cert.distribution);
            Coverage cov = coverage(gb.graph, cert.distribution);
            rep["max_coverage"] = to_fraction_string(cov.max_coverage);
            rep["K"] = cert.distribution.K;
            if (eps && cov.max_coverage > *eps + tol) pass = false;
            if (k_threshold >= 0 && cert.distribution.K > k_threshold) pass = false;
            break;
        }
        case CertKind::Partition: {
            validate_partition(gb.graph, cert.partition, float_mode ? &tol : nullptr);
            BoundaryProfile b = boundary_operator(gb.graph, cert.partition);
            rep["max_boundary"] = to_fraction_string(b.max_del);
            rep["K"] = cert.partition.K;
            if (eps && b.max_del > *eps + tol) pass = false;
            if (k_threshold >= 0 && cert.partition.K > k_threshold) pass = false;
            break;
        }
        case CertKind::Reiter: {
            ReiterQuality q = reiter_defect(gb.graph, cert.reiter);
            rep["defect"] = to_fraction_string(q.defect);
            rep["radius"] = q.radius;
            if (eps && q.defect > *eps + tol) pass = false;
            if (r_threshold >= 0 && q.radius > r_threshold) pass = false;
            break;
        }
    }
    rep["pass"] = pass;
    emit(g, std::move(rep), "certify.json");
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

int cmd_transform(GlobalOpts& g, const std::string& graph_path, const std::string& cert_path,
                  const std::string& stage, bool full, const std::string& weights_path,
                  const std::string& eps_str, const std::string& out_prefix) {
    GraphBundle gb = graph_from_json(load_input(g, graph_path));
    AnyCert cert = cert_from_json(load_input(g, cert_path));
    std::string prefix = out_prefix.empty() ? "transform" : out_prefix;

    auto mismatch = [&](CertKind want) {
        require(cert.kind == want, Err::StageMismatch,
                std::string("stage needs a ") + cert_kind_name(want) + " certificate, got " +
                    cert_kind_name(cert.kind));
    };

    json cert_json, report_json;
    if (full) {
        mismatch(CertKind::Reiter);
        ChainResult chain = full_cycle(gb.graph, gb.measure, cert.reiter, g.cap);
        cert_json = reiter_to_json(chain.family);
        json stages = json::array();
        for (const auto& st : chain.stages) stages.push_back(report_to_json(st));
        report_json = json{{"stages", std::move(stages)},
                           {"defect_in", to_fraction_string(chain.defect_in)},
                           {"final_defect", to_fraction_string(chain.final_defect)},
                           {"composed_bound", to_fraction_string(chain.composed_bound)},
                           {"separator", separator_to_json(chain.separator)},
                           {"distribution", distribution_to_json(chain.dist)},
                           {"partition", partition_to_json(chain.partition)}};
    } else if (stage == "reiter-to-separator") {
        mismatch(CertKind::Reiter);
        ReiterQuality q0 = reiter_defect(gb.graph, cert.reiter);
        int K1 = max_ball_size(gb.graph, 2 * q0.radius);
        LocalOracle oracle = [&](const std::vector<int>& B) {
            return amenable_to_local(gb.graph, gb.measure, cert.reiter, B, &q0.defect);
        };
        ExhaustionResult r = local_to_global(gb.graph, gb.measure, oracle, q0.defect, K1);
        cert_json = separator_to_json(r.sep);
        report_json = report_to_json(r.report);
    } else if (stage == "separator-to-partition") {
        mismatch(CertKind::Separator);
        FractionalKPartition phi = separator_to_partition(gb.graph, cert.separator);
        validate_partition(gb.graph, phi);
        cert_json = partition_to_json(phi);
        SeparatorQuality q = separator_quality(gb.graph, gb.measure, cert.separator);
        BoundaryProfile b = boundary_operator(gb.graph, phi);
        report_json = report_to_json({"separator-to-partition", q.mass, cert.separator.K,
                                      Rat(1), b.max_del, phi.K});
    } else if (stage == "distribution-to-partition") {
        mismatch(CertKind::Distribution);
        PartitionTransformResult r = distribution_to_partition(gb.graph, cert.distribution);
        cert_json = partition_to_json(r.partition);
        report_json = report_to_json(r.report);
    } else if (stage == "partition-to-reiter") {
        mismatch(CertKind::Partition);
        ReiterTransformResult r = partition_to_reiter(gb.graph, cert.partition);
        cert_json = reiter_to_json(r.family);
        report_json = report_to_json(r.report);
    } else if (stage == "uniform-to-weighted") {
        require(!weights_path.empty(), Err::BadParams, "stage needs --weights");
        require(!eps_str.empty(), Err::BadParams, "stage needs --eps");
        json wj = load_input(g, weights_path);
        require(wj.contains("W"), Err::ParseError, "weights JSON needs field 'W'");
        WeightFunction W;
        for (const auto& x : wj.at("W")) W.W.push_back(rational_from_json(x));
        // the certificate supplies the uniform-hyperfiniteness K for the oracle
        mismatch(CertKind::Separator);
        UhOracle oracle = exact_uh_oracle(gb.graph, gb.measure, cert.separator.K);
        WeightedSeparatorResult r =
            uniform_to_weighted(gb.graph, gb.measure, W, parse_rational(eps_str), oracle);
        cert_json = separator_to_json(r.sep);
        report_json = report_to_json(r.report);
        report_json["j_star"] = r.j_star;
        report_json["L"] = r.L;
        report_json["eps_prime"] = to_fraction_string(r.eps_prime);
        report_json["w_z"] = to_fraction_string(r.w_z);
        report_json["w_zprime"] = to_fraction_string(r.w_zprime);
    } else {
        fail(Err::BadParams, "unknown stage '" + stage + "'");
    }
    json c = std::move(cert_json);
    c["manifest"] = make_manifest(g);
    write_json_atomic(prefix + ".cert.json", c);
    json r = std::move(report_json);
    r["manifest"] = make_manifest(g);
    write_json_atomic(prefix + ".report.json", r);
    std::cout << "wrote " << prefix << ".cert.json and " << prefix << ".report.json\n";
    return kExitPass;
}

// ---------------------------------------------------------------------------
// game / partition-lp / profile
// ---------------------------------------------------------------------------

int cmd_game(GlobalOpts& g, const std::string& graph_path, int K, const std::string& mode) {
    GraphBundle gb = graph_from_json(load_input(g, graph_path));
    if (g.mode == "float" && mode == "exact") {
        GameSolutionFloat sol = separator_game_float(gb.graph, K, g.cap);
        json atoms = json::array();
        for (const auto& [T, p] : sol.primal) atoms.push_back(json{{"T", T}, {"p", p}});
        json j{{"K", K},
               {"mode", "float"},
               {"value", sol.value},
               {"primal", json{{"K", K}, {"atoms", std::move(atoms)}}},
               {"dual", json{{"W", sol.dual}}}};
        emit(g, std::move(j), "game.json");
        return kExitPass;
    }
    GameSolution sol;
    if (mode == "exact")
        sol = separator_game_exact(gb.graph, K, g.cap);
    else if (mode == "column_generation" || mode == "cg")
        sol = separator_game_column_generation(gb.graph, K, g.budget);
    else
        fail(Err::BadParams, "game mode must be exact or column_generation");
    json j = game_solution_to_json(sol, K);
    emit(g, std::move(j), "game.json");
    return kExitPass;
}

int cmd_partition_lp(GlobalOpts& g, const std::string& graph_path, int K) {
    GraphBundle gb = graph_from_json(load_input(g, graph_path));
    json j;
    j["K"] = K;
    if (g.mode == "float") {
        PartitionLPFloat r = fractional_partition_lp_float(gb.graph, K, g.cap);
        j["mode"] = "float";
        j["value"] = r.value;
        json support = json::array();
        for (const auto& [A, w] : r.support) support.push_back(json{{"A", A}, {"phi", w}});
        j["partition"] = json{{"K", K}, {"support", std::move(support)}};
    } else {
        PartitionLPResult r = fractional_partition_lp(gb.graph, K, g.cap);
        j["value"] = to_fraction_string(r.value);
        j["partition"] = partition_to_json(r.partition);
    }
    emit(g, std::move(j), "partition-lp.json");
    return kExitPass;
}

int cmd_profile(GlobalOpts& g, const std::string& graph_path, const std::string& k_range,
                const std::string& mode, int samples) {
    GraphBundle gb = graph_from_json(load_input(g, graph_path));
    std::vector<int> ks;
    std::stringstream ss(k_range);
    for (std::string tok; std::getline(ss, tok, ',');) ks.push_back(std::stoi(tok));
    require(!ks.empty(), Err::BadParams, "empty K range");

    std::ostringstream csv;
    csv << "# manifest " << make_manifest(g).dump() << "\n";
    csv << "K,game_lower,game_upper,game_exact,partition_lp,profile_value,profile_kind\n";
    for (int K : ks) {
        GameSolution game;
        std::string partition_value = "-";
        if (mode == "exact") {
            game = separator_game_exact(gb.graph, K, g.cap);
            partition_value = to_fraction_string(fractional_partition_lp(gb.graph, K, g.cap).value);
        } else {
            game = separator_game_column_generation(gb.graph, K, g.budget);
        }
        std::string profile_value = "-", profile_kind = "-";
        if (mode == "exact" && gb.graph.n <= kDefaultProfileBudget) {
            ProfileResult p = uniform_profile_exact(gb.graph, gb.measure, K);
            profile_value = to_fraction_string(p.value);
            profile_kind = "exact";
        } else if (samples > 0) {
            ProfileResult p = uniform_profile_sampled(gb.graph, gb.measure, K, samples, g.seed);
            profile_value = to_fraction_string(p.value);
            profile_kind = "lower_bound";
        }
        csv << K << "," << to_fraction_string(game.lower) << "," << to_fraction_string(game.upper)
            << "," << (game.exact ? 1 : 0) << "," << partition_value << "," << profile_value << ","
            << profile_kind << "\n";
    }
    std::string path = g.out.empty() ? "profile.csv" : g.out;
    if (path == "-")
        std::cout << csv.str();
    else {
        write_file_atomic(path, csv.str());
        std::cout << "wrote " << path << "\n";
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercert: finite-graph hyperfiniteness certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    for (int i = 0; i < argc; ++i) g.argv.push_back(argv[i]);
    app.add_option("--mode", g.mode, "arithmetic mode: rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--cap", g.cap, "enumeration cap");
    app.add_option("--budget", g.budget, "iteration budget");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "output path ('-' for stdout)");

    auto* gen = app.add_subcommand("generate", "emit a graph(+measure) JSON");
    GenerateOpts go;
    gen->add_option("--family", go.family,
                    "cycle|path|grid|torus|complete|tree|regular|hybrid1|example2|cayley")
        ->required();
    gen->add_option("--n", go.n, "vertex count");
    gen->add_option("--rows", go.rows, "grid rows");
    gen->add_option("--cols", go.cols, "grid cols");
    gen->add_option("--arity", go.arity, "tree arity");
    gen->add_option("--depth", go.depth, "tree depth");
    gen->add_option("--d", go.d, "regular degree");
    gen->add_option("--cycle", go.cycle, "hybrid cycle length");
    gen->add_option("--gadget", go.gadgets, "gadget sizes (repeatable)");
    gen->add_option("--gadget-seed", go.gadget_seeds, "gadget seeds (repeatable)");
    gen->add_option("--spacing", go.spacing, "marker spacing");
    gen->add_option("--rank", go.rank, "free group rank");
    gen->add_option("--radius", go.radius, "ball radius");
    gen->add_option("--base", go.base, "exp(lambda) as a rational, default 2*rank");

    auto* cert = app.add_subcommand("certify", "validate a certificate against thresholds");
    std::string c_graph, c_cert, c_eps;
    int c_k = -1, c_r = -1;
    cert->add_option("--graph", c_graph)->required();
    cert->add_option("--cert", c_cert)->required();
    cert->add_option("--eps", c_eps, "epsilon threshold, rational");
    cert->add_option("--k", c_k, "K threshold");
    cert->add_option("--r", c_r, "radius threshold");

    auto* tra = app.add_subcommand("transform", "apply a certificate transform");
    std::string t_graph, t_cert, t_stage, t_weights, t_eps, t_prefix;
    bool t_full = false;
    tra->add_option("--graph", t_graph)->required();
    tra->add_option("--cert", t_cert)->required();
    tra->add_option("--stage", t_stage,
                    "reiter-to-separator|separator-to-partition|distribution-to-partition|"
                    "partition-to-reiter|uniform-to-weighted");
    tra->add_flag("--full", t_full, "run the whole chain");
    tra->add_option("--weights", t_weights, "weight JSON for uniform-to-weighted");
    tra->add_option("--eps", t_eps, "target epsilon for uniform-to-weighted");
    tra->add_option("--out-prefix", t_prefix, "output prefix");

    auto* game = app.add_subcommand("game", "separator game value");
    std::string g_graph, g_mode = "exact";
    int g_k = 2;
    game->add_option("--graph", g_graph)->required();
    game->add_option("--k", g_k)->required();
    game->add_option("--game-mode", g_mode, "exact|column_generation");

    auto* plp = app.add_subcommand("partition-lp", "fractional partition LP value");
    std::string p_graph;
    int p_k = 2;
    plp->add_option("--graph", p_graph)->required();
    plp->add_option("--k", p_k)->required();

    auto* prof = app.add_subcommand("profile", "CSV of game, partition LP and profile values");
    std::string pr_graph, pr_range = "2,3,4", pr_mode = "exact";
    int pr_samples = 0;
    prof->add_option("--graph", pr_graph)->required();
    prof->add_option("--k-range", pr_range, "comma-separated K values");
    prof->add_option("--profile-mode", pr_mode, "exact|cg");
    prof->add_option("--samples", pr_samples, "sampled profile subset count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (gen->parsed()) return cmd_generate(g, go);
        if (cert->parsed()) return cmd_certify(g, c_graph, c_cert, c_eps, c_k, c_r);
        if (tra->parsed()) {
            require(t_full || !t_stage.empty(), Err::BadParams, "need --stage or --full");
            return cmd_transform(g, t_graph, t_cert, t_stage, t_full, t_weights, t_eps, t_prefix);
        }
        if (game->parsed()) return cmd_game(g, g_graph, g_k, g_mode);
        if (plp->parsed()) return cmd_partition_lp(g, p_graph, p_k);
        if (prof->parsed()) return cmd_profile(g, pr_graph, pr_range, pr_mode, pr_samples);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
