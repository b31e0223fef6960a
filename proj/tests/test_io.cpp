#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "hypercert/generators.hpp"
#include "hypercert/json_io.hpp"
#include "hypercert/transforms.hpp"
#include "support/oracles.hpp"

using namespace hypercert;

namespace {

std::string tmpdir() {
    static std::string dir = [] {
        std::string d = ::testing::TempDir() + "hypercert_io";
        std::string cmd = "mkdir -p " + d;
        [[maybe_unused]] int rc = std::system(cmd.c_str());
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    std::string out_file = tmpdir() + "/cli_output.txt";
    std::string cmd = std::string(HYPERCERT_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (output) *output = read_file(out_file);
    return WEXITSTATUS(rc);
}

}  // namespace

TEST(JsonIo, GraphRoundTrip) {
    Graph g = make_grid(3, 3);
    VertexMeasure mu = VertexMeasure::uniform(9);
    json j = graph_to_json(g, &mu);
    GraphBundle b = graph_from_json(j);
    EXPECT_EQ(b.graph.n, g.n);
    for (int v = 0; v < g.n; ++v) EXPECT_EQ(b.graph.adj[v], g.adj[v]);
    EXPECT_TRUE(b.measure_given);
    for (int v = 0; v < g.n; ++v) EXPECT_EQ(b.measure[v], mu[v]);

    // measure omitted means uniform
    GraphBundle u = graph_from_json(graph_to_json(g));
    EXPECT_FALSE(u.measure_given);
    EXPECT_EQ(u.measure[0], rat(1, 9));
}

TEST(JsonIo, MeasureAcceptsStringsAndNumbers) {
    json j{{"n", 2}, {"edges", json::array({json::array({0, 1})})},
           {"measure", json::array({"1/3", 0.5})}};
    GraphBundle b = graph_from_json(j);
    EXPECT_EQ(b.measure[0], rat(1, 3));
    EXPECT_EQ(b.measure[1], rat(1, 2));
}

TEST(JsonIo, CertificateRoundTrips) {
    Graph c6 = make_cycle(6);

    KSeparator sep{{0, 3}, 2};
    AnyCert s = cert_from_json(separator_to_json(sep));
    ASSERT_EQ(s.kind, CertKind::Separator);
    EXPECT_EQ(s.separator.T, sep.T);
    EXPECT_EQ(s.separator.K, 2);

    SeparatorDistribution nu;
    nu.K = 2;
    for (int i = 0; i < 3; ++i) nu.atoms.push_back({KSeparator{{i, i + 3}, 2}, rat(1, 3)});
    AnyCert d = cert_from_json(distribution_to_json(nu));
    ASSERT_EQ(d.kind, CertKind::Distribution);
    validate_distribution(c6, d.distribution);
    EXPECT_EQ(d.distribution.atoms[1].second, rat(1, 3));

    FractionalKPartition phi = separator_to_partition(c6, sep);
    AnyCert p = cert_from_json(partition_to_json(phi));
    ASSERT_EQ(p.kind, CertKind::Partition);
    EXPECT_EQ(p.partition.support, phi.support);

    ReiterFamily fam = ball_uniform_family(c6, 1);
    AnyCert r = cert_from_json(reiter_to_json(fam));
    ASSERT_EQ(r.kind, CertKind::Reiter);
    EXPECT_EQ(reiter_defect(c6, r.reiter).defect, rat(4, 3));
}

TEST(JsonIo, ReiterRowsDenseAndSparse) {
    json dense{{"R", 0}, {"p", json::array({json::array({1, 0}), json::array({0, "1/1"})})}};
    ReiterFamily f = reiter_from_json(dense);
    ASSERT_EQ(f.p.size(), 2u);
    EXPECT_EQ(f.p[0], (std::vector<std::pair<int, Rat>>{{0, rat(1)}}));
    EXPECT_EQ(f.p[1], (std::vector<std::pair<int, Rat>>{{1, rat(1)}}));

    json sparse{{"R", 0},
                {"p", json::array({json::array({json::array({0, "1/2"}), json::array({1, "1/2"})}),
                                   json::array({json::array({1, 1})})})}};
    ReiterFamily g = reiter_from_json(sparse);
    EXPECT_EQ(g.p[0].size(), 2u);
    EXPECT_EQ(g.p[0][1].second, rat(1, 2));
}

TEST(JsonIo, ParseErrors) {
    EXPECT_THROW(graph_from_json(json{{"n", 2}}), Error);
    EXPECT_THROW(cert_from_json(json{{"bogus", 1}}), Error);
    EXPECT_THROW(rational_from_json(json{{"x", 1}}), Error);
    try {
        load_json("/nonexistent/file.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Err::ParseError);
    }
}

// ---------------------------------------------------------------------------
// CLI end to end
// ---------------------------------------------------------------------------

TEST(Cli, GenerateAndCertifyPipeline) {
    std::string g_path = tmpdir() + "/c12.json";
    ASSERT_EQ(run_cli("--out " + g_path + " generate --family cycle --n 12"), 0);
    GraphBundle b = graph_from_json(load_json(g_path));
    EXPECT_EQ(b.graph.n, 12);
    EXPECT_EQ(b.graph.max_degree, 2);

    // write a separator certificate and validate it at passing thresholds
    std::string cert_path = tmpdir() + "/sep.json";
    write_json_atomic(cert_path, separator_to_json(KSeparator{{0, 4, 8}, 4}));
    std::string rep_path = tmpdir() + "/rep.json";
    EXPECT_EQ(run_cli("--out " + rep_path + " certify --graph " + g_path + " --cert " +
                      cert_path + " --eps 1/4 --k 4"),
              0);
    json rep = load_json(rep_path);
    EXPECT_EQ(rep.at("pass"), true);
    EXPECT_EQ(rep.at("mass"), "1/4");
    EXPECT_TRUE(rep.contains("manifest"));

    // tighter epsilon fails with exit code 1
    EXPECT_EQ(run_cli("--out " + rep_path + " certify --graph " + g_path + " --cert " +
                      cert_path + " --eps 1/5 --k 4"),
              1);

    // malformed JSON is an input error: exit code 2
    std::string bad_path = tmpdir() + "/bad.json";
    write_file_atomic(bad_path, "{not json");
    EXPECT_EQ(run_cli("certify --graph " + g_path + " --cert " + bad_path + " --eps 1/4"), 2);
}

TEST(Cli, GenerateFamiliesValidate) {
    std::string path = tmpdir() + "/gen.json";
    ASSERT_EQ(run_cli("--out " + path +
                      " generate --family hybrid1 --cycle 12 --gadget 8 --gadget-seed 1 "
                      "--spacing 12"),
              0);
    GraphBundle hybrid = graph_from_json(load_json(path));
    EXPECT_EQ(hybrid.graph.n, 20);
    EXPECT_EQ(hybrid.graph.max_degree, 4);

    ASSERT_EQ(run_cli("--out " + path + " generate --family cayley --rank 2 --radius 3"), 0);
    GraphBundle cayley = graph_from_json(load_json(path));
    EXPECT_EQ(cayley.graph.n, 53);
    EXPECT_TRUE(cayley.measure_given);
    EXPECT_EQ(bounded_type_constant(cayley.graph, cayley.measure), rat(16));

    ASSERT_EQ(run_cli("--seed 5 --out " + path + " generate --family regular --n 12 --d 3"), 0);
    GraphBundle reg = graph_from_json(load_json(path));
    for (int v = 0; v < 12; ++v) EXPECT_EQ(reg.graph.degree(v), 3);

    EXPECT_EQ(run_cli("generate --family bogus"), 2);
}

TEST(Cli, ManifestMakesRunsReproducible) {
    std::string a = tmpdir() + "/a.json", b = tmpdir() + "/b.json";
    ASSERT_EQ(run_cli("--seed 9 --out " + a + " generate --family regular --n 10 --d 3"), 0);
    ASSERT_EQ(run_cli("--seed 9 --out " + b + " generate --family regular --n 10 --d 3"), 0);
    json ja = load_json(a), jb = load_json(b);
    ja.erase("manifest");
    jb.erase("manifest");
    EXPECT_EQ(ja, jb);
    // manifests differ only in the --out path they record
    json ma = load_json(a).at("manifest");
    EXPECT_EQ(ma.at("seed"), 9);
    EXPECT_EQ(ma.at("tool"), "hypercert");
}

TEST(Cli, GameAndPartitionLp) {
    std::string g_path = tmpdir() + "/c6.json";
    ASSERT_EQ(run_cli("--out " + g_path + " generate --family cycle --n 6"), 0);

    std::string sol_path = tmpdir() + "/game.json";
    ASSERT_EQ(run_cli("--out " + sol_path + " game --graph " + g_path + " --k 2"), 0);
    json sol = load_json(sol_path);
    EXPECT_EQ(sol.at("lower"), "1/3");
    EXPECT_EQ(sol.at("upper"), "1/3");
    EXPECT_EQ(sol.at("exact"), true);

    std::string lp_path = tmpdir() + "/plp.json";
    ASSERT_EQ(run_cli("--out " + lp_path + " partition-lp --graph " + g_path + " --k 2"), 0);
    EXPECT_EQ(load_json(lp_path).at("value"), "1/1");

    // column generation mode emits a bracket
    ASSERT_EQ(run_cli("--out " + sol_path + " game --graph " + g_path +
                      " --k 2 --game-mode column_generation"),
              0);
    json cg = load_json(sol_path);
    EXPECT_EQ(cg.at("lower"), "1/3");
    EXPECT_EQ(cg.at("exact"), true);

    // float mode runs the double simplex and marks the output
    ASSERT_EQ(run_cli("--mode float --out " + sol_path + " game --graph " + g_path + " --k 2"), 0);
    json fsol = load_json(sol_path);
    EXPECT_EQ(fsol.at("mode"), "float");
    EXPECT_NEAR(fsol.at("value").get<double>(), 1.0 / 3.0, 1e-9);

    ASSERT_EQ(run_cli("--mode float --out " + lp_path + " partition-lp --graph " + g_path +
                      " --k 2"),
              0);
    json flp = load_json(lp_path);
    EXPECT_EQ(flp.at("mode"), "float");
    EXPECT_NEAR(flp.at("value").get<double>(), 1.0, 1e-9);
}

TEST(Cli, TransformStagesAndChain) {
    std::string g_path = tmpdir() + "/c12t.json";
    ASSERT_EQ(run_cli("--out " + g_path + " generate --family cycle --n 12"), 0);

    Graph c12 = make_cycle(12);
    std::string fam_path = tmpdir() + "/fam.json";
    write_json_atomic(fam_path, reiter_to_json(ball_uniform_family(c12, 2)));

    std::string prefix = tmpdir() + "/t";
    ASSERT_EQ(run_cli("transform --graph " + g_path + " --cert " + fam_path +
                      " --stage reiter-to-separator --out-prefix " + prefix),
              0);
    AnyCert sep = cert_from_json(load_json(prefix + ".cert.json"));
    ASSERT_EQ(sep.kind, CertKind::Separator);
    validate_separator(c12, sep.separator);
    json rep = load_json(prefix + ".report.json");
    EXPECT_EQ(rep.at("stage"), "local-to-global");
    EXPECT_LE(parse_rational(rep.at("eps_achieved").get<std::string>()),
              parse_rational(rep.at("eps_guaranteed").get<std::string>()));

    // distribution -> partition -> reiter, via files
    GameSolution game = separator_game_exact(c12, 4);
    std::string dist_path = tmpdir() + "/dist.json";
    write_json_atomic(dist_path, distribution_to_json(game.primal));
    ASSERT_EQ(run_cli("transform --graph " + g_path + " --cert " + dist_path +
                      " --stage distribution-to-partition --out-prefix " + prefix),
              0);
    AnyCert phi = cert_from_json(load_json(prefix + ".cert.json"));
    ASSERT_EQ(phi.kind, CertKind::Partition);
    validate_partition(c12, phi.partition);

    ASSERT_EQ(run_cli("transform --graph " + g_path + " --cert " + prefix + ".cert.json" +
                      " --stage partition-to-reiter --out-prefix " + prefix),
              0);
    AnyCert fam2 = cert_from_json(load_json(prefix + ".cert.json"));
    ASSERT_EQ(fam2.kind, CertKind::Reiter);
    validate_reiter(c12, fam2.reiter);

    // full chain from the window family
    ASSERT_EQ(run_cli("transform --graph " + g_path + " --cert " + fam_path +
                      " --full --out-prefix " + prefix),
              0);
    json chain = load_json(prefix + ".report.json");
    EXPECT_EQ(chain.at("stages").size(), 5u);
    EXPECT_LE(parse_rational(chain.at("final_defect").get<std::string>()),
              parse_rational(chain.at("composed_bound").get<std::string>()));

    // a reiter certificate fed to a distribution stage is a stage mismatch
    EXPECT_EQ(run_cli("transform --graph " + g_path + " --cert " + fam_path +
                      " --stage distribution-to-partition --out-prefix " + prefix),
              2);
}

TEST(Cli, UniformToWeightedStage) {
    std::string g_path = tmpdir() + "/c12w.json";
    ASSERT_EQ(run_cli("--out " + g_path + " generate --family cycle --n 12"), 0);
    // the separator certificate's K feeds the uniform-hyperfiniteness oracle
    std::string k_path = tmpdir() + "/kcert.json";
    write_json_atomic(k_path, separator_to_json(KSeparator{{}, 12}));
    std::string w_path = tmpdir() + "/weights.json";
    write_json_atomic(w_path, json{{"W", json::array({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1})}});
    std::string prefix = tmpdir() + "/w";
    ASSERT_EQ(run_cli("transform --graph " + g_path + " --cert " + k_path +
                      " --stage uniform-to-weighted --weights " + w_path +
                      " --eps 1/2 --out-prefix " + prefix),
              0);
    json rep = load_json(prefix + ".report.json");
    EXPECT_EQ(rep.at("stage"), "uniform-to-weighted");
    EXPECT_EQ(rep.at("L"), 6);
}

TEST(Cli, ProfileCsv) {
    std::string g_path = tmpdir() + "/c12p.json";
    ASSERT_EQ(run_cli("--out " + g_path + " generate --family cycle --n 12"), 0);
    std::string csv_path = tmpdir() + "/profile.csv";
    ASSERT_EQ(run_cli("--out " + csv_path + " profile --graph " + g_path +
                      " --k-range 2,3,4,6"),
              0);
    std::string csv = read_file(csv_path);
    EXPECT_NE(csv.find("# manifest"), std::string::npos);
    EXPECT_NE(csv.find("K,game_lower"), std::string::npos);
    // extract game_lower column and check monotone non-increase
    std::vector<Rat> values;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'K') continue;
        std::istringstream cells(line);
        std::string k, lo;
        std::getline(cells, k, ',');
        std::getline(cells, lo, ',');
        values.push_back(parse_rational(lo));
    }
    ASSERT_EQ(values.size(), 4u);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) EXPECT_GE(values[i], values[i + 1]);
}

TEST(Cli, ProfileColumnGenerationMode) {
    std::string g_path = tmpdir() + "/reg18.json";
    ASSERT_EQ(run_cli("--seed 3 --out " + g_path + " generate --family regular --n 18 --d 3"), 0);
    std::string csv_path = tmpdir() + "/cgprofile.csv";
    ASSERT_EQ(run_cli("--seed 3 --out " + csv_path + " profile --graph " + g_path +
                      " --k-range 3,4 --profile-mode cg --samples 10"),
              0);
    std::string csv = read_file(csv_path);
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'K') continue;
        ++rows;
        std::istringstream cells(line);
        std::string k, lo, hi, exact, plp, pval, pkind;
        std::getline(cells, k, ',');
        std::getline(cells, lo, ',');
        std::getline(cells, hi, ',');
        std::getline(cells, exact, ',');
        std::getline(cells, plp, ',');
        std::getline(cells, pval, ',');
        std::getline(cells, pkind, ',');
        EXPECT_LE(parse_rational(lo), parse_rational(hi));  // a genuine bracket
        EXPECT_EQ(plp, "-");                                // no partition LP in cg mode
        EXPECT_EQ(pkind, "lower_bound");                    // sampled profile is flagged
    }
    EXPECT_EQ(rows, 2);
}

TEST(Cli, BudgetExitCode) {
    std::string g_path = tmpdir() + "/grid8.json";
    ASSERT_EQ(run_cli("--out " + g_path + " generate --family grid --rows 8 --cols 8"), 0);
    // exact game on 64 vertices trips the enumeration guard: exit 3
    EXPECT_EQ(run_cli("game --graph " + g_path + " --k 8"), 3);
}
