#include "polyskel/harness.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <regex>
#include <set>
#include <sstream>

using namespace polyskel;

namespace {
std::string csv_of(const std::vector<TrialRecord>& recs) {
    std::stringstream ss;
    emit_csv(recs, ss);
    return ss.str();
}

// elapsed_ms is the one permitted nondeterministic column
std::string strip_elapsed(const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        auto comma = line.rfind(',');
        out += line.substr(0, comma) + "\n";
    }
    return out;
}
}  // namespace

TEST_CASE("square sweep record", "[harness]") {
    SweepConfig cfg;
    cfg.n_list = {2};
    cfg.rates = {RateSpec::explicit_p(1.0)};
    cfg.trials = 1;
    cfg.base_seed = 5;
    cfg.metrics = {MetricKind::Density, MetricKind::MinDegree, MetricKind::Clique};
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].num_vertices == 4);
    CHECK(recs[0].num_edges == 4);
    CHECK(*recs[0].density == "0.666666666667");
    CHECK(*recs[0].min_degree == 2);
    CHECK_FALSE(*recs[0].clique);
    CHECK(*recs[0].num_non_edges == 2);
}

TEST_CASE("empty sample yields null metrics", "[harness]") {
    SweepConfig cfg;
    cfg.n_list = {4};
    cfg.rates = {RateSpec::explicit_p(0.0)};
    cfg.metrics = {MetricKind::Density, MetricKind::Clique, MetricKind::Quadruples};
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].num_vertices == 0);
    CHECK_FALSE(recs[0].density.has_value());
    CHECK_FALSE(recs[0].clique.has_value());
    CHECK_FALSE(recs[0].quadruples.has_value());
}

TEST_CASE("csv shape", "[harness]") {
    std::string header = csv_of({});
    CHECK(header ==
          "n,rate_label,p,trial,seed,num_vertices,num_edges,density,min_degree,"
          "is_clique,num_non_edges,quadruples,expansion,elapsed_ms\n");

    SweepConfig cfg;
    cfg.n_list = {3};
    cfg.rates = {RateSpec::explicit_p(0.5)};
    cfg.trials = 2;
    auto recs = run_sweep(cfg);
    std::string csv = csv_of(recs);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.back() == '\n');
}

TEST_CASE("sweep determinism, serial equals parallel", "[harness]") {
    SweepConfig cfg;
    cfg.n_list = {3, 5};
    cfg.rates = {RateSpec::explicit_p(0.4), RateSpec::pow2(0.5)};
    cfg.trials = 4;
    cfg.base_seed = 31337;
    cfg.metrics = {MetricKind::Density, MetricKind::MinDegree, MetricKind::Clique,
                   MetricKind::Expansion, MetricKind::Quadruples};

    auto serial = run_sweep(cfg);
    auto again = run_sweep(cfg);
    cfg.threads = 4;
    auto parallel = run_sweep(cfg);

    CHECK(strip_elapsed(csv_of(serial)) == strip_elapsed(csv_of(again)));
    CHECK(strip_elapsed(csv_of(serial)) == strip_elapsed(csv_of(parallel)));

    // cell seeds never collide and records come back in canonical order
    std::set<std::uint64_t> seeds;
    for (const auto& r : serial) seeds.insert(r.seed);
    CHECK(seeds.size() == serial.size());
    CHECK(serial[0].n == 3);
    CHECK(serial.back().n == 5);
}

TEST_CASE("config validation", "[harness]") {
    SweepConfig bad;
    CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
    bad.n_list = {70};
    bad.rates = {RateSpec::explicit_p(0.5)};
    CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
}

TEST_CASE("graph json schema", "[harness]") {
    VertexSet q(2, {Point(0, 2), Point(1, 2), Point(2, 2), Point(3, 2)});
    PolytopeGraph g = build_graph(q, Method::Auto, /*retain_certificates=*/true);
    std::stringstream ss;
    emit_graph_json(g, ss, 1.0, 42);
    auto j = nlohmann::json::parse(ss.str());
    CHECK(j["n"] == 2);
    CHECK(j["p"] == 1.0);
    CHECK(j["seed"] == 42);
    CHECK(j["method"] == "auto");
    REQUIRE(j["vertices"].size() == 4);
    CHECK(j["vertices"][0] == "0");
    CHECK(j["edges"].size() == 4);
    REQUIRE(j["non_edges"].size() == 2);
    for (const auto& ne : j["non_edges"]) {
        REQUIRE(ne.size() == 3);
        CHECK(ne[0].get<int>() < ne[1].get<int>());
        CHECK(ne[2]["type"] == "convex_combination");
        CHECK(ne[2]["alpha"] == "1/2");
    }
}

TEST_CASE("verify passes on honest classification", "[harness]") {
    VerifyReport rep = run_verify(4, 10, 2718);
    CHECK(rep.ok());
    CHECK(rep.trials == 10);
    CHECK(rep.pairs_checked >= 6);  // at least the forced square
}

TEST_CASE("verify catches an injected fault", "[harness]") {
    // test double: flip the hyperplane oracle's verdict on one pair
    Classifier lying = [](const VertexSet& q, const Point& x, const Point& y, Method m) {
        EdgeStatus st = edge_status(q, x, y, m);
        if (m == Method::OracleHyperplane && hamming(x, y) == 2) st.is_edge = !st.is_edge;
        return st;
    };
    VerifyReport rep = run_verify(3, 3, 99, lying);
    REQUIRE_FALSE(rep.ok());
    const auto& f = rep.failures.front();
    CHECK_FALSE(f.vertices.empty());
    CHECK_FALSE(f.detail.empty());
}

TEST_CASE("large-pair trials fall back to sampled density", "[harness]") {
    // n=14, p=0.5: ~8k vertices, ~33M pairs >> threshold; must not build fully
    SweepConfig cfg;
    cfg.n_list = {14};
    cfg.rates = {RateSpec::explicit_p(0.5)};
    cfg.metrics = {MetricKind::Density};
    cfg.pair_budget = 300;
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].density.has_value());
    CHECK_FALSE(recs[0].num_edges.has_value());
    double d = std::stod(*recs[0].density);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
}
