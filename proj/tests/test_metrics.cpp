#include "polyskel/metrics.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace polyskel;

namespace {

// hand-built graphs over dummy vertex sets
struct Fixture {
    VertexSet q;
    PolytopeGraph g;
    Fixture(int n, std::size_t vertices,
            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
        : q(n, [&] {
              std::vector<Point> pts;
              for (std::size_t i = 0; i < vertices; ++i)
                  pts.emplace_back(i, n);
              return pts;
          }()) {
        g.vertices = &q;
        g.edges = std::move(edges);
        std::vector<std::vector<char>> adj(vertices, std::vector<char>(vertices, 0));
        for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = 1;
        for (std::uint32_t i = 0; i < vertices; ++i)
            for (std::uint32_t j = i + 1; j < vertices; ++j)
                if (!adj[i][j]) g.non_edges.emplace_back(i, j);
        g.pairs_classified = vertices * (vertices - 1) / 2;
    }
};

Fixture complete(std::size_t m) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j) e.emplace_back(i, j);
    return Fixture(6, m, std::move(e));
}

Fixture cycle(std::size_t m) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (std::uint32_t i = 0; i < m; ++i)
        e.emplace_back(std::min(i, static_cast<std::uint32_t>((i + 1) % m)),
                       std::max(i, static_cast<std::uint32_t>((i + 1) % m)));
    return Fixture(6, m, std::move(e));
}

}  // namespace

TEST_CASE("density", "[metrics]") {
    CHECK(density(cycle(4).g) == Rat(2, 3));
    CHECK(density(complete(5).g) == 1);
    CHECK(density(Fixture(6, 1, {}).g) == 1);  // convention for |V| <= 1
    CHECK(density(Fixture(6, 0, {}).g) == 1);
}

TEST_CASE("density_estimate", "[metrics]") {
    auto f = complete(5);
    auto est = density_estimate(f.g);
    CHECK(est.value == 1.0);
    CHECK(est.standard_error == 0.0);

    Fixture empty_graph(6, 5, {});
    CHECK(density_estimate(empty_graph.g).value == 0.0);

    // 300 of 400 pairs: SE = sqrt(0.75 * 0.25 / 400)
    PolytopeGraph g;
    VertexSet q(6, {});
    g.vertices = &q;
    g.sampled = true;
    g.pairs_classified = 400;
    for (std::uint32_t i = 0; i < 300; ++i) g.edges.emplace_back(0, i + 1);
    auto e = density_estimate(g);
    CHECK(e.value == Catch::Approx(0.75));
    CHECK(e.standard_error == Catch::Approx(0.021650635).margin(1e-6));

    PolytopeGraph none;
    none.vertices = &q;
    none.sampled = true;
    CHECK_THROWS_AS(density_estimate(none), std::invalid_argument);

    // estimator over all pairs equals the exact density
    auto c4 = cycle(4);
    CHECK(density_estimate(c4.g).value ==
          Catch::Approx(static_cast<double>(2.0 / 3.0)));
}

TEST_CASE("degrees and min degree", "[metrics]") {
    CHECK(min_degree(complete(4).g) == 3);
    CHECK(min_degree(cycle(4).g) == 2);
    CHECK_THROWS_AS(degrees(Fixture(6, 0, {}).g), std::invalid_argument);
}

TEST_CASE("clique detection", "[metrics]") {
    CHECK(is_clique(complete(5).g));
    CHECK(is_clique(Fixture(6, 2, {{0, 1}}).g));
    CHECK_FALSE(is_clique(cycle(4).g));
}

TEST_CASE("components", "[metrics]") {
    CHECK(num_components(cycle(5).g) == 1);
    CHECK(num_components(Fixture(6, 4, {{0, 1}, {2, 3}}).g) == 2);
    CHECK(num_components(Fixture(6, 3, {}).g) == 3);
}

TEST_CASE("edge expansion pinned values", "[metrics]") {
    CHECK(edge_expansion(complete(4).g) == 2);
    CHECK(edge_expansion(cycle(4).g) == 1);
    CHECK(edge_expansion(Fixture(6, 4, {{0, 1}, {2, 3}}).g) == 0);

    CHECK_THROWS_AS(edge_expansion(Fixture(6, 1, {}).g), std::invalid_argument);
}

TEST_CASE("edge expansion of cliques is ceil(m/2)", "[metrics]") {
    for (std::size_t m = 2; m <= 12; ++m)
        CHECK(edge_expansion(complete(m).g) == Rat((m + 1) / 2));
}

TEST_CASE("expansion zero iff disconnected", "[metrics]") {
    SplitMix64 rng(1234);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t m = 2 + rng.next() % 9;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = i + 1; j < m; ++j)
                if (rng.next() % 3 == 0) e.emplace_back(i, j);
        Fixture f(6, m, std::move(e));
        bool disconnected = num_components(f.g) > 1;
        CHECK((edge_expansion(f.g) == 0) == disconnected);
    }
}

TEST_CASE("expansion by brute-force subset oracle", "[metrics]") {
    // independent oracle: direct enumeration without the Gray-code update
    SplitMix64 rng(555);
    for (int iter = 0; iter < 30; ++iter) {
        std::size_t m = 2 + rng.next() % 7;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = i + 1; j < m; ++j)
                if (rng.next() % 2 == 0) e.emplace_back(i, j);
        Fixture f(6, m, e);

        Rat best = -1;
        for (std::uint32_t s = 1; s < (1u << m); ++s) {
            int size = std::popcount(s);
            if (2 * static_cast<std::size_t>(size) > m) continue;
            int cut = 0;
            for (auto [a, b] : e) {
                bool ina = (s >> a) & 1u, inb = (s >> b) & 1u;
                if (ina != inb) ++cut;
            }
            Rat ratio = Rat(cut) / Rat(size);
            if (best < 0 || ratio < best) best = ratio;
        }
        CHECK(edge_expansion(f.g) == best);
    }
}

TEST_CASE("sampled graphs are rejected by exact metrics", "[metrics]") {
    auto f = complete(4);
    f.g.sampled = true;
    CHECK_THROWS_AS(density(f.g), std::invalid_argument);
    CHECK_THROWS_AS(min_degree(f.g), std::invalid_argument);
    CHECK_THROWS_AS(is_clique(f.g), std::invalid_argument);
    CHECK_THROWS_AS(edge_expansion(f.g), std::invalid_argument);
}
