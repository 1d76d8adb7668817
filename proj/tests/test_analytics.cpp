#include "polyskel/analytics.hpp"
#include "polyskel/quadruples.hpp"
#include "polyskel/adjacency.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace polyskel;

TEST_CASE("binary entropy", "[analytics]") {
    CHECK(entropy(0.5) == Catch::Approx(1.0).margin(1e-15));
    CHECK(entropy(0.0) == 0.0);
    CHECK(entropy(1.0) == 0.0);
    CHECK(entropy(0.8) == Catch::Approx(0.7219).margin(5e-5));
    CHECK_THROWS_AS(entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(entropy(1.1), std::invalid_argument);

    // symmetry and maximality at 1/2
    for (int i = 0; i <= 100; ++i) {
        double d = i / 100.0;
        CHECK(entropy(d) == Catch::Approx(entropy(1.0 - d)).margin(1e-12));
        CHECK(entropy(d) <= 1.0 + 1e-15);
    }
}

TEST_CASE("f exponent and its maximizer", "[analytics]") {
    CHECK(f_exponent(0.5) == Catch::Approx(3.0).margin(1e-12));
    CHECK(f_exponent(0.0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(f_exponent(0.8) == Catch::Approx(3.3219).margin(1e-4));

    double arg = argmax_f();
    CHECK(arg == 0.8);
    CHECK(f_exponent(0.8) >= f_exponent(0.8 + 1e-3));
    CHECK(f_exponent(0.8) >= f_exponent(0.8 - 1e-3));
    CHECK(f_exponent(0.8) == Catch::Approx(1.0 + 1.6 + entropy(0.8)).margin(1e-15));
}

TEST_CASE("delta star fixed point", "[analytics]") {
    double d = solve_delta();
    CHECK(d == Catch::Approx(0.8295).margin(5e-5));
    CHECK(std::abs(entropy(d) - (2 * d - 1)) < 1e-12);
    CHECK(std::abs(d - (1 + entropy(d)) / 2) < 1e-12);

    ThresholdConstants t = threshold_constants();
    CHECK(t.weak_exponent == Catch::Approx(0.8305).margin(1e-3));
    CHECK(t.weak_exponent == Catch::Approx(t.f_max / 4).margin(1e-15));
    CHECK(t.delta_star > 0.82);
    CHECK(t.delta_star < 0.84);
    CHECK(t.weak_exponent > 0.82);
    CHECK(t.weak_exponent < 0.84);
    CHECK(t.delta_star > 0.8);  // strictly right of the f maximizer
}

TEST_CASE("closed form tuple count", "[analytics]") {
    CHECK(closed_form_tuple_count(0, 2) == 1);
    CHECK(closed_form_tuple_count(1, 1) == 2);
    CHECK(closed_form_tuple_count(3, 2) == 216);
    CHECK(closed_form_tuple_count(2, 3) == 400);
}

namespace {
// brute-force oracle: all ordered 2k-tuples, direct averaging check
BigInt brute_tuples(const std::vector<Point>& s, const Point& x, const Point& y,
                    int k, bool exclude) {
    std::vector<Point> pool;
    for (const Point& z : s) {
        if (exclude && (z == x || z == y)) continue;
        pool.push_back(z);
    }
    int len = 2 * k;
    BigInt count = 0;
    std::vector<std::size_t> idx(len, 0);
    if (pool.empty()) return 0;
    while (true) {
        bool ok = true;
        for (int i = 0; i < x.n && ok; ++i) {
            int sum = 0;
            for (int t = 0; t < len; ++t) sum += pool[idx[t]].bit(i) ? 1 : 0;
            int target = (x.bit(i) ? 1 : 0) + (y.bit(i) ? 1 : 0);
            if (sum * 2 != target * len) ok = false;
        }
        if (ok) ++count;
        int t = len - 1;
        while (t >= 0 && ++idx[t] == pool.size()) { idx[t] = 0; --t; }
        if (t < 0) break;
    }
    return count;
}
}  // namespace

TEST_CASE("averaging tuple counts on pinned examples", "[analytics]") {
    // d=1, k=1 over the full interval: C(2,1) = 2
    Point x1(0b0, 1), y1(0b1, 1);
    auto interval1 = interval_points(x1, y1);
    CHECK(count_averaging_tuples(interval1, x1, y1, 1, false) == 2);

    // d=2, k=1: C(2,1)^2 = 4
    Point x2(0b00, 2), y2(0b11, 2);
    auto interval2 = interval_points(x2, y2);
    CHECK(count_averaging_tuples(interval2, x2, y2, 1, false) == 4);

    // excluding endpoints leaves only (01,10) and (10,01)
    CHECK(count_averaging_tuples(interval2, x2, y2, 1, true) == 2);
}

TEST_CASE("averaging tuple counts match the closed form and brute force", "[analytics]") {
    for (int d = 1; d <= 4; ++d) {
        Point x(0, d), y(dim_mask(d), d);
        auto interval = interval_points(x, y);
        for (int k = 1; k <= 3; ++k) {
            BigInt fast = count_averaging_tuples(interval, x, y, k, false);
            CHECK(fast == closed_form_tuple_count(d, k));
            if (std::pow(std::pow(2.0, d), 2 * k) < 3e6)
                CHECK(fast == brute_tuples(interval, x, y, k, false));
        }
    }
    // sparse subset against brute force
    SplitMix64 rng(246);
    for (int iter = 0; iter < 15; ++iter) {
        int d = 2 + static_cast<int>(rng.next() % 2);
        Point x(0, d), y(dim_mask(d), d);
        std::vector<Point> s;
        for (const Point& z : interval_points(x, y))
            if (rng.next() % 2) s.push_back(z);
        for (int k = 1; k <= 2; ++k) {
            bool exclude = rng.next() % 2;
            CHECK(count_averaging_tuples(s, x, y, k, exclude) ==
                  brute_tuples(s, x, y, k, exclude));
        }
    }
}

TEST_CASE("witness quadruple counts", "[analytics]") {
    VertexSet sq(2, {Point(0, 2), Point(1, 2), Point(2, 2), Point(3, 2)});
    CHECK(count_witness_quadruples(sq) == 2);

    // all witness sets of size <= 1: count is zero
    VertexSet small(3, {Point(0b000, 3), Point(0b001, 3), Point(0b011, 3)});
    CHECK(count_witness_quadruples(small) == 0);

    // distance band keeps only the two diagonal pairs of the square
    CHECK(count_witness_quadruples(sq, {{0.9, 1.0}}) == 2);
    CHECK(count_witness_quadruples(sq, {{0.0, 0.5}}) == 0);
}

TEST_CASE("zero quadruples implies a clique", "[analytics]") {
    SplitMix64 rng(357);
    int hits = 0;
    for (int iter = 0; iter < 200 && hits < 30; ++iter) {
        int n = 3 + static_cast<int>(rng.next() % 3);
        VertexSet q = sample_vertex_set(n, 0.25, rng.next());
        if (q.size() < 2) continue;
        if (count_witness_quadruples(q) != 0) continue;
        ++hits;
        PolytopeGraph g = build_graph(q);
        CHECK(g.non_edges.empty());
    }
    CHECK(hits > 0);
}
