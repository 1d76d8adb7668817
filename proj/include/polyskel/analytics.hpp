#pragma once

#include "polyskel/point.hpp"
#include "polyskel/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyskel {

// Binary entropy H(d) = -d log2 d - (1-d) log2 (1-d), with 0 log 0 := 0.
inline double entropy(double d) {
    if (d < 0.0 || d > 1.0) throw std::invalid_argument("entropy: d outside [0,1]");
    if (d == 0.0 || d == 1.0) return 0.0;
    return -d * std::log2(d) - (1.0 - d) * std::log2(1.0 - d);
}

// f(d) = 1 + 2d + H(d), the witness-quadruple counting exponent.
inline double f_exponent(double d) {
    if (d < 0.0 || d > 1.0) throw std::invalid_argument("f_exponent: d outside [0,1]");
    return 1.0 + 2.0 * d + entropy(d);
}

// Maximizer of f. Closed form 4/5, cross-checked two ways: ternary search
// on f (good to ~1e-7, the noise floor of a flat quadratic maximum in
// doubles) and sign bisection on the slope f'(d) = 2 + log2((1-d)/d),
// which is exact to 1e-12.
inline double argmax_f() {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (f_exponent(m1) < f_exponent(m2)) lo = m1; else hi = m2;
    }
    if (std::abs(0.5 * (lo + hi) - 0.8) > 1e-6)
        throw std::logic_error("argmax_f: ternary search disagrees with closed form");

    double a = 1e-9, b = 1.0 - 1e-9;
    while (b - a > 1e-13) {
        double mid = 0.5 * (a + b);
        if (2.0 + std::log2((1.0 - mid) / mid) > 0.0) a = mid; else b = mid;
    }
    if (std::abs(0.5 * (a + b) - 0.8) > 1e-9)
        throw std::logic_error("argmax_f: slope bisection disagrees with closed form");
    return 0.8;
}

// Root of H(d) = 2d - 1 on (1/2, 1), by bisection on g(d) = H(d) - 2d + 1.
// g(1/2) = 1 > 0, g(1) = -1 < 0.
inline double solve_delta() {
    double lo = 0.5 + 1e-9, hi = 1.0 - 1e-9;
    while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        double g = entropy(mid) - 2.0 * mid + 1.0;
        if (g > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct ThresholdConstants {
    double delta_star;
    double f_max_arg;
    double f_max;
    double weak_exponent;
};

inline ThresholdConstants threshold_constants() {
    ThresholdConstants t;
    t.delta_star = solve_delta();
    t.f_max_arg = argmax_f();
    t.f_max = f_exponent(t.f_max_arg);
    t.weak_exponent = t.f_max / 4.0;
    return t;
}

// --- averaging-tuple counting -------------------------------------------

namespace detail {
// key: per differing coordinate, how many tuple entries have a 1 there
using CoordSums = std::vector<int>;

inline std::vector<int> diff_positions(const Point& x, const Point& y) {
    std::vector<int> pos;
    for (std::uint64_t m = x.bits ^ y.bits; m; m &= m - 1)
        pos.push_back(std::countr_zero(m));
    return pos;
}
}  // namespace detail

// Number of ordered 2k-tuples from S (optionally minus {x,y}) whose mean is
// (x+y)/2. Entries outside the interval [x^y, xvy] can never participate and
// are dropped up front; on agreement coordinates all interval points already
// match, so only the d differing coordinates are tracked. Meet in the middle
// over ordered k-tuples.
inline BigInt count_averaging_tuples(const std::vector<Point>& s_in,
                                     const Point& x, const Point& y,
                                     int k, bool exclude_endpoints,
                                     std::uint64_t half_budget = 100'000'000) {
    if (k < 1) throw std::invalid_argument("count_averaging_tuples: k >= 1 required");
    require_same_dim(x, y);
    std::vector<Point> s;
    for (const Point& z : s_in) {
        if (!in_interval(z, x, y)) continue;
        if (exclude_endpoints && (z == x || z == y)) continue;
        s.push_back(z);
    }
    auto pos = detail::diff_positions(x, y);
    int d = static_cast<int>(pos.size());
    if (s.empty()) return 0;
    double half = std::pow(static_cast<double>(s.size()), k);
    if (half > static_cast<double>(half_budget))
        throw std::runtime_error("count_averaging_tuples: budget exceeded");

    // enumerate ordered k-tuples, accumulate coordinate-sum multiset counts
    std::map<detail::CoordSums, BigInt> sums;
    std::vector<std::size_t> idx(k, 0);
    detail::CoordSums acc(d, 0);
    // incremental enumeration over the k indices
    std::vector<detail::CoordSums> contrib(s.size(), detail::CoordSums(d, 0));
    for (std::size_t j = 0; j < s.size(); ++j)
        for (int c = 0; c < d; ++c)
            contrib[j][c] = s[j].bit(pos[c]) ? 1 : 0;
    while (true) {
        detail::CoordSums total(d, 0);
        for (int i = 0; i < k; ++i)
            for (int c = 0; c < d; ++c) total[c] += contrib[idx[i]][c];
        sums[total] += 1;
        int i = k - 1;
        while (i >= 0 && ++idx[i] == s.size()) { idx[i] = 0; --i; }
        if (i < 0) break;
    }
    // pair halves: need total per differing coordinate = k
    BigInt count = 0;
    for (const auto& [key, c1] : sums) {
        detail::CoordSums need(d);
        bool ok = true;
        for (int c = 0; c < d; ++c) {
            need[c] = k - key[c];
            if (need[c] < 0) { ok = false; break; }
        }
        if (!ok) continue;
        auto it = sums.find(need);
        if (it != sums.end()) count += c1 * it->second;
    }
    return count;
}

// C(2k,k)^d: ordered tuples over the full interval with d differing
// coordinates, endpoints included.
inline BigInt closed_form_tuple_count(int d, int k) {
    if (d < 0 || k < 0) throw std::invalid_argument("closed_form_tuple_count: negative arg");
    BigInt binom = 1;
    for (int i = 1; i <= k; ++i)
        binom = binom * (k + i) / i;  // C(2k,k) built incrementally
    BigInt out = 1;
    for (int i = 0; i < d; ++i) out *= binom;
    return out;
}

}  // namespace polyskel
