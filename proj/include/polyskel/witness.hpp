#pragma once

#include "polyskel/point.hpp"
#include "polyskel/rational.hpp"
#include "polyskel/sampling.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polyskel {

// W(x,y): points of Q other than x,y inside the box [x^y, xvy]. These are
// the only points that can carry a convex combination blocking [x,y].
struct WitnessSet {
    Point x, y;
    std::vector<Point> members;  // ascending
};

inline WitnessSet witness_set(const VertexSet& q, const Point& x, const Point& y) {
    if (x == y) throw std::invalid_argument("witness_set: x == y");
    if (!q.contains(x) || !q.contains(y))
        throw std::invalid_argument("witness_set: endpoint not in Q");
    WitnessSet w{x, y, {}};
    int d = hamming(x, y);
    // Two equivalent scans; pick the cheaper side.
    if (d <= 30 && (std::size_t{1} << d) < 2 * q.size()) {
        for (const Point& z : interval_points(x, y))
            if (z != x && z != y && q.contains(z)) w.members.push_back(z);
    } else {
        for (const Point& z : q.points())
            if (z != x && z != y && in_interval(z, x, y)) w.members.push_back(z);
    }
    return w;
}

// Fast path for adjacency: |W(x,y)| without materializing the set.
inline std::size_t witness_count(const VertexSet& q, const Point& x, const Point& y) {
    std::size_t c = 0;
    int d = hamming(x, y);
    if (d <= 30 && (std::size_t{1} << d) < 2 * q.size()) {
        for (const Point& z : interval_points(x, y))
            if (z != x && z != y && q.contains(z)) ++c;
    } else {
        for (const Point& z : q.points())
            if (z != x && z != y && in_interval(z, x, y)) ++c;
    }
    return c;
}

// y is (x,alpha)-typical: both overlap statistics sit within +-alpha*n of
// their fair-coin expectations given |x|:
//   |x|/2 - an <= |x^y| <= |x|/2 + an
//   (n-|x|)/2 - an <= |(xvy)^c| <= (n-|x|)/2 + an
// Bounds are real-valued and non-strict, evaluated literally.
inline bool is_typical(const Point& x, const Point& y, double alpha) {
    require_same_dim(x, y);
    double an = alpha * x.n;
    double wx = weight(x);
    double a = weight(meet(x, y));
    double b = complement_count(x, y);
    return a >= wx / 2 - an && a <= wx / 2 + an &&
           b >= (x.n - wx) / 2 - an && b <= (x.n - wx) / 2 + an;
}

inline bool is_typical_pair(const Point& x, const Point& y, double alpha) {
    return is_typical(x, y, alpha) && is_typical(y, x, alpha);
}

constexpr int kFullCubeMaxDim = 24;

// Number of atypical y over an explicit universe.
inline std::uint64_t count_atypical(const Point& x, double alpha, const VertexSet& universe) {
    std::uint64_t c = 0;
    for (const Point& y : universe.points())
        if (!is_typical(x, y, alpha)) ++c;
    return c;
}

// Number of atypical y over all of {0,1}^n (exhaustive, n <= 24).
inline std::uint64_t count_atypical_full_cube(const Point& x, double alpha) {
    if (x.n > kFullCubeMaxDim)
        throw std::invalid_argument("count_atypical_full_cube: n > 24");
    std::uint64_t c = 0;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << x.n); ++w)
        if (!is_typical(x, Point(w, x.n), alpha)) ++c;
    return c;
}

// Two-block binomial-tail union bound on the full-cube atypical count.
// |x^y| depends only on y's bits inside supp(x), |(xvy)^c| only on the bits
// outside, so a union bound over the two windows gives
//   tail(Bin(|x|), |x|/2 +- an) * 2^(n-|x|) + 2^|x| * tail(Bin(n-|x|), ...).
inline BigInt atypical_union_bound(int n, int weight_x, double alpha) {
    auto tail = [&](int m, double center) {
        // sum of C(m, j) over j outside [center - an, center + an]
        double an = alpha * n;
        BigInt binom = 1, acc = 0;
        for (int j = 0; j <= m; ++j) {
            if (j < center - an || j > center + an) acc += binom;
            binom = binom * (m - j) / (j + 1);
        }
        return acc;
    };
    BigInt lhs = tail(weight_x, weight_x / 2.0);
    BigInt rhs = tail(n - weight_x, (n - weight_x) / 2.0);
    BigInt pow_lo = BigInt(1) << (n - weight_x);
    BigInt pow_hi = BigInt(1) << weight_x;
    return lhs * pow_lo + pow_hi * rhs;
}

}  // namespace polyskel
