#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyskel {

// A point of the Boolean hypercube {0,1}^n, n <= 64, packed into one word.
// Coordinate 1 maps to bit 0 (least significant). Bits at positions >= n
// are always zero.
struct Point {
    std::uint64_t bits = 0;
    int n = 0;

    Point() = default;
    Point(std::uint64_t bits_, int n_) : bits(bits_), n(n_) {
        if (n_ < 1 || n_ > 64)
            throw std::invalid_argument("Point: dimension must be in [1,64]");
        if (n_ < 64 && (bits_ >> n_) != 0)
            throw std::invalid_argument("Point: bits set beyond dimension");
    }

    bool bit(int i) const { return (bits >> i) & 1u; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.bits == b.bits && a.n == b.n;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    // Canonical order: unsigned integer order of the packed word.
    friend bool operator<(const Point& a, const Point& b) { return a.bits < b.bits; }
};

inline void require_same_dim(const Point& x, const Point& y) {
    if (x.n != y.n) throw std::invalid_argument("dimension mismatch");
}

inline Point meet(const Point& x, const Point& y) {
    require_same_dim(x, y);
    return Point(x.bits & y.bits, x.n);
}

inline Point join(const Point& x, const Point& y) {
    require_same_dim(x, y);
    return Point(x.bits | y.bits, x.n);
}

inline int weight(const Point& x) { return std::popcount(x.bits); }

inline int hamming(const Point& x, const Point& y) {
    require_same_dim(x, y);
    return std::popcount(x.bits ^ y.bits);
}

// |(x v y)^c| = n - |x| - |y| + |x ^ y|
inline int complement_count(const Point& x, const Point& y) {
    require_same_dim(x, y);
    return x.n - std::popcount(x.bits | y.bits);
}

inline std::uint64_t dim_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

// z lies in the coordinate box [x ^ y, x v y]?
inline bool in_interval(const Point& z, const Point& x, const Point& y) {
    std::uint64_t lo = x.bits & y.bits, hi = x.bits | y.bits;
    return (z.bits & lo) == lo && (z.bits | hi) == hi;
}

struct Interval {
    Point lo, hi;  // lo = x ^ y, hi = x v y
    int n;
    Interval(const Point& x, const Point& y)
        : lo(meet(x, y)), hi(join(x, y)), n(x.n) {}
    std::uint64_t cardinality_log2() const {
        return std::popcount(lo.bits ^ hi.bits);
    }
};

// All 2^hamming(x,y) points of [x^y, xvy] in ascending word order.
// Submasks of the differing coordinates, added to the meet.
inline std::vector<Point> interval_points(const Point& x, const Point& y) {
    require_same_dim(x, y);
    std::uint64_t base = x.bits & y.bits;
    std::uint64_t diff = x.bits ^ y.bits;
    int d = std::popcount(diff);
    if (d > 30) throw std::invalid_argument("interval_points: interval too large");
    // Expand the i-th counter bit to the i-th set bit of diff; counting
    // 0..2^d-1 yields ascending word order because pdep is monotone.
    std::vector<int> pos;
    pos.reserve(d);
    for (std::uint64_t m = diff; m; m &= m - 1)
        pos.push_back(std::countr_zero(m));
    std::vector<Point> out;
    out.reserve(std::size_t{1} << d);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << d); ++c) {
        std::uint64_t w = base;
        for (int i = 0; i < d; ++i)
            if ((c >> i) & 1u) w |= std::uint64_t{1} << pos[i];
        out.emplace_back(w, x.n);
    }
    return out;
}

// Lowercase hex, ceil(n/4) digits, most significant nibble first.
inline std::string to_hex(const Point& p) {
    int digits = (p.n + 3) / 4;
    static const char* hexd = "0123456789abcdef";
    std::string s(digits, '0');
    for (int i = 0; i < digits; ++i)
        s[digits - 1 - i] = hexd[(p.bits >> (4 * i)) & 0xF];
    return s;
}

inline Point point_from_hex(const std::string& s, int n) {
    int digits = (n + 3) / 4;
    if (static_cast<int>(s.size()) != digits)
        throw std::invalid_argument("point_from_hex: wrong digit count for n");
    std::uint64_t w = 0;
    for (char c : s) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else throw std::invalid_argument("point_from_hex: bad hex digit");
        w = (w << 4) | static_cast<std::uint64_t>(v);
    }
    return Point(w, n);
}

}  // namespace polyskel
