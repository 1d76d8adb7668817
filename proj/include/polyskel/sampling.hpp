#pragma once

#include "polyskel/analytics.hpp"
#include "polyskel/point.hpp"
#include "polyskel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyskel {

// Probability schedule for |Q_p^n| experiments.
//   EXPLICIT     p given directly
//   POW2         p = 2^(-c n)
//   HALF_SCALED  p = ((1 +- eps)/sqrt(2))^n
//   DELTA_SCALED p = ((1 +- eps) * 2^(-delta*))^n, delta* the clique exponent
struct RateSpec {
    enum class Form { Explicit, Pow2, HalfScaled, DeltaScaled };
    Form form = Form::Explicit;
    double value = 0.0;  // p for Explicit, c for Pow2, eps magnitude otherwise
    int sign = +1;       // sign of the (1 +- eps) factor's eps

    static RateSpec explicit_p(double p) { return {Form::Explicit, p, +1}; }
    static RateSpec pow2(double c) { return {Form::Pow2, c, +1}; }
    static RateSpec half_scaled(double eps, int sign) { return {Form::HalfScaled, eps, sign}; }
    static RateSpec delta_scaled(double eps, int sign) { return {Form::DeltaScaled, eps, sign}; }

    std::string label() const {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        switch (form) {
            case Form::Explicit: os.precision(6); os << "explicit:p=" << value; break;
            case Form::Pow2: os.precision(4); os << "pow2:c=" << value; break;
            case Form::HalfScaled:
                os.precision(4);
                os << "half:eps=" << (sign > 0 ? "+" : "-") << value;
                break;
            case Form::DeltaScaled:
                os.precision(4);
                os << "delta:eps=" << (sign > 0 ? "+" : "-") << value;
                break;
        }
        return os.str();
    }
};

inline double resolve_rate(const RateSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("resolve_rate: n >= 1 required");
    double p;
    switch (spec.form) {
        case RateSpec::Form::Explicit:
            p = spec.value;
            if (p < 0.0 || p > 1.0) throw std::invalid_argument("resolve_rate: p outside [0,1]");
            break;
        case RateSpec::Form::Pow2:
            if (spec.value < 0.0) throw std::invalid_argument("resolve_rate: c must be >= 0");
            p = std::pow(2.0, -spec.value * n);
            break;
        case RateSpec::Form::HalfScaled: {
            double base = (1.0 + spec.sign * spec.value) / std::sqrt(2.0);
            if (base < 0.0) throw std::invalid_argument("resolve_rate: 1 +- eps negative");
            p = std::pow(base, n);
            break;
        }
        case RateSpec::Form::DeltaScaled: {
            double base = (1.0 + spec.sign * spec.value) * std::pow(2.0, -solve_delta());
            if (base < 0.0) throw std::invalid_argument("resolve_rate: 1 +- eps negative");
            p = std::pow(base, n);
            break;
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

// Exact floor(p * 2^64) via the IEEE-754 decomposition of p; never touches
// floating comparison at sample time.
inline std::uint64_t inclusion_threshold(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return ~std::uint64_t{0};  // caller special-cases p == 1
    int exp;
    double frac = std::frexp(p, &exp);              // p = frac * 2^exp, frac in [0.5,1)
    auto mant = static_cast<std::uint64_t>(frac * 0x1p53);  // exact, 53 bits
    int shift = exp + 11;                           // p*2^64 = mant * 2^shift
    if (shift >= 0) return mant << shift;           // p < 1 forces shift <= 11
    if (shift <= -64) return 0;
    return mant >> (-shift);
}

// A sampled subset of {0,1}^n: strictly ascending, deduplicated, immutable
// after construction. Membership is O(1) via a bitset index when n is small
// enough, binary search otherwise.
class VertexSet {
public:
    VertexSet(int n, std::vector<Point> points, std::string provenance = "explicit")
        : n_(n), points_(std::move(points)), provenance_(std::move(provenance)) {
        if (n < 1 || n > 64) throw std::invalid_argument("VertexSet: bad dimension");
        for (const Point& p : points_)
            if (p.n != n) throw std::invalid_argument("VertexSet: mixed dimensions");
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
        if (n_ <= kBitsetMaxDim) {
            index_.assign((std::size_t{1} << n_) / 64 + 1, 0);
            for (const Point& p : points_)
                index_[p.bits >> 6] |= std::uint64_t{1} << (p.bits & 63);
        }
    }

    int dim() const { return n_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::string& provenance() const { return provenance_; }

    bool contains(const Point& p) const {
        if (p.n != n_) return false;
        if (!index_.empty())
            return (index_[p.bits >> 6] >> (p.bits & 63)) & 1u;
        return std::binary_search(points_.begin(), points_.end(), p);
    }

    std::optional<std::size_t> index_of(const Point& p) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), p);
        if (it == points_.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - points_.begin());
    }

    static constexpr int kBitsetMaxDim = 26;

private:
    int n_;
    std::vector<Point> points_;
    std::string provenance_;
    std::vector<std::uint64_t> index_;  // 2^n bit membership table, small n only
};

// Below this rate the sampler switches from enumerating all 2^n points to
// geometric gap-skipping (expected O(|Q|) draws).
constexpr double kGapSkipRate = 0x1p-20;

// Bernoulli(p) product over {0,1}^n, fully determined by (n, p, seed).
// Enumeration path: one splitmix64 output per point, include iff
// out < floor(p * 2^64). Gap-skip path: geometric jumps driven by the same
// stream; used when p < 2^-20 so huge cubes stay O(|Q|).
inline VertexSet sample_vertex_set(int n, double p, std::uint64_t seed) {
    if (n < 1 || n > 64) throw std::invalid_argument("sample_vertex_set: bad n");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_vertex_set: p outside [0,1]");
    std::ostringstream prov;
    prov << "seed=" << seed << ",p=" << p;
    std::vector<Point> pts;
    SplitMix64 rng(seed);
    if (p >= 1.0) {
        if (n > 30) throw std::invalid_argument("sample_vertex_set: p=1 with n > 30");
        pts.reserve(std::size_t{1} << n);
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
            pts.emplace_back(w, n);
        return VertexSet(n, std::move(pts), prov.str());
    }
    if (p <= 0.0) return VertexSet(n, {}, prov.str());

    if (p < kGapSkipRate || n > 32) {
        // skip ~ Geometric(p): number of misses before the next hit
        double log1mp = std::log1p(-p);
        bool unbounded = n >= 64;
        std::uint64_t limit = unbounded ? 0 : (std::uint64_t{1} << n);
        std::uint64_t pos = 0;
        bool first = true;
        while (true) {
            double u = rng.next_unit();
            if (u <= 0.0) u = 0x1.0p-53;
            auto skip = static_cast<double>(std::floor(std::log(u) / log1mp));
            if (skip > 1.8e19) break;
            auto jump = static_cast<std::uint64_t>(skip) + (first ? 0 : 1);
            first = false;
            if (!unbounded && jump >= limit - pos) break;
            if (unbounded && jump > ~std::uint64_t{0} - pos) break;
            pos += jump;
            pts.emplace_back(pos, n);
            if (!unbounded && pos == limit - 1) break;
            if (unbounded && pos == ~std::uint64_t{0}) break;
        }
    } else {
        std::uint64_t threshold = inclusion_threshold(p);
        std::uint64_t limit = std::uint64_t{1} << n;
        for (std::uint64_t w = 0; w < limit; ++w)
            if (rng.next() < threshold) pts.emplace_back(w, n);
    }
    return VertexSet(n, std::move(pts), prov.str());
}

inline VertexSet full_cube(int n) {
    if (n < 1 || n > 26) throw std::invalid_argument("full_cube: n too large");
    std::vector<Point> pts;
    pts.reserve(std::size_t{1} << n);
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
        pts.emplace_back(w, n);
    return VertexSet(n, std::move(pts), "full_cube");
}

// File format: first line "n=<int>", then one hex point per line, ascending.
inline void write_vertex_set(const VertexSet& q, std::ostream& os) {
    os << "n=" << q.dim() << "\n";
    for (const Point& p : q.points()) os << to_hex(p) << "\n";
}

inline VertexSet read_vertex_set(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("n=", 0) != 0)
        throw std::runtime_error("vertex set file: missing n= header");
    int n = std::stoi(line.substr(2));
    std::vector<Point> pts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        pts.push_back(point_from_hex(line, n));
    }
    return VertexSet(n, std::move(pts), "file");
}

}  // namespace polyskel
