#pragma once

#include "polyskel/lp.hpp"
#include "polyskel/point.hpp"
#include "polyskel/rng.hpp"
#include "polyskel/sampling.hpp"
#include "polyskel/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polyskel {

enum class Method { Auto, Lp, OracleFull, OracleHyperplane };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Lp: return "lp";
        case Method::OracleFull: return "oracle_full";
        case Method::OracleHyperplane: return "oracle_hyperplane";
    }
    return "?";
}

inline Method method_from_name(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "lp") return Method::Lp;
    if (s == "oracle_full") return Method::OracleFull;
    if (s == "oracle_hyperplane") return Method::OracleHyperplane;
    throw std::invalid_argument("unknown method: " + s);
}

// Edge certificate: |W(x,y)| <= 1 forces an edge outright.
struct WitnessCountCert {
    std::size_t count;
};

// Non-edge certificate: sum lambda_z z = alpha x + (1-alpha) y with
// lambda > 0 on support, sum lambda = 1, support disjoint from {x,y}.
struct ConvexCombinationCert {
    std::vector<Point> support;
    std::vector<Rat> lambda;
    Rat alpha;
};

// Edge certificate: c.x = c.y = b and c.z <= b - 1 for all z in Q\{x,y}.
struct HyperplaneCert {
    std::vector<Rat> c;
    Rat b;
};

// Non-edge certificate: 2k points of Q\{x,y} averaging to the midpoint.
struct AveragingTupleCert {
    std::vector<Point> tuple;
    int k;
};

// Verdict backed by a Farkas vector for the named LP; replay rebuilds the
// system and checks y'A <= 0, y'b > 0.
struct LpInfeasibleCert {
    Method system;
    std::vector<Rat> farkas;
};

using Certificate = std::variant<WitnessCountCert, ConvexCombinationCert,
                                 HyperplaneCert, AveragingTupleCert,
                                 LpInfeasibleCert>;

struct EdgeStatus {
    bool is_edge;
    Certificate certificate;
};

// --- LP system builders --------------------------------------------------

namespace detail {

// Projected witness LP. Coordinates are restricted to the d differing
// positions and flipped so x |-> all-ones, y |-> all-zeros there. A convex
// combination of witnesses hits the segment iff all d projected coordinate
// sums agree, so the system is: sum lambda = 1 and, for i = 2..d,
// (coordinate-i sum) - (coordinate-1 sum) = 0.
inline FeasibilitySystem projected_witness_system(const std::vector<Point>& w,
                                                  const Point& x, const Point& y) {
    std::uint64_t flip = y.bits & ~x.bits;
    std::vector<int> pos;
    for (std::uint64_t m = x.bits ^ y.bits; m; m &= m - 1)
        pos.push_back(std::countr_zero(m));
    std::size_t d = pos.size(), k = w.size();
    FeasibilitySystem sys;
    sys.a.assign(d, std::vector<Rat>(k, 0));
    sys.b.assign(d, 0);
    sys.b[0] = 1;
    for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t zf = w[j].bits ^ flip;
        int first = (zf >> pos[0]) & 1u;
        sys.a[0][j] = 1;
        for (std::size_t i = 1; i < d; ++i)
            sys.a[i][j] = static_cast<int>((zf >> pos[i]) & 1u) - first;
    }
    return sys;
}

// Full-support oracle: lambda over Q\{x,y} plus an explicit alpha in [0,1].
// Rows: per coordinate, sum lambda_z z_i - alpha (x_i - y_i) = y_i;
// plus sum lambda = 1 and alpha + slack = 1.
inline FeasibilitySystem full_oracle_system(const std::vector<Point>& support,
                                            const Point& x, const Point& y) {
    int n = x.n;
    std::size_t k = support.size();
    FeasibilitySystem sys;
    sys.a.assign(n + 2, std::vector<Rat>(k + 2, 0));
    sys.b.assign(n + 2, 0);
    for (int i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) sys.a[i][j] = support[j].bit(i) ? 1 : 0;
        sys.a[i][k] = -(static_cast<int>(x.bit(i)) - static_cast<int>(y.bit(i)));
        sys.b[i] = y.bit(i) ? 1 : 0;
    }
    for (std::size_t j = 0; j < k; ++j) sys.a[n][j] = 1;
    sys.b[n] = 1;
    sys.a[n + 1][k] = 1;
    sys.a[n + 1][k + 1] = 1;
    sys.b[n + 1] = 1;
    return sys;
}

// Hyperplane oracle: find (c, b) with c.x = c.y = b and c.z <= b - 1 on the
// rest of Q. Free variables are split into nonnegative differences; strict
// inequalities carry a unit margin (lossless up to scaling over rationals).
// Variables: c_i^+, c_i^- (2n), b^+, b^- (2), slack per z.
inline FeasibilitySystem hyperplane_system(const std::vector<Point>& others,
                                           const Point& x, const Point& y) {
    int n = x.n;
    std::size_t m = 2 + others.size();
    std::size_t k = 2 * n + 2 + others.size();
    FeasibilitySystem sys;
    sys.a.assign(m, std::vector<Rat>(k, 0));
    sys.b.assign(m, 0);
    auto fill_row = [&](std::size_t r, const Point& z) {
        for (int i = 0; i < n; ++i) {
            int zi = z.bit(i) ? 1 : 0;
            sys.a[r][2 * i] = zi;
            sys.a[r][2 * i + 1] = -zi;
        }
        sys.a[r][2 * n] = -1;
        sys.a[r][2 * n + 1] = 1;
    };
    fill_row(0, x);
    fill_row(1, y);
    for (std::size_t j = 0; j < others.size(); ++j) {
        fill_row(2 + j, others[j]);
        sys.a[2 + j][2 * n + 2 + j] = 1;
        sys.b[2 + j] = -1;
    }
    return sys;
}

inline std::vector<Point> others_of(const VertexSet& q, const Point& x, const Point& y) {
    std::vector<Point> s;
    s.reserve(q.size());
    for (const Point& z : q.points())
        if (z != x && z != y) s.push_back(z);
    return s;
}

}  // namespace detail

// --- edge classification -------------------------------------------------

inline EdgeStatus edge_status(const VertexSet& q, const Point& x, const Point& y,
                              Method method = Method::Auto) {
    if (x == y) throw std::invalid_argument("edge_status: x == y");
    if (!q.contains(x) || !q.contains(y))
        throw std::invalid_argument("edge_status: endpoint not in Q");

    switch (method) {
        case Method::Auto:
        case Method::Lp: {
            WitnessSet w = witness_set(q, x, y);
            if (method == Method::Auto && w.members.size() <= 1)
                return {true, WitnessCountCert{w.members.size()}};
            if (w.members.empty())
                return {true, WitnessCountCert{0}};

            // Midpoint-pair shortcut: z and its interval complement z'
            // average to (x+y)/2, an immediate lambda = (1/2, 1/2)
            // certificate. The complement bijection maps x <-> y, so z' is
            // a witness iff it lies in Q.
            std::uint64_t agree_ones = x.bits & y.bits;
            std::uint64_t diff = x.bits ^ y.bits;
            for (const Point& z : w.members) {
                std::uint64_t zc = agree_ones | (diff & ~z.bits);
                if (zc <= z.bits || !q.contains(Point(zc, x.n))) continue;
                ConvexCombinationCert cert;
                cert.support = {z, Point(zc, x.n)};
                cert.lambda = {Rat(1, 2), Rat(1, 2)};
                cert.alpha = Rat(1, 2);
                return {false, std::move(cert)};
            }

            // Degenerate-coordinate filter: in the flipped projection any
            // feasible combination has all coordinate sums equal, so a
            // coordinate on which every witness reads 0 (or every witness
            // reads 1) is impossible next to sum(lambda) = 1 — each witness
            // also carries at least one 1 (resp. one 0). The Farkas vector
            // is explicit: with s = d e_c - 1 (resp. 1 - d e_c) summing to
            // zero, s.z <= -1 on every witness, and y = (1, s_1..s_{d-1})
            // certifies infeasibility of the projected system.
            std::uint64_t flip = y.bits & ~x.bits;
            {
                std::uint64_t all_and = diff, all_or = 0;
                for (const Point& z : w.members) {
                    std::uint64_t zf = (z.bits ^ flip) & diff;
                    all_and &= zf;
                    all_or |= zf;
                }
                std::uint64_t degen = all_and | (diff & ~all_or);
                if (degen) {
                    int d = hamming(x, y);
                    int target = std::countr_zero(degen);
                    bool all_one = (all_and >> target) & 1u;
                    std::vector<Rat> farkas;
                    farkas.reserve(d);
                    farkas.push_back(1);  // the sum(lambda) = 1 row
                    int idx = 0;
                    for (std::uint64_t m = diff; m; m &= m - 1, ++idx) {
                        if (idx == 0) continue;  // reference coordinate
                        int s = std::countr_zero(m) == target ? d - 1 : -1;
                        farkas.push_back(all_one ? -s : s);
                    }
                    return {true, LpInfeasibleCert{Method::Lp, std::move(farkas)}};
                }
            }

            // alpha = common projected coordinate value (read off coord 1)
            int p0 = std::countr_zero(diff);
            auto combination_cert = [&](const std::vector<Point>& members,
                                        const LpVerdict& v) {
                ConvexCombinationCert cert;
                cert.alpha = 0;
                for (std::size_t j = 0; j < members.size(); ++j) {
                    if (v.lambda[j] == 0) continue;
                    cert.support.push_back(members[j]);
                    cert.lambda.push_back(v.lambda[j]);
                    if (((members[j].bits ^ flip) >> p0) & 1u)
                        cert.alpha += v.lambda[j];
                }
                return cert;
            };

            // Large witness sets: feasibility over a subset implies
            // feasibility over the whole set, so try a small stride sample
            // first and only fall back to the full system when it fails.
            std::size_t cap = 4 * static_cast<std::size_t>(hamming(x, y));
            if (w.members.size() > cap) {
                std::vector<Point> subset;
                subset.reserve(cap);
                for (std::size_t i = 0; i < cap; ++i)
                    subset.push_back(w.members[i * w.members.size() / cap]);
                LpVerdict sv = solve_feasibility_guided(
                    detail::projected_witness_system(subset, x, y));
                if (sv.feasible) return {false, combination_cert(subset, sv)};
            }

            auto sys = detail::projected_witness_system(w.members, x, y);
            LpVerdict v = solve_feasibility_guided(sys);
            if (!v.feasible)
                return {true, LpInfeasibleCert{Method::Lp, v.farkas}};
            return {false, combination_cert(w.members, v)};
        }
        case Method::OracleFull: {
            auto s = detail::others_of(q, x, y);
            if (s.empty()) return {true, WitnessCountCert{0}};
            auto sys = detail::full_oracle_system(s, x, y);
            LpVerdict v = solve_feasibility_guided(sys);
            if (!v.feasible)
                return {true, LpInfeasibleCert{Method::OracleFull, v.farkas}};
            ConvexCombinationCert cert;
            cert.alpha = v.lambda[s.size()];
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (v.lambda[j] == 0) continue;
                cert.support.push_back(s[j]);
                cert.lambda.push_back(v.lambda[j]);
            }
            return {false, std::move(cert)};
        }
        case Method::OracleHyperplane: {
            auto s = detail::others_of(q, x, y);
            if (s.empty()) return {true, WitnessCountCert{0}};
            auto sys = detail::hyperplane_system(s, x, y);
            LpVerdict v = solve_feasibility_guided(sys);
            if (!v.feasible)
                return {false, LpInfeasibleCert{Method::OracleHyperplane, v.farkas}};
            HyperplaneCert cert;
            cert.c.resize(x.n);
            for (int i = 0; i < x.n; ++i)
                cert.c[i] = v.lambda[2 * i] - v.lambda[2 * i + 1];
            cert.b = v.lambda[2 * x.n] - v.lambda[2 * x.n + 1];
            return {true, std::move(cert)};
        }
    }
    throw std::logic_error("edge_status: unreachable");
}

// --- certificate replay --------------------------------------------------

inline bool verify_certificate(const VertexSet& q, const Point& x, const Point& y,
                               const EdgeStatus& st) {
    struct Visitor {
        const VertexSet& q;
        const Point &x, &y;
        bool is_edge;

        bool operator()(const WitnessCountCert& c) const {
            return is_edge && witness_count(q, x, y) == c.count && c.count <= 1;
        }
        bool operator()(const ConvexCombinationCert& c) const {
            if (is_edge) return false;
            if (c.support.size() != c.lambda.size() || c.support.empty()) return false;
            if (c.alpha <= 0 || c.alpha >= 1) return false;
            Rat total = 0;
            for (const Rat& l : c.lambda) {
                if (l <= 0) return false;
                total += l;
            }
            if (total != 1) return false;
            for (const Point& z : c.support)
                if (z == x || z == y || !q.contains(z)) return false;
            for (int i = 0; i < x.n; ++i) {
                Rat lhs = 0;
                for (std::size_t j = 0; j < c.support.size(); ++j)
                    if (c.support[j].bit(i)) lhs += c.lambda[j];
                Rat rhs = c.alpha * (x.bit(i) ? 1 : 0) + (Rat(1) - c.alpha) * (y.bit(i) ? 1 : 0);
                if (lhs != rhs) return false;
            }
            return true;
        }
        bool operator()(const HyperplaneCert& c) const {
            if (!is_edge) return false;
            if (static_cast<int>(c.c.size()) != x.n) return false;
            auto dot = [&](const Point& z) {
                Rat acc = 0;
                for (int i = 0; i < z.n; ++i)
                    if (z.bit(i)) acc += c.c[i];
                return acc;
            };
            if (dot(x) != c.b || dot(y) != c.b) return false;
            for (const Point& z : q.points())
                if (z != x && z != y && dot(z) > c.b - 1) return false;
            return true;
        }
        bool operator()(const AveragingTupleCert& c) const {
            if (is_edge) return false;
            if (c.k < 1 || c.tuple.size() != static_cast<std::size_t>(2 * c.k)) return false;
            for (const Point& z : c.tuple)
                if (z == x || z == y || !q.contains(z)) return false;
            // (x+y)/2 = (1/2k) sum z_i, coordinate-wise over integers
            for (int i = 0; i < x.n; ++i) {
                int sum = 0;
                for (const Point& z : c.tuple) sum += z.bit(i) ? 1 : 0;
                int lhs = (x.bit(i) ? 1 : 0) + (y.bit(i) ? 1 : 0);  // times k
                if (sum != c.k * lhs) return false;
            }
            return true;
        }
        bool operator()(const LpInfeasibleCert& c) const {
            FeasibilitySystem sys;
            switch (c.system) {
                case Method::Lp: {
                    if (!is_edge) return false;
                    WitnessSet w = witness_set(q, x, y);
                    if (w.members.empty()) return false;
                    sys = detail::projected_witness_system(w.members, x, y);
                    break;
                }
                case Method::OracleFull: {
                    if (!is_edge) return false;
                    sys = detail::full_oracle_system(detail::others_of(q, x, y), x, y);
                    break;
                }
                case Method::OracleHyperplane: {
                    if (is_edge) return false;
                    sys = detail::hyperplane_system(detail::others_of(q, x, y), x, y);
                    break;
                }
                default:
                    return false;
            }
            return verify_farkas(sys, c.farkas);
        }
    };
    return std::visit(Visitor{q, x, y, st.is_edge}, st.certificate);
}

// --- averaging tuple search ---------------------------------------------

enum class SearchOutcome { Found, NotFound, BudgetExceeded };

struct AveragingSearchResult {
    SearchOutcome outcome;
    std::optional<AveragingTupleCert> certificate;
};

// Smallest k <= k_max with a 2k-multiset of W(x,y) averaging to (x+y)/2.
// Meet in the middle over k-multisets, keyed by projected coordinate sums.
inline AveragingSearchResult averaging_certificate_search(
    const VertexSet& q, const Point& x, const Point& y, int k_max,
    std::uint64_t half_budget = 2'000'000) {
    if (!q.contains(x) || !q.contains(y))
        throw std::invalid_argument("averaging_certificate_search: endpoint not in Q");
    WitnessSet w = witness_set(q, x, y);
    if (w.members.empty()) return {SearchOutcome::NotFound, std::nullopt};
    std::vector<int> pos;
    for (std::uint64_t m = x.bits ^ y.bits; m; m &= m - 1)
        pos.push_back(std::countr_zero(m));
    int d = static_cast<int>(pos.size());
    bool truncated = false;

    for (int k = 1; k <= k_max; ++k) {
        // number of k-multisets of W: C(|W|+k-1, k)
        double combos = 1;
        for (int i = 0; i < k; ++i)
            combos *= static_cast<double>(w.members.size() + i) / (i + 1);
        if (combos > static_cast<double>(half_budget)) {
            truncated = true;
            break;
        }
        std::map<std::vector<int>, std::vector<std::size_t>> seen;
        std::vector<std::size_t> pick(k, 0);
        while (true) {
            std::vector<int> sums(d, 0);
            for (std::size_t j : pick)
                for (int c = 0; c < d; ++c)
                    sums[c] += w.members[j].bit(pos[c]) ? 1 : 0;
            std::vector<int> need(d);
            bool ok = true;
            for (int c = 0; c < d; ++c) {
                need[c] = k - sums[c];
                if (need[c] < 0) ok = false;
            }
            if (ok) {
                auto it = seen.find(need);
                if (it != seen.end()) {
                    AveragingTupleCert cert;
                    cert.k = k;
                    for (std::size_t j : it->second) cert.tuple.push_back(w.members[j]);
                    for (std::size_t j : pick) cert.tuple.push_back(w.members[j]);
                    return {SearchOutcome::Found, std::move(cert)};
                }
            }
            seen.emplace(std::move(sums), pick);
            // next nondecreasing index tuple
            int i = k - 1;
            while (i >= 0 && pick[i] == w.members.size() - 1) --i;
            if (i < 0) break;
            std::size_t v = pick[i] + 1;
            for (int j = i; j < k; ++j) pick[j] = v;
        }
    }
    return {truncated ? SearchOutcome::BudgetExceeded : SearchOutcome::NotFound,
            std::nullopt};
}

// --- graph construction --------------------------------------------------

struct PolytopeGraph {
    const VertexSet* vertices = nullptr;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> non_edges;
    std::vector<Certificate> non_edge_certificates;  // parallel to non_edges when retained
    Method method = Method::Auto;
    bool sampled = false;                  // pair-sampled, not all C(|Q|,2) pairs
    std::uint64_t pairs_classified = 0;

    std::size_t num_vertices() const { return vertices->size(); }
};

inline PolytopeGraph build_graph(const VertexSet& q, Method method = Method::Auto,
                                 bool retain_certificates = false) {
    PolytopeGraph g;
    g.vertices = &q;
    g.method = method;
    std::size_t m = q.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            EdgeStatus st = edge_status(q, q[i], q[j], method);
            ++g.pairs_classified;
            if (st.is_edge) {
                g.edges.emplace_back(i, j);
            } else {
                g.non_edges.emplace_back(i, j);
                if (retain_certificates)
                    g.non_edge_certificates.push_back(std::move(st.certificate));
            }
        }
    }
    return g;
}

// Classify a uniformly sampled subset of pairs (without replacement).
inline PolytopeGraph build_graph_sampled(const VertexSet& q, Method method,
                                         std::uint64_t pair_budget,
                                         std::uint64_t seed) {
    PolytopeGraph g;
    g.vertices = &q;
    g.method = method;
    g.sampled = true;
    std::uint64_t m = q.size();
    std::uint64_t total = m * (m - 1) / 2;
    if (pair_budget >= total) return build_graph(q, method);

    std::set<std::uint64_t> chosen;
    SplitMix64 rng(seed);
    while (chosen.size() < pair_budget)
        chosen.insert(rng.next() % total);
    for (std::uint64_t r : chosen) {
        // unrank pair index r into (i, j), i < j, row-major over i
        std::uint64_t i = 0, row = m - 1;
        std::uint64_t rr = r;
        while (rr >= row) { rr -= row; ++i; --row; }
        std::uint64_t j = i + 1 + rr;
        EdgeStatus st = edge_status(q, q[i], q[j], method);
        ++g.pairs_classified;
        if (st.is_edge) g.edges.emplace_back(i, j);
        else g.non_edges.emplace_back(i, j);
    }
    return g;
}

// Early-exit clique test: scan pairs in descending Hamming distance (distant
// pairs have the biggest witness sets), stop at the first non-edge.
inline bool is_clique_fast(const VertexSet& q, Method method = Method::Auto) {
    std::uint64_t m = q.size();
    if (m <= 2) return true;
    std::vector<std::tuple<int, std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(m * (m - 1) / 2);
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j)
            pairs.emplace_back(-hamming(q[i], q[j]), i, j);
    std::sort(pairs.begin(), pairs.end());
    for (auto& [negd, i, j] : pairs) {
        if (witness_count(q, q[i], q[j]) <= 1) continue;
        if (!edge_status(q, q[i], q[j], method).is_edge) return false;
    }
    return true;
}

}  // namespace polyskel
