#pragma once

#include "polyskel/adjacency.hpp"
#include "polyskel/metrics.hpp"
#include "polyskel/quadruples.hpp"
#include "polyskel/rng.hpp"
#include "polyskel/sampling.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace polyskel {

enum class MetricKind { Density, DensitySampled, MinDegree, Clique, Expansion, Quadruples };

// Above this many pairs, a requested full density automatically falls back
// to pair sampling with the configured budget.
constexpr std::uint64_t kAutoSampleThreshold = 200'000;
constexpr std::uint64_t kDefaultPairBudget = 10'000;

struct SweepConfig {
    std::vector<int> n_list;
    std::vector<RateSpec> rates;
    int trials = 1;
    std::uint64_t base_seed = 0;
    std::set<MetricKind> metrics = {MetricKind::Density};
    std::uint64_t pair_budget = kDefaultPairBudget;
    Method method = Method::Auto;
    int threads = 1;

    void validate() const {
        if (n_list.empty() || rates.empty() || trials < 1 || threads < 1)
            throw std::invalid_argument("SweepConfig: invalid configuration");
        for (int n : n_list)
            if (n < 1 || n > 64) throw std::invalid_argument("SweepConfig: n outside [1,64]");
    }
};

struct TrialRecord {
    int n = 0;
    std::string rate_label;
    double p = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t num_vertices = 0;
    std::optional<std::uint64_t> num_edges;
    std::optional<std::string> density;  // 12 significant digits
    std::optional<std::uint64_t> min_degree;
    std::optional<bool> clique;
    std::optional<std::uint64_t> num_non_edges;
    std::optional<std::string> quadruples;
    std::optional<std::string> expansion;
    double elapsed_ms = 0;
};

namespace detail {

inline std::string format_double(double v, int sig = 12) {
    std::ostringstream os;
    os.precision(sig);
    os << v;
    return os.str();
}

inline TrialRecord run_trial(const SweepConfig& cfg, int n, const RateSpec& rate,
                             int trial, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.n = n;
    rec.rate_label = rate.label();
    rec.p = resolve_rate(rate, n);
    rec.trial = trial;
    rec.seed = seed;

    VertexSet q = sample_vertex_set(n, rec.p, seed);
    rec.num_vertices = q.size();

    const auto& ms = cfg.metrics;
    bool want = rec.num_vertices >= 1;
    std::uint64_t pairs = rec.num_vertices * (rec.num_vertices - 1) / 2;

    bool want_expansion = ms.count(MetricKind::Expansion) &&
                          rec.num_vertices >= 2 &&
                          rec.num_vertices <= kExpansionMaxVertices;
    bool full_density = ms.count(MetricKind::Density) && pairs <= kAutoSampleThreshold;
    bool need_full = want && (full_density || ms.count(MetricKind::MinDegree) || want_expansion);

    if (need_full) {
        PolytopeGraph g = build_graph(q, cfg.method);
        rec.num_edges = g.edges.size();
        rec.num_non_edges = g.non_edges.size();
        if (ms.count(MetricKind::Density))
            rec.density = rat_to_decimal(density(g));
        if (ms.count(MetricKind::MinDegree) && rec.num_vertices >= 1)
            rec.min_degree = min_degree(g);
        if (ms.count(MetricKind::Clique))
            rec.clique = is_clique(g);
        if (want_expansion)
            rec.expansion = rat_to_decimal(edge_expansion(g));
    } else if (want) {
        bool sampled_density =
            ms.count(MetricKind::DensitySampled) ||
            (ms.count(MetricKind::Density) && pairs > kAutoSampleThreshold);
        if (sampled_density && pairs >= 1) {
            PolytopeGraph g = build_graph_sampled(q, cfg.method, cfg.pair_budget,
                                                  mix64(seed, 0x706169727360ULL));
            rec.density = format_double(density_estimate(g).value);
        }
        if (ms.count(MetricKind::Clique))
            rec.clique = is_clique_fast(q, cfg.method);
    }
    if (want && ms.count(MetricKind::Quadruples))
        rec.quadruples = count_witness_quadruples(q).str();

    auto t1 = std::chrono::steady_clock::now();
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

}  // namespace detail

// Records come back in canonical (n, rate, trial) order regardless of how
// many worker threads execute them. Each cell's seed is
// mix64(base_seed, cell_index) with cell_index in that same canonical order.
inline std::vector<TrialRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    struct Cell {
        int n;
        const RateSpec* rate;
        int trial;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    std::uint64_t idx = 0;
    for (int n : cfg.n_list)
        for (const RateSpec& r : cfg.rates)
            for (int t = 0; t < cfg.trials; ++t)
                cells.push_back({n, &r, t, mix64(cfg.base_seed, idx++)});

    std::vector<TrialRecord> out(cells.size());
    if (cfg.threads <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out[i] = detail::run_trial(cfg, cells[i].n, *cells[i].rate,
                                       cells[i].trial, cells[i].seed);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                out[i] = detail::run_trial(cfg, cells[i].n, *cells[i].rate,
                                           cells[i].trial, cells[i].seed);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return out;
}

inline void emit_csv(const std::vector<TrialRecord>& records, std::ostream& os) {
    os << "n,rate_label,p,trial,seed,num_vertices,num_edges,density,min_degree,"
          "is_clique,num_non_edges,quadruples,expansion,elapsed_ms\n";
    for (const TrialRecord& r : records) {
        os << r.n << ',' << r.rate_label << ',' << detail::format_double(r.p) << ','
           << r.trial << ',' << r.seed << ',' << r.num_vertices << ',';
        if (r.num_edges) os << *r.num_edges;
        os << ',';
        if (r.density) os << *r.density;
        os << ',';
        if (r.min_degree) os << *r.min_degree;
        os << ',';
        if (r.clique) os << (*r.clique ? 1 : 0);
        os << ',';
        if (r.num_non_edges) os << *r.num_non_edges;
        os << ',';
        if (r.quadruples) os << *r.quadruples;
        os << ',';
        if (r.expansion) os << *r.expansion;
        os << ',' << detail::format_double(r.elapsed_ms, 6) << '\n';
    }
}

// --- graph JSON ----------------------------------------------------------

namespace detail {

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline nlohmann::json certificate_json(const Certificate& cert) {
    nlohmann::json j;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WitnessCountCert>) {
                j["type"] = "witness_count";
                j["count"] = c.count;
            } else if constexpr (std::is_same_v<T, ConvexCombinationCert>) {
                j["type"] = "convex_combination";
                for (const Point& p : c.support) j["support"].push_back(to_hex(p));
                for (const Rat& l : c.lambda) j["lambda"].push_back(rat_str(l));
                j["alpha"] = rat_str(c.alpha);
            } else if constexpr (std::is_same_v<T, HyperplaneCert>) {
                j["type"] = "hyperplane";
                for (const Rat& v : c.c) j["c"].push_back(rat_str(v));
                j["b"] = rat_str(c.b);
            } else if constexpr (std::is_same_v<T, AveragingTupleCert>) {
                j["type"] = "averaging_tuple";
                j["k"] = c.k;
                for (const Point& p : c.tuple) j["tuple"].push_back(to_hex(p));
            } else if constexpr (std::is_same_v<T, LpInfeasibleCert>) {
                j["type"] = "lp_infeasible";
                j["system"] = method_name(c.system);
                for (const Rat& v : c.farkas) j["farkas"].push_back(rat_str(v));
            }
        },
        cert);
    return j;
}

}  // namespace detail

inline void emit_graph_json(const PolytopeGraph& g, std::ostream& os,
                            std::optional<double> p = std::nullopt,
                            std::optional<std::uint64_t> seed = std::nullopt) {
    nlohmann::json j;
    j["n"] = g.vertices->dim();
    j["p"] = p ? nlohmann::json(*p) : nlohmann::json(nullptr);
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["method"] = method_name(g.method);
    j["vertices"] = nlohmann::json::array();
    for (const Point& v : g.vertices->points()) j["vertices"].push_back(to_hex(v));
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    j["non_edges"] = nlohmann::json::array();
    for (std::size_t i = 0; i < g.non_edges.size(); ++i) {
        auto [a, b] = g.non_edges[i];
        nlohmann::json entry = {a, b};
        if (i < g.non_edge_certificates.size())
            entry.push_back(detail::certificate_json(g.non_edge_certificates[i]));
        else
            entry.push_back(nullptr);
        j["non_edges"].push_back(entry);
    }
    os << j.dump(2) << "\n";
}

// --- oracle cross-validation --------------------------------------------

struct VerifyFailure {
    int n;
    double p;
    std::uint64_t seed;
    std::string x_hex, y_hex;
    std::string detail;
    std::vector<std::string> vertices;
};

struct VerifyReport {
    int trials = 0;
    std::uint64_t pairs_checked = 0;
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
};

using Classifier =
    std::function<EdgeStatus(const VertexSet&, const Point&, const Point&, Method)>;

// Classify every pair of every sampled instance under all four methods;
// verdicts must agree and every certificate must replay. The classifier is
// injectable so the harness's failure path is itself testable.
inline VerifyReport run_verify(int n_max, int trials, std::uint64_t seed,
                               Classifier classify = nullptr) {
    if (n_max < 2 || n_max > 6)
        throw std::invalid_argument("run_verify: n_max must be in [2,6]");
    if (!classify)
        classify = [](const VertexSet& q, const Point& x, const Point& y, Method m) {
            return edge_status(q, x, y, m);
        };
    const double p_grid[3] = {0.2, 0.5, 0.8};
    const Method methods[4] = {Method::Auto, Method::Lp, Method::OracleFull,
                               Method::OracleHyperplane};
    VerifyReport report;
    for (int t = 0; t < trials; ++t) {
        int n = 2;
        double p = 1.0;
        std::uint64_t trial_seed = mix64(seed, t);
        VertexSet q = [&] {
            if (t == 0) return full_cube(2);  // pinned ground-truth instance
            n = 2 + static_cast<int>(mix64(trial_seed, 1) % (n_max - 1));
            p = p_grid[t % 3];
            return sample_vertex_set(n, p, trial_seed);
        }();
        ++report.trials;
        for (std::size_t i = 0; i < q.size(); ++i) {
            for (std::size_t j = i + 1; j < q.size(); ++j) {
                ++report.pairs_checked;
                std::optional<bool> verdict;
                std::string detail;
                for (Method m : methods) {
                    EdgeStatus st = classify(q, q[i], q[j], m);
                    if (verdict && st.is_edge != *verdict) {
                        detail = "verdict disagreement at method " + method_name(m);
                        break;
                    }
                    verdict = st.is_edge;
                    if (!verify_certificate(q, q[i], q[j], st)) {
                        detail = "certificate replay failed at method " + method_name(m);
                        break;
                    }
                }
                if (!detail.empty()) {
                    VerifyFailure f;
                    f.n = n;
                    f.p = p;
                    f.seed = trial_seed;
                    f.x_hex = to_hex(q[i]);
                    f.y_hex = to_hex(q[j]);
                    f.detail = detail;
                    for (const Point& v : q.points()) f.vertices.push_back(to_hex(v));
                    report.failures.push_back(std::move(f));
                }
            }
        }
    }
    return report;
}

}  // namespace polyskel
