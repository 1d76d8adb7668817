#pragma once

#include "polyskel/adjacency.hpp"
#include "polyskel/rational.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyskel {

inline void require_full(const PolytopeGraph& g, const char* op) {
    if (g.sampled)
        throw std::invalid_argument(std::string(op) + ": pair-sampled graph");
}

// |E| / C(|V|, 2); by convention 1 for |V| <= 1.
inline Rat density(const PolytopeGraph& g) {
    require_full(g, "density");
    std::uint64_t v = g.num_vertices();
    if (v <= 1) return 1;
    return Rat(g.edges.size()) / Rat(v * (v - 1) / 2);
}

struct DensityEstimate {
    double value;
    double standard_error;  // binomial SE sqrt(q(1-q)/pairs)
    std::uint64_t pairs;
};

inline DensityEstimate density_estimate(const PolytopeGraph& g) {
    if (g.pairs_classified == 0)
        throw std::invalid_argument("density_estimate: zero classified pairs");
    double q = static_cast<double>(g.edges.size()) / static_cast<double>(g.pairs_classified);
    double se = std::sqrt(q * (1.0 - q) / static_cast<double>(g.pairs_classified));
    return {q, se, g.pairs_classified};
}

inline std::vector<std::uint64_t> degrees(const PolytopeGraph& g) {
    require_full(g, "degrees");
    if (g.num_vertices() == 0) throw std::invalid_argument("degrees: empty graph");
    std::vector<std::uint64_t> deg(g.num_vertices(), 0);
    for (auto [i, j] : g.edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

inline std::uint64_t min_degree(const PolytopeGraph& g) {
    auto d = degrees(g);
    return *std::min_element(d.begin(), d.end());
}

inline bool is_clique(const PolytopeGraph& g) {
    require_full(g, "is_clique");
    return g.non_edges.empty();
}

inline std::uint64_t num_components(const PolytopeGraph& g) {
    require_full(g, "num_components");
    std::size_t v = g.num_vertices();
    std::vector<std::vector<std::uint32_t>> adj(v);
    for (auto [i, j] : g.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<char> seen(v, 0);
    std::uint64_t comps = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < v; ++s) {
        if (seen[s]) continue;
        ++comps;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return comps;
}

constexpr std::size_t kExpansionMaxVertices = 24;

// Phi(G) = min over nonempty S with |S| <= |V|/2 of |E(S, V\S)| / |S|.
// Exhaustive Gray-code walk over all subsets; the cut size updates by one
// popcount per step.
inline Rat edge_expansion(const PolytopeGraph& g) {
    require_full(g, "edge_expansion");
    std::size_t v = g.num_vertices();
    if (v < 2) throw std::invalid_argument("edge_expansion: |V| < 2");
    if (v > kExpansionMaxVertices)
        throw std::invalid_argument("edge_expansion: |V| > 24");

    std::vector<std::uint32_t> adj(v, 0);
    for (auto [i, j] : g.edges) {
        adj[i] |= std::uint32_t{1} << j;
        adj[j] |= std::uint32_t{1} << i;
    }
    std::vector<int> deg(v);
    for (std::size_t i = 0; i < v; ++i) deg[i] = std::popcount(adj[i]);

    std::uint64_t best_cut = 0, best_size = 0;  // best_cut/best_size, unset while size==0
    std::uint32_t mask = 0;
    std::int64_t cut = 0;
    int size = 0;
    std::uint64_t limit = std::uint64_t{1} << v;
    for (std::uint64_t c = 1; c < limit; ++c) {
        auto gray = static_cast<std::uint32_t>(c ^ (c >> 1));
        std::uint32_t toggled = gray ^ mask;
        int tv = std::countr_zero(toggled);
        if (gray & toggled) {
            // tv enters S
            int internal = std::popcount(adj[tv] & mask);
            cut += deg[tv] - 2 * internal;
            ++size;
        } else {
            int internal = std::popcount(adj[tv] & (mask & ~toggled));
            cut -= deg[tv] - 2 * internal;
            --size;
        }
        mask = gray;
        if (size == 0 || 2 * static_cast<std::size_t>(size) > v) continue;
        // compare cut/size < best_cut/best_size by cross multiplication
        if (best_size == 0 || static_cast<std::uint64_t>(cut) * best_size <
                                  best_cut * static_cast<std::uint64_t>(size)) {
            best_cut = static_cast<std::uint64_t>(cut);
            best_size = static_cast<std::uint64_t>(size);
        }
        if (best_cut == 0) break;  // disconnected, cannot improve
    }
    return Rat(best_cut) / Rat(best_size);
}

struct MetricsReport {
    std::uint64_t num_vertices = 0;
    std::uint64_t num_edges = 0;
    Rat density_value = 0;
    std::uint64_t min_degree_value = 0;
    std::uint64_t max_degree_value = 0;
    bool clique = false;
    std::uint64_t components = 0;
    std::optional<Rat> expansion;
};

inline MetricsReport metrics_report(const PolytopeGraph& g) {
    MetricsReport r;
    r.num_vertices = g.num_vertices();
    r.num_edges = g.edges.size();
    r.density_value = density(g);
    r.clique = is_clique(g);
    if (r.num_vertices > 0) {
        auto d = degrees(g);
        r.min_degree_value = *std::min_element(d.begin(), d.end());
        r.max_degree_value = *std::max_element(d.begin(), d.end());
        r.components = num_components(g);
    }
    if (r.num_vertices >= 2 && r.num_vertices <= kExpansionMaxVertices)
        r.expansion = edge_expansion(g);
    return r;
}

}  // namespace polyskel
