#pragma once

#include "polyskel/rational.hpp"
#include "polyskel/sampling.hpp"
#include "polyskel/witness.hpp"

#include <optional>
#include <utility>

namespace polyskel {

// Number of tuples (x, y, u, v) with x < y, u < v, u, v in W(x,y),
// optionally restricted to pairs with hamming(x,y)/n in (band.lo, band.hi].
// Canonicalizing both pairs keeps the count comparable across runs.
inline BigInt count_witness_quadruples(
    const VertexSet& q,
    std::optional<std::pair<double, double>> delta_band = std::nullopt) {
    BigInt total = 0;
    std::size_t m = q.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (delta_band) {
                double ratio = static_cast<double>(hamming(q[i], q[j])) / q.dim();
                if (ratio <= delta_band->first || ratio > delta_band->second) continue;
            }
            BigInt w = witness_count(q, q[i], q[j]);
            total += w * (w - 1) / 2;
        }
    }
    return total;
}

}  // namespace polyskel
