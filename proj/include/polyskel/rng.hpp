#pragma once

#include <cstdint>

namespace polyskel {

// splitmix64 (Steele/Lea/Flood). State advances by the 64-bit golden
// gamma; output is the three-round xor-multiply finalizer. Chosen for
// bit-identical cross-platform streams; the recurrence is:
//   s_{i+1} = s_i + 0x9E3779B97F4A7C15
//   out_i   = fin(s_{i+1}) with fin(z): z ^= z>>30; z *= 0xBF58476D1CE4E5B9;
//             z ^= z>>27; z *= 0x94D049BB133111EB; z ^= z>>31
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53 random bits
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Per-trial seed derivation: one splitmix64 step starting from
// base + (index+1)*gamma. Distinct indices give distinct outputs with
// overwhelming margin; the harness verifies no collisions per sweep.
inline std::uint64_t mix64(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace polyskel
