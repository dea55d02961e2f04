#pragma once

#include <cstdint>
#include <random>

namespace wavelife {

// splitmix64 step; used to derive independent per-sample seeds from one
// master seed so parallel sampling stays deterministic.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    // Uniform in [0,1) with the top 53 bits; bit-identical across platforms,
    // unlike std::uniform_real_distribution.
    double uniform() { return double(eng() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

} // namespace wavelife
