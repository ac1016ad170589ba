#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace mglasso::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

// Independent stream for (seed, index) pairs, e.g. one per subsample replicate.
inline Engine make_stream(std::uint64_t seed, std::uint64_t index) {
    return Engine(splitmix64(seed ^ splitmix64(index + 1)));
}

// Uniform in [0, 1). Explicit construction instead of std::uniform_real_distribution
// so that the draw sequence is pinned to the engine output, not the library version.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), unbiased via rejection.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t v = eng();
    while (v >= limit) v = eng();
    return v % n;
}

// Standard normal via Box-Muller; one value per call, two uniforms consumed
// per pair (the cosine branch first).
class NormalSampler {
public:
    double operator()(Engine& eng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01(eng);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// k distinct indices from {0, .., n-1}, returned sorted (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(Engine& eng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(eng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

inline std::vector<std::size_t> sample_with_replacement(Engine& eng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<std::size_t>(uniform_below(eng, n));
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace mglasso::rng
