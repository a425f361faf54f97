#pragma once

#include <cstdint>

namespace chaoscalc {

/// Reproducible stream handle. `stream` is a chunk index: with a fixed draw
/// count B per chunk, stream k reads the master counter window
/// [k*B, (k+1)*B), so concatenating streams 0..c reproduces a single run of
/// (c+1)*B draws element for element.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// SplitMix64 output at an arbitrary counter position (random access:
/// the k-th output of the sequence seeded with `seed`).
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform draw in the open interval (0, 1) at a counter position.
inline double uniform_at(std::uint64_t seed, std::uint64_t counter) {
    return (static_cast<double>(splitmix64_at(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal quantile function (rational approximation, full double
/// precision). Requires 0 < p < 1.
double inverse_normal_cdf(double p);

/// Standard normal draw at a counter position. One counter per normal:
/// generation is by inverse CDF, so the draw-count-to-counter map is exact.
inline double normal_at(std::uint64_t seed, std::uint64_t counter) {
    return inverse_normal_cdf(uniform_at(seed, counter));
}

/// Master counter of draw j within chunk `stream` of size `count`.
inline std::uint64_t window_counter(std::uint64_t stream, std::uint64_t count, std::uint64_t j) {
    return stream * count + j;
}

}  // namespace chaoscalc
