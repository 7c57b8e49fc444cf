#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stablelike {

// Published per-path stream derivation: stream_seed = mix64(seed, path_index).
// splitmix64 finalizer over seed advanced by a Weyl step per index. Fixed forever;
// changing it silently breaks stored run manifests.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic random stream. Variate generation is hand-rolled on top of
// raw 64-bit output so results are bit-identical across platforms and
// standard-library versions.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t stream_seed) : engine_(stream_seed) {}

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; never returns 0, safe for log().
    double uniform01_open_low() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential() { return -std::log(uniform01_open_low()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace stablelike
