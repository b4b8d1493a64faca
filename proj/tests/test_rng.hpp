#pragma once

// splitmix64: tiny deterministic generator for property tests
#include <cstdint>

namespace testrng {

inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return state = mix(state); }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

} // namespace testrng
