#pragma once

#include <cstdint>
#include <random>

namespace coglab {

// SplitMix64 step; used for seed mixing and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    std::uint64_t h = splitmix64(s);
    s ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return splitmix64(s);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return mix_seed(mix_seed(a, b, c), d);
}

/// Deterministic random stream. Wraps std::mt19937_64 but converts to
/// doubles and bounded ints by hand so the emitted sequence is identical
/// on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// True with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p) {
        return uniform() < p;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint32_t uniform_int(std::uint32_t n) {
        return static_cast<std::uint32_t>(gen_() % n);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace coglab
