#pragma once

#include <cstdint>

namespace flatcurve {

/// Deterministic 64-bit pseudo-random stream (splitmix64).
///
/// The generator is fully specified here, so identical seeds produce
/// identical streams on every platform and compiler. All randomized code
/// in the library draws from this class; nothing uses std::random
/// distributions, whose outputs are implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    /// Rejection sampling, so the result is exactly uniform.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t state_;
};

/// Stateless seed derivation (splitmix64 finalizer over a salted seed).
///
/// Derived streams are decorrelated from the parent and from each other, so
/// work units can be seeded independently of execution order. The harness
/// chains it as
///   cell_seed  = mix_seed(mix_seed(master_seed, beta_index), measure_index)
///   trial_seed = mix_seed(cell_seed, trial_index)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + (salt + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace flatcurve
