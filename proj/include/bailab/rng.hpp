#pragma once

/*
 * Deterministic random streams for reproducible simulation.
 *
 * Every episode gets its own SplitMix64 stream seeded by derive_seed(master,
 * budget, replication). The mapping is fixed: report files are reproducible
 * across runs and worker counts only as long as it never changes. Gaussian
 * draws use Box-Muller with two fresh uniforms per call (no cached spare), so
 * a draw depends only on the stream position.
 */

#include <cmath>
#include <cstdint>

namespace bailab {

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Episode seed for (master_seed, budget, replication index). Chained mix64
// passes so that neighbouring budgets / replications land far apart.
inline constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                           std::uint64_t budget,
                                           std::uint64_t replication) noexcept {
    std::uint64_t h = mix64(master_seed ^ 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ (0xBF58476D1CE4E5B9ull * (budget + 1)));
    h = mix64(h ^ (0x94D049BB133111EBull * (replication + 1)));
    return h;
}

// SplitMix64 stream. Value type, cheap to copy; advancing is explicit.
class Rng {
public:
    explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // uniform on [0, 1)
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; consumes exactly two uniforms
    double next_gaussian() noexcept {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;       // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

} // namespace bailab
