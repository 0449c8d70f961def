#pragma once

#include <cstdint>
#include <random>

namespace heisflow {

/// 64-bit linear congruential generator
///   state <- 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
/// seeded with the state itself. Doubles take the top 53 bits of each draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>((next_u64() >> 11) % span);
    }

private:
    std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL> engine_;
};

} // namespace heisflow
