#pragma once

#include <cstdint>

namespace subplan {

/// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective on uint64.
constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

/// Per-run seed derivation, frozen for reproducibility:
///   seed(master, i) = splitmix64_mix(master + (i + 1) * 0x9E3779B97F4A7C15)
/// This is the splitmix64 stream at offset i+1 from `master`. The golden-ratio
/// increment is odd, so seeds are distinct for distinct run indices under the
/// same master seed.
constexpr std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
    return splitmix64_mix(master_seed + (run_index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// xoshiro256++ (Blackman, Vigna 2019). State is expanded from one 64-bit
/// seed with splitmix64. Not cryptographic; statistical quality and speed
/// are what the simulator needs.
class Xoshiro256PlusPlus {
  public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ULL;
            word = splitmix64_mix(sm);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace subplan
