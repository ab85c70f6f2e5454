#pragma once

#include <cmath>
#include <cstdint>

namespace rcrt {

// Counter-based splittable stream: trial t under a master seed gets its own
// SplitMix64 sequence, so Monte Carlo results are bit-stable no matter how
// trials are scheduled.
class SplitStream {
  public:
    SplitStream(std::uint64_t master_seed, std::uint64_t trial) noexcept
        : state_(mix(master_seed ^
                     mix(trial * 0xA24BAED4963EE407ULL + 0x9E3779B97F4A7C15ULL))) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in the open interval (0, 1); safe under log().
    double next_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; avoids library distributions so the
    // stream is reproducible across standard-library implementations.
    double next_gaussian() noexcept {
        constexpr double two_pi = 2.0 * 3.141592653589793238462643383279502884;
        double u1 = next_unit();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

}  // namespace rcrt
