// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

// Seedable, order-independent random streams.
//
// Every consumer derives its own stream from (master_seed, scenario index,
// iteration index, purpose, element index), so the draw sequence a given
// link or check observes never depends on how many other streams were used
// before it. The generator is xoshiro256++ seeded through the splitmix64
// finalizer; both are tiny public-domain algorithms reimplemented here
// because std::mt19937_64 is heavyweight per stream and the distributions in
// <random> are not bit-stable across standard library implementations,
// which would break the byte-identical-output contract.

namespace flbra {

constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
    LinkSample = 1,
    Drift = 2,
    Delivery = 3,
    Synthetic = 4,
};

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t scenario_index,
              std::uint64_t iteration, StreamPurpose purpose, std::uint64_t element) {
        std::uint64_t h = mix64(master_seed ^ 0x6c62272e07bb0142ULL);
        h = mix64(h ^ scenario_index);
        h = mix64(h ^ iteration);
        h = mix64(h ^ static_cast<std::uint64_t>(purpose));
        h = mix64(h ^ element);
        // splitmix64 sequence fills the xoshiro state; never all-zero.
        for (auto& word : s_) {
            h += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = h;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // [0,1), 53-bit resolution.
    double uniform01() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Box-Muller. Always consumes exactly two words, so a stream's draw
    // count per sample is fixed regardless of parameters.
    double gaussian(double mean, double sigma) {
        const double u1 = 1.0 - uniform01(); // (0,1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double z = r * std::cos(2.0 * 3.14159265358979323846 * u2);
        return mean + sigma * z;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace flbra
