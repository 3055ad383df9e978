#pragma once

#include <cstdint>

namespace namemine {

// Portable generator: the standard distributions are implementation-defined,
// so all sampling goes through this and bounded() below.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t bounded(std::uint64_t bound) noexcept {
        // Lemire's multiply-shift with rejection of the biased low range.
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// Independent stream for sub-task `index` of a run seeded with `seed`.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mix(seed ^ (index * 0xd1b54a32d192ed03ULL));
    mix.next();
    return SplitMix64(mix.next() ^ index);
}

}  // namespace namemine
