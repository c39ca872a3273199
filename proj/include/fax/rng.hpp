#pragma once

#include <cstdint>

namespace fax {

/// splitmix64 pseudo-random generator. The exact algorithm is pinned so that
/// generated benchmark instances reproduce bit-for-bit across platforms and
/// implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, bound). Plain modulo; the bias is irrelevant
    /// at the bounds used here and keeps the stream easy to replicate.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Draw in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace fax
