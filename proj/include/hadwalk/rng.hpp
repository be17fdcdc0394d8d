#pragma once

#include <cstdint>

namespace hadwalk {

/// Counter-based generator: the s-th draw of stream (seed, stream) is a pure
/// function of (seed, stream, s), so sample ranges can be split across threads
/// with no state handoff and runs replay exactly for a given seed.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1)) | 1ull) {}

    std::uint64_t word(std::uint64_t counter) const { return mix(key_ + 0x9E3779B97F4A7C15ull * counter); }

    /// Uniform on [0,1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t key_;
};

}  // namespace hadwalk
