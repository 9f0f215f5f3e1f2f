#pragma once

#include <cstdint>
#include <random>

namespace adrng {

/// SplitMix64 step. Used to derive independent substream seeds from a base
/// seed; the generator itself is mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic seed for substream `stream_id` of experiment seed `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_id) {
    std::uint64_t s = base;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ stream_id;
    return splitmix64(s);
}

/// Seedable 64-bit generator with a platform-independent output sequence.
///
/// mt19937_64 is specified bit-exactly by the C++ standard, so identical
/// seeds give identical streams on every platform. Floating-point draws use
/// an explicit 53-bit mapping instead of std::uniform_real_distribution,
/// whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
    std::mt19937_64 engine_;
};

} // namespace adrng
