#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace somtsp {

/// Seeded generator with portable sampling.
///
/// std::uniform_*_distribution output is implementation-defined, so the
/// mappings from raw engine output are done here to keep runs reproducible
/// across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n); n must be positive.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t draw = engine_();
        while (draw >= limit) {
            draw = engine_();
        }
        return static_cast<std::size_t>(draw % bound);
    }

  private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed (splitmix64 finalizer).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace somtsp
