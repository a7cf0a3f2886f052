#ifndef EMBAL_RNG_HPP
#define EMBAL_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace embal {

// The standard distributions are implementation-defined, so every draw that
// must be reproducible across toolchains goes through these helpers on top
// of mt19937_64, whose output sequence is fully specified.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x < threshold);
    return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t k = items.size(); k > 1; --k) {
        const auto j = static_cast<std::size_t>(uniform_index(rng, k));
        std::swap(items[k - 1], items[j]);
    }
}

}  // namespace embal

#endif  // EMBAL_RNG_HPP
