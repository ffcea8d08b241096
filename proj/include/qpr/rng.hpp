#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace qpr {

// std distributions are implementation-defined; these helpers keep seeded
// output identical across standard libraries.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound) - 1;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % bound;
}

inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace qpr
