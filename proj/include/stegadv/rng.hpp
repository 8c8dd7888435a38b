#pragma once

#include <cstdint>

namespace stegadv {

// Counter-based deterministic RNG. Every draw is a pure function of the key
// tuple, so parallel iteration order cannot change results.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t keyed_u64(uint64_t seed, uint64_t stream, uint64_t counter) {
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double keyed_unit(uint64_t seed, uint64_t stream, uint64_t counter) {
    return static_cast<double>(keyed_u64(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Small sequential generator for shuffles and weight init; splitmix64 stream.
class SplitMix {
public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Marsaglia polar would need a spare slot; Box-Muller keeps it stateless.
    double normal();
    uint64_t below(uint64_t n) { return next() % n; }

private:
    uint64_t state_;
};

template <typename It>
void seeded_shuffle(It first, It last, SplitMix& rng) {
    const auto n = static_cast<uint64_t>(last - first);
    for (uint64_t i = n; i > 1; --i) {
        const uint64_t j = rng.below(i);
        std::swap(first[i - 1], first[j]);
    }
}

}  // namespace stegadv
