#ifndef MUTAGEN_RNG_HPP
#define MUTAGEN_RNG_HPP

#include <cstdint>
#include <random>

namespace mutagen {

// Seeded mt19937_64 with hand-pinned range mapping so the draw sequence is
// identical across standard library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform integer in [lo, hi], inclusive. Rejection sampling, unbiased.
    long long uniform(long long lo, long long hi) {
        uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
        if (range == 0) return static_cast<long long>(next());  // full 64-bit span
        uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return static_cast<long long>(static_cast<uint64_t>(lo) + v % range);
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Bernoulli trial; probability 1.0 is always true.
    bool chance(double p) { return uniform01() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace mutagen

#endif
