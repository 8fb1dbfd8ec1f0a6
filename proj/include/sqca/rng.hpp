#pragma once

#include <complex>
#include <cstdint>

namespace sqca {

// SplitMix64 (Steele, Lea & Flood 2014).  Chosen over std::mt19937_64 because
// it is splittable and its output is specified bit-for-bit, so seeded runs
// reproduce exactly on every platform.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Independent child stream; drawing from the child does not disturb the
    // parent's sequence.
    SplitMix64 split() { return SplitMix64(next()); }

    // Uniform on [0, 1) using the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [-1, 1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    // Uniform on the closed complex unit disc, by rejection from [-1,1)^2.
    std::complex<double> next_in_unit_disc() {
        for (;;) {
            const double re = next_symmetric();
            const double im = next_symmetric();
            if (re * re + im * im <= 1.0) return {re, im};
        }
    }
};

} // namespace sqca
