// Counter-based pseudo-random generator: the k-th output is a fixed 64-bit
// mix of (seed, k), so streams are reproducible across platforms and can be
// split by index without sharing state. Gaussian variates use an explicit
// Box-Muller transform instead of std::normal_distribution, whose output is
// implementation-defined.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace smollision {

class Prng {
public:
    explicit Prng(std::uint64_t seed) : seed_(seed) {}

    // Derives an independent stream for substream `index` of `seed`.
    static Prng substream(std::uint64_t seed, std::uint64_t index) {
        return Prng(mix(seed ^ (0x9e3779b97f4b7c15ULL + index * 0xbf58476d1ce4e5b9ULL)));
    }

    std::uint64_t next_u64() {
        counter_ += 1;
        return mix(seed_ + counter_ * 0x9e3779b97f4b7c15ULL);
    }

    // Uniform on (0, 1), never exactly 0 or 1.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    std::complex<double> next_complex_gaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re, im};
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace smollision
