// Deterministic RNG: SplitMix64 streams with Box-Muller normals.
// Self-contained so simulation output is identical across compilers and
// independent of how frames are distributed over workers.
#pragma once

#include <cmath>
#include <cstdint>

namespace nbscma {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // decorrelate trivially related seeds
        (void)splitmix64_next(state_);
    }

    // Independent stream keyed by (seed, s1, s2, s3). Used to give every
    // (frame, user, purpose) its own reproducible sequence.
    static Rng stream(std::uint64_t seed, std::uint64_t s1,
                      std::uint64_t s2 = 0, std::uint64_t s3 = 0) {
        std::uint64_t st = seed;
        (void)splitmix64_next(st);
        st ^= 0x6a09e667f3bcc909ULL + s1;
        (void)splitmix64_next(st);
        st ^= 0xbb67ae8584caa73bULL + s2;
        (void)splitmix64_next(st);
        st ^= 0x3c6ef372fe94f82bULL + s3;
        return Rng(splitmix64_next(st));
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound), bound > 0; rejection keeps it unbiased
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % bound;
    }

    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    // standard normal, Box-Muller with cached second value
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do { u1 = next_double(); } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace nbscma
