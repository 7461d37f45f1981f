// Seeded random streams with a fixed substream-derivation scheme.
//
// Every Monte Carlo worker owns a private Rng seeded through
// substream_seed(), so results are independent of scheduling and worker
// count. The Gaussian transform is implemented here (not taken from
// std::normal_distribution) so that a given seed produces the same draw
// sequence under every standard library.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dsss {

/// SplitMix64 finalizer; good avalanche, used for seed derivation only.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives the seed of substream (a, b, c) of a master seed.
/// Harness convention: a = method id, b = grid point index, c = packet index.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the paired draw is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1) <= 0
        const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Equiprobable bit, 0 or 1.
    int bit() { return static_cast<int>(engine_() >> 63); }

private:
    std::mt19937_64 engine_;  // output sequence is pinned by the standard
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dsss
