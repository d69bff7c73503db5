#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace pseudobox {

// Deterministic seeded PRNG (splitmix64 core). The integer stream is
// bit-identical across platforms; derived normals go through Box-Muller
// with a fixed call pattern, so a fixed seed plus a fixed call sequence
// reproduces the same samples everywhere.
//
// Child streams are derived from the original seed and a string key, so
// per-scene streams are independent of how many draws the parent made.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    // Standard normal via Box-Muller. Consumes exactly two uniforms.
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Knuth's method; fine for the small rates used here.
    int poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        double limit = std::exp(-lambda);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t seed() const { return seed_; }

    // FNV-1a, used to fold string keys into stream seeds.
    static std::uint64_t hash_key(std::string_view key) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : key) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    // Independent child stream keyed by name; based on the construction
    // seed, not the current state.
    SeededRng derive(std::string_view key) const {
        SeededRng mixer(seed_ ^ hash_key(key));
        return SeededRng(mixer.next_u64());
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace pseudobox
