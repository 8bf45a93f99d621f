#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

// Deterministic random helpers. Everything here is pinned to exact
// integer arithmetic so that traces, simulations and Monte-Carlo runs
// reproduce bit-for-bit across platforms and standard libraries
// (std::*_distribution is implementation-defined, so we roll the few
// transforms we need by hand).

namespace swarmgain::rng {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro256** by Blackman/Vigna; small, fast, reproducible.
class Xoshiro256 {
public:
    explicit Xoshiro256(uint64_t seed) {
        uint64_t z = seed;
        for (auto& w : state_) {
            z = splitmix64(z);
            w = z;
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0, 1]: never returns 0 so -log(u) is always finite.
    double u01() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Exponential with the given mean; strictly positive.
    double exponential(double mean) { return -mean * std::log(u01()); }

    // Uniform integer in [0, n), n >= 1.
    uint64_t below(uint64_t n) { return next() % n; }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4];
};

// Derive an independent stream for a sub-task from a base seed.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 0x51ed270b0a128f1ULL));
}

inline uint64_t hash_bytes(std::string_view s, uint64_t seed) {
    uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;  // FNV-1a prime
    }
    return splitmix64(h);
}

// Stable per-user coin flip: participate iff hash < alpha. The
// participating set is nested in alpha, which keeps gain monotone when
// sweeping participation.
inline bool user_participates(std::string_view user_id, double alpha, uint64_t seed) {
    if (alpha >= 1.0) return true;
    const double u = static_cast<double>(hash_bytes(user_id, seed) >> 11) * 0x1.0p-53;
    return u < alpha;
}

}  // namespace swarmgain::rng
