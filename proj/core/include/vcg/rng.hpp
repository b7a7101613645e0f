#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace vcg {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable combination of a master seed with stream coordinates. Used to give
// every (cell, trial) its own independent seed so results do not depend on
// scheduling.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0) {
    uint64_t s = master;
    uint64_t h = splitmix64(s);
    s ^= a * 0xff51afd7ed558ccdULL;
    h ^= splitmix64(s);
    s ^= b * 0xc4ceb9fe1a85ec53ULL;
    h ^= splitmix64(s);
    return h;
}

// Seeded generator. Only raw mt19937_64 output is used (std:: distributions
// are not portable across standard libraries); bounded draws use rejection
// sampling so the stream stays well-defined.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // uniform integer in [0, bound)
    uint64_t below(uint64_t bound) {
        assert(bound > 0);
        uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    // uniform double in [0, 1)
    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace vcg
