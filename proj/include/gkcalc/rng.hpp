#ifndef GKCALC_RNG_HPP
#define GKCALC_RNG_HPP

#include <cstdint>

namespace gk {

/* splitmix64; self-contained so seeded runs are byte-identical across
 * platforms and standard library versions. */
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* uniform in [0, n) */
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    /* uniform in [lo, hi] inclusive */
    long range(long lo, long hi) { return lo + (long)below(uint64_t(hi - lo + 1)); }

    bool chance(int num, int den) { return (long)below((uint64_t)den) < num; }
};

} // namespace gk

#endif
