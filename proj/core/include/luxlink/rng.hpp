#pragma once

#include <cstdint>

// Deterministic randomness for the whole project. Every randomized component
// (user placement, rounding thresholds, sweep seeding) draws from SplitMix64
// streams derived with seed_mix, so a run is reproducible bit for bit from its
// seed on any platform.

namespace luxlink {

// Steele/Lea/Flood SplitMix64. Small state, full 64-bit output, good enough
// statistics for simulation seeding and threshold draws.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 mantissa bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
};

// Derives a child seed from a parent seed and a stream label. Used to split
// independent substreams (one per sweep row, one per flow-graph edge) without
// any dependence on evaluation order.
inline uint64_t seed_mix(uint64_t parent, uint64_t label) {
    SplitMix64 g{parent};
    SplitMix64 h{g.next() ^ (label + 0x9E3779B97F4A7C15ULL)};
    return h.next();
}

}  // namespace luxlink
