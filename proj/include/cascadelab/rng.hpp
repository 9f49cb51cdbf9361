#pragma once

// Counter-based random number generation (Philox4x32-10).
//
// Every random draw in the library is a pure function of (seed, stream, index):
// trial i of any Monte-Carlo loop can be reproduced in isolation, results do
// not depend on thread count or evaluation order, and independent subsystems
// get independent streams by deriving child stream ids from a parent seed and
// a tag instead of sharing mutable generator state.

#include <cstdint>
#include <cmath>

namespace cascadelab::rng {

struct Philox4x32Block {
    uint32_t x[4];
};

namespace detail {

inline constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr uint32_t kPhiloxW0 = 0x9E3779B9u; // golden ratio
inline constexpr uint32_t kPhiloxW1 = 0xBB67AE85u; // sqrt(3)-1

inline void philox_round(uint32_t& c0, uint32_t& c1, uint32_t& c2, uint32_t& c3,
                         uint32_t k0, uint32_t k1) {
    const uint64_t p0 = static_cast<uint64_t>(kPhiloxM0) * c0;
    const uint64_t p1 = static_cast<uint64_t>(kPhiloxM1) * c2;
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
}

} // namespace detail

// One 10-round Philox4x32 block: 128 counter bits, 64 key bits -> 128 output bits.
inline Philox4x32Block philox4x32(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3,
                                  uint32_t k0, uint32_t k1) {
    using namespace detail;
    for (int round = 0; round < 10; ++round) {
        philox_round(c0, c1, c2, c3, k0, k1);
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return Philox4x32Block{{c0, c1, c2, c3}};
}

// SplitMix64 finalizer; used to derive stream ids and to spread user seeds.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Child stream id from a parent stream/seed, a subsystem tag and an index.
// Chaining three mixes keeps unrelated (tag, index) pairs statistically
// independent without any bookkeeping.
inline uint64_t derive_stream(uint64_t parent, uint64_t tag, uint64_t index = 0) {
    return splitmix64(splitmix64(splitmix64(parent) ^ tag) ^ index);
}

// Draw `index` from stream (seed, stream): word index&3 of Philox block index>>2,
// keyed by the seed, with the stream id in the high counter words.
inline uint32_t draw_u32(uint64_t seed, uint64_t stream, uint64_t index) {
    const uint64_t block = index >> 2;
    const Philox4x32Block out = philox4x32(
        static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32),
        static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
        static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32));
    return out.x[index & 3];
}

inline uint64_t draw_u64(uint64_t seed, uint64_t stream, uint64_t index) {
    // two consecutive u32 draws; index addresses 64-bit slots
    const uint64_t lo = draw_u32(seed, stream, 2 * index);
    const uint64_t hi = draw_u32(seed, stream, 2 * index + 1);
    return (hi << 32) | lo;
}

// uniform double in [0,1) with 53 random bits
inline double draw_unit_double(uint64_t seed, uint64_t stream, uint64_t index) {
    return static_cast<double>(draw_u64(seed, stream, index) >> 11) * 0x1.0p-53;
}

// Bernoulli(p) threshold: a u32 draw < threshold(p) succeeds with probability
// round(p * 2^32) / 2^32. Returned as u64 so p == 1 maps to 2^32 (always true).
inline uint64_t bernoulli_threshold(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return 1ull << 32;
    const double scaled = std::nearbyint(p * 4294967296.0);
    const uint64_t t = static_cast<uint64_t>(scaled);
    return t > (1ull << 32) ? (1ull << 32) : t;
}

// Sequential convenience wrapper over a (seed, stream) pair. Cheap to copy;
// never shared across threads (each worker owns one at a known start index).
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream, uint64_t start_index = 0)
        : seed_(seed), stream_(stream), index_(start_index) {}

    uint32_t next_u32() { return draw_u32(seed_, stream_, index_++); }

    uint64_t next_u64() {
        const uint64_t lo = next_u32();
        const uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // [0,1)
    double next_unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(uint64_t threshold) {
        if (threshold >= (1ull << 32)) { ++index_; return true; }
        return static_cast<uint64_t>(next_u32()) < threshold;
    }

    // unbiased bounded draw in [0, n) via rejection (Lemire-style widening)
    uint32_t next_below(uint32_t n) {
        // n == 0 is a caller bug; keep the check cheap
        uint64_t wide = static_cast<uint64_t>(next_u32()) * n;
        uint32_t low = static_cast<uint32_t>(wide);
        if (low < n) {
            const uint32_t lim = static_cast<uint32_t>(-static_cast<int64_t>(n)) % n; // (2^32 - n) mod n
            while (low < lim) {
                wide = static_cast<uint64_t>(next_u32()) * n;
                low = static_cast<uint32_t>(wide);
            }
        }
        return static_cast<uint32_t>(wide >> 32);
    }

    // standard normal via Box-Muller (one value per call; no cached spare so
    // draw position stays a pure function of call count)
    double next_gaussian() {
        double u1 = next_unit_double();
        while (u1 <= 0.0) u1 = next_unit_double();
        const double u2 = next_unit_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    uint64_t index() const { return index_; }
    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

  private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t index_;
};

// Stream-derivation tags. Values are arbitrary but frozen: changing one changes
// every downstream result, so treat them like file-format constants.
namespace tags {
inline constexpr uint64_t kEstimateTrial   = 0x45535431ull; // "EST1"
inline constexpr uint64_t kDynamicTrial    = 0x44594e31ull; // "DYN1"
inline constexpr uint64_t kEdgeNoise       = 0x4e4f4953ull; // "NOIS"
inline constexpr uint64_t kGenerator       = 0x47454e31ull; // "GEN1"
inline constexpr uint64_t kSelectRandom    = 0x53454c52ull; // "SELR"
inline constexpr uint64_t kHillRound       = 0x48494c4cull; // "HILL"
inline constexpr uint64_t kLocalRoot       = 0x4c4f4352ull; // "LOCR"
inline constexpr uint64_t kLocalEval       = 0x4c4f4345ull; // "LOCE"
inline constexpr uint64_t kSweepEval       = 0x53575045ull; // "SWPE"
inline constexpr uint64_t kSweepSelect     = 0x53575053ull; // "SWPS"
inline constexpr uint64_t kPercolation     = 0x50455243ull; // "PERC"
inline constexpr uint64_t kOracleSuite     = 0x4f52434cull; // "ORCL"
} // namespace tags

} // namespace cascadelab::rng
