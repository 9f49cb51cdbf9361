// AVX2 variants of the draw kernels. Compiled with -mavx2 (this TU only);
// entered only through the dispatcher after a cpuid check.
//
// Strategy: run 8 Philox blocks side by side (SoA across blocks), transpose
// the 32 outputs back to draw order, then compare/store. Output is
// bit-identical to the scalar reference for every input.

#include "cascadelab/kernels.hpp"
#include "cascadelab/rng.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>
#include <cstring>

namespace cascadelab::kernels::avx2 {

namespace {

// hi/lo 32-bit halves of lane-wise u32 * constant
inline void mulhilo8(__m256i x, uint32_t m, __m256i& hi, __m256i& lo) {
    const __m256i mv = _mm256_set1_epi32(static_cast<int>(m));
    const __m256i prod_even = _mm256_mul_epu32(x, mv);                        // lanes 0,2,4,6
    const __m256i prod_odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), mv);  // lanes 1,3,5,7
    hi = _mm256_blend_epi32(_mm256_srli_epi64(prod_even, 32), prod_odd, 0xAA);
    lo = _mm256_blend_epi32(prod_even, _mm256_slli_epi64(prod_odd, 32), 0xAA);
}

struct Draws32 {
    __m256i y0, y1, y2, y3; // draws 0..7, 8..15, 16..23, 24..31 of the batch
};

// 10-round Philox4x32 over blocks base..base+7, transposed to draw order.
inline Draws32 philox8_blocks(uint64_t seed, uint64_t stream, uint64_t base) {
    __m256i c0, c1;
    const uint32_t base_lo = static_cast<uint32_t>(base);
    if (base_lo <= 0xFFFFFFF8u) {
        // no carry across the 8 lanes
        c0 = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(base_lo)),
                              _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
        c1 = _mm256_set1_epi32(static_cast<int>(base >> 32));
    } else {
        alignas(32) uint32_t lo[8], hi[8];
        for (int k = 0; k < 8; ++k) {
            const uint64_t blk = base + static_cast<uint64_t>(k);
            lo[k] = static_cast<uint32_t>(blk);
            hi[k] = static_cast<uint32_t>(blk >> 32);
        }
        c0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo));
        c1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi));
    }
    __m256i c2 = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(stream)));
    __m256i c3 = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(stream >> 32)));

    uint32_t k0 = static_cast<uint32_t>(seed);
    uint32_t k1 = static_cast<uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        __m256i hi0, lo0, hi1, lo1;
        mulhilo8(c0, rng::detail::kPhiloxM0, hi0, lo0);
        mulhilo8(c2, rng::detail::kPhiloxM1, hi1, lo1);
        const __m256i k0v = _mm256_set1_epi32(static_cast<int>(k0));
        const __m256i k1v = _mm256_set1_epi32(static_cast<int>(k1));
        c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0v);
        c1 = lo1;
        c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1v);
        c3 = lo0;
        k0 += rng::detail::kPhiloxW0;
        k1 += rng::detail::kPhiloxW1;
    }

    // 8x4 transpose: (word vectors across blocks) -> (draw-order vectors)
    const __m256i t0 = _mm256_unpacklo_epi32(c0, c1); // b0w0 b0w1 b1w0 b1w1 | b4.. b5..
    const __m256i t1 = _mm256_unpackhi_epi32(c0, c1); // b2 b3 | b6 b7
    const __m256i t2 = _mm256_unpacklo_epi32(c2, c3);
    const __m256i t3 = _mm256_unpackhi_epi32(c2, c3);
    const __m256i u0 = _mm256_unpacklo_epi64(t0, t2); // b0w0..w3 | b4w0..w3
    const __m256i u1 = _mm256_unpackhi_epi64(t0, t2); // b1 | b5
    const __m256i u2 = _mm256_unpacklo_epi64(t1, t3); // b2 | b6
    const __m256i u3 = _mm256_unpackhi_epi64(t1, t3); // b3 | b7
    Draws32 d;
    d.y0 = _mm256_permute2x128_si256(u0, u1, 0x20); // b0 b1 -> draws 0..7
    d.y1 = _mm256_permute2x128_si256(u2, u3, 0x20); // b2 b3
    d.y2 = _mm256_permute2x128_si256(u0, u1, 0x31); // b4 b5
    d.y3 = _mm256_permute2x128_si256(u2, u3, 0x31); // b6 b7
    return d;
}

inline uint32_t movemask_lt(__m256i draws, __m256i thr_biased, __m256i bias) {
    const __m256i biased = _mm256_xor_si256(draws, bias);
    const __m256i lt = _mm256_cmpgt_epi32(thr_biased, biased); // unsigned draws < thr
    return static_cast<uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(lt)));
}

} // namespace

void fill_uniform_u32(uint64_t seed, uint64_t stream,
                      uint64_t start_index, uint64_t count, uint32_t* out) {
    uint64_t i = start_index;
    const uint64_t end = start_index + count;
    // scalar head until 32-draw aligned
    while (i < end && (i & 31)) {
        out[i - start_index] = rng::draw_u32(seed, stream, i);
        ++i;
    }
    while (end - i >= 32) {
        const Draws32 d = philox8_blocks(seed, stream, i >> 2);
        uint32_t* dst = out + (i - start_index);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + 0), d.y0);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + 8), d.y1);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + 16), d.y2);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + 24), d.y3);
        i += 32;
    }
    while (i < end) {
        out[i - start_index] = rng::draw_u32(seed, stream, i);
        ++i;
    }
}

void bernoulli_mask(uint64_t seed, uint64_t stream,
                    uint64_t nbits, uint64_t threshold, uint64_t* out_words) {
    const uint64_t nwords = (nbits + 63) / 64;
    if (nwords == 0) return;
    if (threshold == 0) {
        std::memset(out_words, 0, nwords * sizeof(uint64_t));
        return;
    }
    if (threshold >= (1ull << 32)) {
        std::memset(out_words, 0xFF, nwords * sizeof(uint64_t));
        if (nbits & 63) out_words[nwords - 1] = ~0ull >> (64 - (nbits & 63));
        return;
    }
    const __m256i bias = _mm256_set1_epi32(static_cast<int>(0x80000000u));
    const __m256i thr_biased =
        _mm256_xor_si256(_mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(threshold))), bias);

    const uint64_t full_words = nbits / 64;
    for (uint64_t w = 0; w < full_words; ++w) {
        const uint64_t bit = w * 64;
        const Draws32 a = philox8_blocks(seed, stream, bit >> 2);
        const Draws32 b = philox8_blocks(seed, stream, (bit >> 2) + 8);
        uint64_t word = movemask_lt(a.y0, thr_biased, bias);
        word |= static_cast<uint64_t>(movemask_lt(a.y1, thr_biased, bias)) << 8;
        word |= static_cast<uint64_t>(movemask_lt(a.y2, thr_biased, bias)) << 16;
        word |= static_cast<uint64_t>(movemask_lt(a.y3, thr_biased, bias)) << 24;
        word |= static_cast<uint64_t>(movemask_lt(b.y0, thr_biased, bias)) << 32;
        word |= static_cast<uint64_t>(movemask_lt(b.y1, thr_biased, bias)) << 40;
        word |= static_cast<uint64_t>(movemask_lt(b.y2, thr_biased, bias)) << 48;
        word |= static_cast<uint64_t>(movemask_lt(b.y3, thr_biased, bias)) << 56;
        out_words[w] = word;
    }
    if (nbits & 63) {
        const uint32_t thr = static_cast<uint32_t>(threshold);
        uint64_t tail = 0;
        for (uint64_t i = full_words * 64; i < nbits; ++i)
            tail |= static_cast<uint64_t>(rng::draw_u32(seed, stream, i) < thr) << (i & 63);
        out_words[full_words] = tail;
    }
}

void bernoulli_mask_per_item(uint64_t seed, uint64_t stream,
                             uint64_t nbits, const uint32_t* thresholds,
                             uint64_t* out_words) {
    const uint64_t nwords = (nbits + 63) / 64;
    if (nwords == 0) return;
    const __m256i bias = _mm256_set1_epi32(static_cast<int>(0x80000000u));

    const uint64_t full_words = nbits / 64;
    for (uint64_t w = 0; w < full_words; ++w) {
        const uint64_t bit = w * 64;
        uint64_t word = 0;
        for (unsigned half = 0; half < 2; ++half) {
            const Draws32 d = philox8_blocks(seed, stream, (bit >> 2) + 8 * half);
            const uint32_t* t = thresholds + bit + 32 * half;
            const __m256i y[4] = {d.y0, d.y1, d.y2, d.y3};
            for (unsigned q = 0; q < 4; ++q) {
                const __m256i thr = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + 8 * q));
                word |= static_cast<uint64_t>(movemask_lt(y[q], _mm256_xor_si256(thr, bias), bias))
                        << (32 * half + 8 * q);
            }
        }
        out_words[w] = word;
    }
    if (nbits & 63) {
        // delegate the ragged tail word to the scalar reference
        uint64_t tail = 0;
        for (uint64_t i = full_words * 64; i < nbits; ++i)
            tail |= static_cast<uint64_t>(rng::draw_u32(seed, stream, i) < thresholds[i]) << (i & 63);
        out_words[full_words] = tail;
    }
}

} // namespace cascadelab::kernels::avx2

#endif // x86_64
