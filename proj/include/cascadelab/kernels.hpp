#pragma once

// Bulk draw kernels over the counter-based RNG.
//
// Scalar reference implementations and AVX2 variants produce bit-identical
// output; the active backend is picked once at startup (cpuid + the
// CASCADE_LAB_SIMD env var: auto | scalar | avx2) and can be forced in tests.
//
// Draw indexing matches rng::draw_u32(seed, stream, index) exactly: the mask
// bit for index i is (draw_u32(seed, stream, i) < threshold).

#include <cstdint>

namespace cascadelab::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool avx2_supported();

// Force a backend (tests / CLI override). Throws config_error if the CPU
// cannot run it. Passing the current backend is a no-op.
void force_backend(Backend b);

// Fill out[0..count) with draws start_index .. start_index+count-1.
void fill_uniform_u32(uint64_t seed, uint64_t stream,
                      uint64_t start_index, uint64_t count, uint32_t* out);

// Bit i of the output (word i/64, bit i%64) = draw(i) < threshold, for
// i in [0, nbits). threshold is a 33-bit value: 1<<32 means "always true"
// (Bernoulli p = 1). Bits at positions >= nbits in the last word are zero.
void bernoulli_mask(uint64_t seed, uint64_t stream,
                    uint64_t nbits, uint64_t threshold, uint64_t* out_words);

// Same, with an independent 32-bit threshold per bit (thresholds[i] can not
// express p = 1 exactly; callers quantize per-item probabilities to
// round(p * 2^32) clamped to 2^32 - 1).
void bernoulli_mask_per_item(uint64_t seed, uint64_t stream,
                             uint64_t nbits, const uint32_t* thresholds,
                             uint64_t* out_words);

// Direct access to the individual implementations (equivalence tests).
namespace scalar {
void fill_uniform_u32(uint64_t seed, uint64_t stream,
                      uint64_t start_index, uint64_t count, uint32_t* out);
void bernoulli_mask(uint64_t seed, uint64_t stream,
                    uint64_t nbits, uint64_t threshold, uint64_t* out_words);
void bernoulli_mask_per_item(uint64_t seed, uint64_t stream,
                             uint64_t nbits, const uint32_t* thresholds,
                             uint64_t* out_words);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
// Callable only when avx2_supported(); the dispatcher guards this.
void fill_uniform_u32(uint64_t seed, uint64_t stream,
                      uint64_t start_index, uint64_t count, uint32_t* out);
void bernoulli_mask(uint64_t seed, uint64_t stream,
                    uint64_t nbits, uint64_t threshold, uint64_t* out_words);
void bernoulli_mask_per_item(uint64_t seed, uint64_t stream,
                             uint64_t nbits, const uint32_t* thresholds,
                             uint64_t* out_words);
} // namespace avx2
#endif

} // namespace cascadelab::kernels
