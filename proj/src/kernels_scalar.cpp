#include "cascadelab/kernels.hpp"
#include "cascadelab/rng.hpp"

#include <cstring>

namespace cascadelab::kernels::scalar {

namespace {
// One Philox block = draws 4b .. 4b+3 of the stream.
inline rng::Philox4x32Block block_at(uint64_t seed, uint64_t stream, uint64_t block) {
    return rng::philox4x32(static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32),
                           static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
                           static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32));
}
} // namespace

void fill_uniform_u32(uint64_t seed, uint64_t stream,
                      uint64_t start_index, uint64_t count, uint32_t* out) {
    uint64_t i = start_index;
    const uint64_t end = start_index + count;
    while (i < end) {
        const rng::Philox4x32Block b = block_at(seed, stream, i >> 2);
        // may enter mid-block at the start, leave mid-block at the end
        for (unsigned w = static_cast<unsigned>(i & 3); w < 4 && i < end; ++w, ++i)
            *out++ = b.x[w];
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
        // clear the tail bits of the final word
        if (nbits & 63) out_words[nwords - 1] = ~0ull >> (64 - (nbits & 63));
        return;
    }
    const uint32_t thr = static_cast<uint32_t>(threshold);
    uint64_t bit = 0;
    for (uint64_t w = 0; w < nwords; ++w) {
        uint64_t word = 0;
        const uint64_t lim = nbits - bit < 64 ? nbits - bit : 64;
        uint64_t b = 0;
        while (b < lim) {
            const rng::Philox4x32Block blk = block_at(seed, stream, bit >> 2);
            for (unsigned k = static_cast<unsigned>(bit & 3); k < 4 && b < lim; ++k, ++b, ++bit)
                word |= static_cast<uint64_t>(blk.x[k] < thr) << b;
        }
        out_words[w] = word;
    }
}

void bernoulli_mask_per_item(uint64_t seed, uint64_t stream,
                             uint64_t nbits, const uint32_t* thresholds,
                             uint64_t* out_words) {
    const uint64_t nwords = (nbits + 63) / 64;
    uint64_t bit = 0;
    for (uint64_t w = 0; w < nwords; ++w) {
        uint64_t word = 0;
        const uint64_t lim = nbits - bit < 64 ? nbits - bit : 64;
        uint64_t b = 0;
        while (b < lim) {
            const rng::Philox4x32Block blk = block_at(seed, stream, bit >> 2);
            for (unsigned k = static_cast<unsigned>(bit & 3); k < 4 && b < lim; ++k, ++b, ++bit)
                word |= static_cast<uint64_t>(blk.x[k] < thresholds[bit]) << b;
        }
        out_words[w] = word;
    }
}

} // namespace cascadelab::kernels::scalar
