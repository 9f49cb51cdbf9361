#include "cascadelab/kernels.hpp"
#include "cascadelab/errors.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

namespace cascadelab::kernels {

namespace {

struct Vtable {
    void (*fill)(uint64_t, uint64_t, uint64_t, uint64_t, uint32_t*);
    void (*mask)(uint64_t, uint64_t, uint64_t, uint64_t, uint64_t*);
    void (*mask_per_item)(uint64_t, uint64_t, uint64_t, const uint32_t*, uint64_t*);
    Backend backend;
};

constexpr Vtable kScalarTable{scalar::fill_uniform_u32, scalar::bernoulli_mask,
                              scalar::bernoulli_mask_per_item, Backend::scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Vtable kAvx2Table{avx2::fill_uniform_u32, avx2::bernoulli_mask,
                            avx2::bernoulli_mask_per_item, Backend::avx2};
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Vtable* table_for(Backend b) {
    switch (b) {
    case Backend::scalar:
        return &kScalarTable;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        if (cpu_has_avx2()) return &kAvx2Table;
#endif
        throw config_error("AVX2 kernel backend requested but not supported on this CPU");
    }
    throw config_error("unknown kernel backend");
}

const Vtable* initial_table() {
    const char* env = std::getenv("CASCADE_LAB_SIMD");
    const std::string mode = env ? env : "auto";
    if (mode == "scalar") return &kScalarTable;
    if (mode == "avx2") return table_for(Backend::avx2);
    if (mode != "auto" && !mode.empty())
        throw config_error("CASCADE_LAB_SIMD must be auto, scalar or avx2 (got '" + mode + "')");
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return &kAvx2Table;
#endif
    return &kScalarTable;
}

const Vtable*& active_table() {
    static const Vtable* table = initial_table();
    return table;
}

} // namespace

Backend active_backend() { return active_table()->backend; }

bool avx2_supported() { return cpu_has_avx2(); }

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "?";
}

void force_backend(Backend b) { active_table() = table_for(b); }

void fill_uniform_u32(uint64_t seed, uint64_t stream,
                      uint64_t start_index, uint64_t count, uint32_t* out) {
    active_table()->fill(seed, stream, start_index, count, out);
}

void bernoulli_mask(uint64_t seed, uint64_t stream,
                    uint64_t nbits, uint64_t threshold, uint64_t* out_words) {
    active_table()->mask(seed, stream, nbits, threshold, out_words);
}

void bernoulli_mask_per_item(uint64_t seed, uint64_t stream,
                             uint64_t nbits, const uint32_t* thresholds,
                             uint64_t* out_words) {
    active_table()->mask_per_item(seed, stream, nbits, thresholds, out_words);
}

} // namespace cascadelab::kernels
