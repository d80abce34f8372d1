#pragma once

#include <cstddef>
#include <cstdint>

namespace sbv::kernels {

// dst[i] = (dst[i] + factor * src[i]) mod p, all entries canonical residues.
using AxpyFn = void (*)(uint32_t* dst, const uint32_t* src, uint32_t factor, std::size_t n,
                        uint32_t p);

void axpy_mod_scalar(uint32_t* dst, const uint32_t* src, uint32_t factor, std::size_t n,
                     uint32_t p);

#if defined(__x86_64__) || defined(__i386__)
/// Requires AVX2 at runtime and p < kSimdPrimeLimit.
void axpy_mod_avx2(uint32_t* dst, const uint32_t* src, uint32_t factor, std::size_t n,
                   uint32_t p);
#endif

/// Largest prime (exclusive) handled by the vector kernels.
inline constexpr uint32_t kSimdPrimeLimit = 4096;

bool have_avx2();

/// Picks the best kernel for p on this CPU. STRINGBV_KERNEL=scalar forces the
/// reference kernel.
AxpyFn select_axpy(uint32_t p);
const char* selected_kernel_name(uint32_t p);

}  // namespace sbv::kernels
