#include "stringbv/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace sbv::kernels {

// t = dst + f*src < p + p^2 < 2^24, so t is exact in a float and the
// reciprocal quotient is off by at most one.
__attribute__((target("avx2"))) void axpy_mod_avx2(uint32_t* dst, const uint32_t* src,
                                                   uint32_t factor, std::size_t n,
                                                   uint32_t p) {
  const __m256i vf = _mm256_set1_epi32(static_cast<int>(factor));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i zero = _mm256_setzero_si256();
  const __m256 vinv = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i t = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vf));
    __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(t), vinv));
    __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
    r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vp));
    __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
    r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
  }
  if (i < n) axpy_mod_scalar(dst + i, src + i, factor, n - i, p);
}

}  // namespace sbv::kernels
#endif
