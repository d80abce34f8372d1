#include "stringbv/kernels.hpp"

namespace sbv::kernels {

void axpy_mod_scalar(uint32_t* dst, const uint32_t* src, uint32_t factor, std::size_t n,
                     uint32_t p) {
  const uint64_t f = factor;
  for (std::size_t i = 0; i < n; ++i)
    dst[i] = static_cast<uint32_t>((dst[i] + f * src[i]) % p);
}

}  // namespace sbv::kernels
