#include <cstdlib>
#include <cstring>

#include "stringbv/kernels.hpp"

namespace sbv::kernels {

namespace {

bool force_scalar() {
  static const bool forced = [] {
    const char* env = std::getenv("STRINGBV_KERNEL");
    return env != nullptr && std::strcmp(env, "scalar") == 0;
  }();
  return forced;
}

}  // namespace

bool have_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

AxpyFn select_axpy(uint32_t p) {
#if defined(__x86_64__) || defined(__i386__)
  if (!force_scalar() && p < kSimdPrimeLimit && have_avx2()) return axpy_mod_avx2;
#endif
  (void)p;
  return axpy_mod_scalar;
}

const char* selected_kernel_name(uint32_t p) {
  return select_axpy(p) == axpy_mod_scalar ? "scalar" : "avx2";
}

}  // namespace sbv::kernels
