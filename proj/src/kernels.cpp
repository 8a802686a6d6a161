#include "scr/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace scr::kernels {

#ifdef SCR_BUILD_AVX2
const KernelTable* avx2_table_impl();
#endif

const KernelTable* avx2() {
#ifdef SCR_BUILD_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_table_impl();
#endif
  return nullptr;
}

namespace {

const KernelTable* resolve() {
  const char* pref = std::getenv("SCR_KERNELS");
  if (pref && std::strcmp(pref, "scalar") == 0) return &scalar();
  if (pref && std::strcmp(pref, "avx2") == 0) {
    if (const KernelTable* t = avx2()) return t;
    return &scalar();  // requested ISA unavailable, fall back
  }
  if (const KernelTable* t = avx2()) return t;
  return &scalar();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable* table = resolve();
  return *table;
}

}  // namespace scr::kernels
