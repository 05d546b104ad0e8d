#include "ensearch/errors.hpp"
#include "ensearch/kernels.hpp"

namespace ensearch::kernels {

#if defined(ENSEARCH_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(ENSEARCH_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& select_kernels(KernelChoice choice) {
  switch (choice) {
    case KernelChoice::Scalar:
      return scalar_kernels();
    case KernelChoice::Avx2:
      if (const auto* table = avx2_kernels()) return *table;
      throw UsageError("AVX2 kernels are not available on this build or CPU");
    case KernelChoice::Auto:
      break;
  }
  if (const auto* table = avx2_kernels()) return *table;
  return scalar_kernels();
}

}  // namespace ensearch::kernels
