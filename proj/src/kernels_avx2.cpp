// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "ensearch/kernels.hpp"

namespace ensearch::kernels {

namespace {

// Eight-lane equality mask of `value` against x[base .. base+8), as bits.
inline std::uint32_t match_mask(__m256i lanes, std::uint32_t value) {
  const __m256i eq = _mm256_cmpeq_epi32(lanes, _mm256_set1_epi32(static_cast<int>(value)));
  return static_cast<std::uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
}

void avx2_signatures(const SignatureLayout& layout, const std::uint32_t* tuples,
                     std::size_t count, std::uint64_t* out) {
  const std::size_t n = layout.n;
  const std::size_t groups = (n + 7) / 8;
  alignas(32) std::uint32_t padded[8 * 8];  // up to n = 64 in groups of eight

  for (std::size_t t = 0; t < count; ++t) {
    const std::uint32_t* x = tuples + t * n;
    std::uint64_t* sig = out + t * layout.stride;
    std::fill(sig, sig + layout.stride, 0);

    // Lanes past n hold a value no sum or product of entries <= 65535 reaches.
    std::fill(padded, padded + groups * 8, 0xFFFFFFFFu);
    std::copy(x, x + n, padded);
    __m256i lanes[8];
    for (std::size_t g = 0; g < groups; ++g) {
      lanes[g] = _mm256_load_si256(reinterpret_cast<const __m256i*>(padded + 8 * g));
    }

    for (std::size_t g = 0; g < groups; ++g) {
      const std::size_t width = std::min<std::size_t>(8, n - 8 * g);
      or_bits(sig, layout.unit_bit(8 * g), match_mask(lanes[g], 1), width);
    }
    std::size_t pair = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++pair) {
        const std::uint32_t s = x[i] + x[j];
        const std::uint32_t p = x[i] * x[j];
        for (std::size_t g = 0; g < groups; ++g) {
          const std::size_t width = std::min<std::size_t>(8, n - 8 * g);
          or_bits(sig, layout.sum_bit(pair, 8 * g), match_mask(lanes[g], s), width);
          or_bits(sig, layout.prod_bit(pair, 8 * g), match_mask(lanes[g], p), width);
        }
      }
    }
  }
}

std::size_t avx2_first_superset(const std::uint64_t* query, const std::uint64_t* candidates,
                                std::size_t count, std::size_t stride) {
  const std::size_t blocks = stride / 4;
  if (blocks == 1) {
    const __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(query));
    for (std::size_t c = 0; c < count; ++c) {
      const __m256i row =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(candidates + c * stride));
      // testc: (~row & q) == 0
      if (_mm256_testc_si256(row, q)) return c;
    }
    return count;
  }
  for (std::size_t c = 0; c < count; ++c) {
    const std::uint64_t* row = candidates + c * stride;
    bool covers = true;
    for (std::size_t b = 0; b < blocks && covers; ++b) {
      const __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(query + 4 * b));
      const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + 4 * b));
      covers = _mm256_testc_si256(r, q);
    }
    if (covers) return c;
  }
  return count;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", avx2_signatures, avx2_first_superset};
  return table;
}

}  // namespace ensearch::kernels
