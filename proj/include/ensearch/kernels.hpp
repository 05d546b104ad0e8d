#pragma once

// Packed relation signatures and the data-parallel kernels over them.
//
// A tuple over {0..65535}^n is mapped to a bit vector with one bit per
// equation of E_n:
//
//   [0, n)                        x_k = 1
//   [n + p*n, n + p*n + n)        x_i + x_j = x_k   for pair p = (i <= j)
//   [n + P*n + p*n, ...)          x_i * x_j = x_k   (P = n(n+1)/2 pairs)
//
// Pairs are numbered (0,0), (0,1), ..., (0,n-1), (1,1), ... . Signatures are
// stored as rows of `stride` 64-bit words; stride is a multiple of 4 so one
// AVX2 register covers four words.
//
// Each kernel has a scalar reference and, on x86-64 builds, an AVX2 variant
// selected at runtime. Both must produce bit-identical output.

#include <cstddef>
#include <cstdint>

namespace ensearch::kernels {

inline constexpr std::uint32_t kMaxPackedValue = 65535;

struct SignatureLayout {
  explicit SignatureLayout(std::size_t n);

  std::size_t n;
  std::size_t pairs;
  std::size_t bits;
  std::size_t stride;  // words per signature row

  std::size_t unit_bit(std::size_t k) const { return k; }
  std::size_t sum_bit(std::size_t pair, std::size_t k) const { return n + pair * n + k; }
  std::size_t prod_bit(std::size_t pair, std::size_t k) const {
    return n + pairs * n + pair * n + k;
  }
};

struct KernelTable {
  const char* name;
  // tuples: count rows of layout.n values, row-major. out: count rows of
  // layout.stride words, fully overwritten.
  void (*signatures)(const SignatureLayout& layout, const std::uint32_t* tuples,
                     std::size_t count, std::uint64_t* out);
  // Index of the first candidate row whose bits include every bit of `query`,
  // or `count` when there is none.
  std::size_t (*first_superset)(const std::uint64_t* query, const std::uint64_t* candidates,
                                std::size_t count, std::size_t stride);
};

enum class KernelChoice { Auto, Scalar, Avx2 };

const KernelTable& scalar_kernels();
// nullptr when the build lacks the AVX2 variants or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
// Throws UsageError when an explicitly requested variant is unavailable.
const KernelTable& select_kernels(KernelChoice choice);

// ORs the low `width` (<= 64) bits of `value` into the bit vector at `offset`.
inline void or_bits(std::uint64_t* words, std::size_t offset, std::uint64_t value,
                    std::size_t width) {
  if (width < 64) value &= (std::uint64_t{1} << width) - 1;
  if (!value) return;
  const std::size_t word = offset / 64;
  const std::size_t shift = offset % 64;
  words[word] |= value << shift;
  if (shift && shift + width > 64) words[word + 1] |= value >> (64 - shift);
}

}  // namespace ensearch::kernels
