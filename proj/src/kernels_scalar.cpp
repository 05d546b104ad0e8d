#include <algorithm>

#include "ensearch/errors.hpp"
#include "ensearch/kernels.hpp"

namespace ensearch::kernels {

SignatureLayout::SignatureLayout(std::size_t n_)
    : n(n_), pairs(n_ * (n_ + 1) / 2), bits(n_ + 2 * n_ * (n_ * (n_ + 1) / 2)) {
  if (n == 0 || n > 64) throw UsageError("signature layout needs 1 <= n <= 64");
  const std::size_t words = (bits + 63) / 64;
  stride = (words + 3) / 4 * 4;
}

namespace {

void scalar_signatures(const SignatureLayout& layout, const std::uint32_t* tuples,
                       std::size_t count, std::uint64_t* out) {
  const std::size_t n = layout.n;
  for (std::size_t t = 0; t < count; ++t) {
    const std::uint32_t* x = tuples + t * n;
    std::uint64_t* sig = out + t * layout.stride;
    std::fill(sig, sig + layout.stride, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] == 1) or_bits(sig, layout.unit_bit(k), 1, 1);
    }
    std::size_t pair = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++pair) {
        const std::uint64_t s = std::uint64_t{x[i]} + x[j];
        const std::uint64_t p = std::uint64_t{x[i]} * x[j];
        for (std::size_t k = 0; k < n; ++k) {
          if (s == x[k]) or_bits(sig, layout.sum_bit(pair, k), 1, 1);
          if (p == x[k]) or_bits(sig, layout.prod_bit(pair, k), 1, 1);
        }
      }
    }
  }
}

std::size_t scalar_first_superset(const std::uint64_t* query, const std::uint64_t* candidates,
                                  std::size_t count, std::size_t stride) {
  for (std::size_t c = 0; c < count; ++c) {
    const std::uint64_t* row = candidates + c * stride;
    bool covers = true;
    for (std::size_t w = 0; w < stride; ++w) {
      if (query[w] & ~row[w]) {
        covers = false;
        break;
      }
    }
    if (covers) return c;
  }
  return count;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", scalar_signatures, scalar_first_superset};
  return table;
}

}  // namespace ensearch::kernels
