#pragma once

// Integer codes for systems and tuples, read off prime factorizations.
//
// System code n: factor 210*(n+1) and list the exponents t(1..s) of the
// distinct primes dividing it in increasing order. Each full block of four
// exponents (t(4i-3), t(4i-2), t(4i-1), t(4i)) yields one equation chosen by
// t(4i): 1 -> x_{t(4i-3)} = 1, 2 -> sum, > 2 -> product. A trailing partial
// block is ignored.
//
// Tuple code m >= 2: the tuple of (exponent - 1) over the distinct primes
// dividing m, in increasing prime order.

#include <cstdint>
#include <vector>

#include "ensearch/bigint.hpp"
#include "ensearch/core_systems.hpp"

namespace ensearch {

struct ExponentBlocks {
  std::vector<std::uint32_t> exponents;
  std::size_t block_count() const { return exponents.size() / 4; }
};

ExponentBlocks system_exponents(const BigInt& n);

EnSystem decode_system(const BigInt& n);

// Smallest n with decode_system(n) equal to `system` as a set of equations.
// Throws UsageError for the empty system and ResourceCapError above
// kMaxEncodedEquations equations.
BigInt encode_system(const EnSystem& system);
inline constexpr std::size_t kMaxEncodedEquations = 8;

Tuple decode_tuple(const BigInt& m);
// prod p_i^(w_i + 1) over the first |w| primes.
BigInt encode_tuple(const Tuple& w);

// True when the largest variable index exceeds the number of distinct
// indices used, the case that normalize() replaces by {x_1 = 1}.
bool needs_normalization(const EnSystem& system);
EnSystem normalize(const EnSystem& system);

}  // namespace ensearch
