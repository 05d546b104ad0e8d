#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ensearch/bigint.hpp"

namespace ensearch {

struct PrimePower {
  BigInt prime;
  std::uint32_t exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// The i-th prime, 0-based (nth_prime(0) == 2).
std::uint64_t nth_prime(std::size_t index);
std::vector<std::uint64_t> first_primes(std::size_t count);
// All primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

bool is_prime_u64(std::uint64_t n);

// Prime factorization in increasing prime order. value must be >= 1; 1 has
// the empty factorization. Composite cofactors above 2^64 with no factor
// below 2^20 raise ResourceCapError.
std::vector<PrimePower> factorize(const BigInt& value);

// Exponents of the distinct primes dividing `value`, in increasing prime order.
std::vector<std::uint32_t> prime_exponents(const BigInt& value);

// Product of the first `count` primes.
BigInt primorial(std::size_t count);

}  // namespace ensearch
