#include <doctest.h>

#include <random>

#include "ensearch/errors.hpp"
#include "ensearch/primes.hpp"
#include "oracles.hpp"

using namespace ensearch;

TEST_CASE("first primes") {
  CHECK(first_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(nth_prime(18) == 67);
  CHECK(nth_prime(9999) == 104729);
  CHECK(primes_up_to(30).size() == 10);
}

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t v = 0; v < 20000; ++v) {
    bool prime = v >= 2;
    for (std::uint64_t d = 2; d * d <= v && prime; ++d) prime = v % d != 0;
    CHECK(is_prime_u64(v) == prime);
  }
  CHECK(is_prime_u64(18446744073709551557ull));
  CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("factorization exponents agree with the oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const std::uint64_t v = 1 + rng() % 10'000'000;
    CHECK(prime_exponents(v) == oracle::exponents(v));
  }
}

TEST_CASE("factorization of large values") {
  // Product of two primes above the trial-division range.
  const BigInt p = 1000003, q = 998244353;
  const BigInt big = p * p * q * BigInt(1'000'000'007);
  const auto f = factorize(big);
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == p);
  CHECK(f[0].exponent == 2);
  CHECK(f[1].prime == q);
  CHECK(f[2].prime == 1'000'000'007);

  // Prime cofactor beyond 64 bits.
  const BigInt m61 = (BigInt(1) << 61) - 1;
  const BigInt m89 = (BigInt(1) << 89) - 1;
  const auto g = factorize(12 * m89);
  REQUIRE(g.size() == 3);
  CHECK(g[2].prime == m89);
  CHECK(factorize(m61 * 6).back().prime == m61);

  CHECK(primorial(4) == 210);
  CHECK_THROWS_AS(factorize(0), UsageError);
}
