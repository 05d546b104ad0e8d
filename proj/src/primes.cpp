#include "ensearch/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include <boost/multiprecision/miller_rabin.hpp>

#include "ensearch/errors.hpp"

namespace ensearch {

namespace {

constexpr std::uint64_t kTrialLimit = std::uint64_t{1} << 20;

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Cached ascending primes; grown on demand.
class PrimeCache {
 public:
  std::vector<std::uint64_t> up_to(std::uint64_t limit) {
    std::lock_guard lock(mutex_);
    ensure_limit(limit);
    auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
    return {primes_.begin(), end};
  }

  std::uint64_t nth(std::size_t index) {
    std::lock_guard lock(mutex_);
    while (primes_.size() <= index) ensure_limit(std::max<std::uint64_t>(limit_ * 2, 1024));
    return primes_[index];
  }

 private:
  void ensure_limit(std::uint64_t limit) {
    if (limit <= limit_) return;
    std::vector<bool> composite(limit + 1, false);
    primes_.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    limit_ = limit;
  }

  std::mutex mutex_;
  std::vector<std::uint64_t> primes_;
  std::uint64_t limit_ = 1;
};

PrimeCache& cache() {
  static PrimeCache instance;
  return instance;
}

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void split_u64(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  split_u64(d, out);
  split_u64(n / d, out);
}

void append(std::vector<PrimePower>& out, const BigInt& p, std::uint32_t e) {
  if (!out.empty() && out.back().prime == p) {
    out.back().exponent += e;
  } else {
    out.push_back({p, e});
  }
}

// Factors a 64-bit cofactor whose small prime factors are already removed.
void factor_u64_tail(std::uint64_t n, std::vector<PrimePower>& out) {
  if (n == 1) return;
  std::vector<std::uint64_t> parts;
  split_u64(n, parts);
  std::sort(parts.begin(), parts.end());
  for (auto p : parts) append(out, p, 1);
}

}  // namespace

std::uint64_t nth_prime(std::size_t index) { return cache().nth(index); }

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (count) nth_prime(count - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(nth_prime(i));
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) { return cache().up_to(limit); }

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic for all 64-bit n with these bases.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(const BigInt& value) {
  if (value < 1) throw UsageError("factorize needs a positive integer");
  std::vector<PrimePower> out;
  BigInt rest = value;
  static const std::vector<std::uint64_t> small = primes_up_to(kTrialLimit);
  for (std::uint64_t p : small) {
    if (fits_u64(rest)) {
      auto r = rest.convert_to<std::uint64_t>();
      // Finish on machine words once the cofactor is small.
      for (auto it = std::lower_bound(small.begin(), small.end(), p); it != small.end(); ++it) {
        const std::uint64_t q = *it;
        if (static_cast<u128>(q) * q > r) break;
        std::uint32_t e = 0;
        while (r % q == 0) {
          r /= q;
          ++e;
        }
        if (e) append(out, q, e);
      }
      factor_u64_tail(r, out);
      return out;
    }
    std::uint32_t e = 0;
    while (static_cast<std::uint64_t>(rest % p) == 0) {
      rest /= p;
      ++e;
    }
    if (e) append(out, p, e);
  }
  if (fits_u64(rest)) {
    factor_u64_tail(rest.convert_to<std::uint64_t>(), out);
    return out;
  }
  if (boost::multiprecision::miller_rabin_test(rest, 25)) {
    append(out, rest, 1);
    return out;
  }
  throw ResourceCapError("cofactor " + rest.str() +
                         " has no factor below 2^20 and is too large to split");
}

std::vector<std::uint32_t> prime_exponents(const BigInt& value) {
  std::vector<std::uint32_t> out;
  for (const auto& pp : factorize(value)) out.push_back(pp.exponent);
  return out;
}

BigInt primorial(std::size_t count) {
  BigInt product = 1;
  for (auto p : first_primes(count)) product *= p;
  return product;
}

}  // namespace ensearch
