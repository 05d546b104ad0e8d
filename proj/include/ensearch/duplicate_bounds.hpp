#pragma once

// g(n,m): the smallest b such that every x in {0..m-1}^n has a duplicate in
// {0..b}^n. For fixed n the values g(n,1), g(n,2), ... are non-decreasing,
// bounded by m-1, and settle at f(n) from m = f(n)+1 on.

#include <cstdint>
#include <optional>

#include "ensearch/bigint.hpp"
#include "ensearch/kernels.hpp"

namespace ensearch {

enum class GMode {
  Naive,      // pairwise elimination over all tuple pairs
  Optimized,  // signature classes + superset scans
};

struct SearchLimits {
  // Work allowed per call. Naive mode counts m^(2n) tuple pairs; optimized
  // mode counts m^n signature computations plus class-pair checks.
  std::uint64_t tuple_pair_cap = 10'000'000;
  unsigned parallelism = 1;
  kernels::KernelChoice kernel = kernels::KernelChoice::Auto;
};

struct GApprox {
  unsigned n;
  std::uint64_t m;
  std::uint64_t value;
  friend bool operator==(const GApprox&, const GApprox&) = default;
};

struct FCertificate {
  unsigned n;
  std::uint64_t f_value;
  std::uint64_t verified_box;  // every x in {0..verified_box-1}^n was checked
  bool exact;                  // only for n = 1
};

std::uint64_t g_value(unsigned n, std::uint64_t m, GMode mode = GMode::Optimized,
                      const SearchLimits& limits = {});

// Emits g(n,1), g(n,2), ... ; can start at any m to resume.
class GStream {
 public:
  explicit GStream(unsigned n, SearchLimits limits = {}, std::uint64_t start_m = 1);
  GApprox next();
  std::uint64_t next_m() const { return m_; }

 private:
  unsigned n_;
  SearchLimits limits_;
  std::uint64_t m_;
};

// Evaluates g(n,m) for successive m and reports it only when g(n,m) = m-1.
// The reported values increase; the last one ever reported is f(n).
class FStream {
 public:
  explicit FStream(unsigned n, SearchLimits limits = {}, std::uint64_t start_m = 1);
  // Advances one iteration; returns the value when it is reported.
  std::optional<GApprox> step();
  std::uint64_t next_m() const { return m_; }

 private:
  unsigned n_;
  SearchLimits limits_;
  std::uint64_t m_;
};

// Box-limited certificate: the smallest b such that every x in
// {0..box-1}^n has a duplicate in {0..b}^n. A lower bound on f(n); exact for
// n = 1 where f(1) = 1. For n >= 2 the box must contain the chain solution,
// i.e. box > 2^(2^(n-2)).
FCertificate f_certify(unsigned n, std::uint64_t box, const SearchLimits& limits = {});

// phi(n,l) = g(n+1, l+1).
std::uint64_t phi(unsigned n, std::uint64_t l, GMode mode = GMode::Optimized,
                  const SearchLimits& limits = {});

}  // namespace ensearch
