#include <doctest.h>

#include "ensearch/duplicate_bounds.hpp"
#include "ensearch/errors.hpp"
#include "oracles.hpp"

using namespace ensearch;

TEST_CASE("g matches the definition-level oracle") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t m = 1; m <= (n == 3 ? 6u : 8u); ++m) {
      CAPTURE(n);
      CAPTURE(m);
      const auto want = static_cast<std::uint64_t>(oracle::g(n, static_cast<std::int64_t>(m)));
      CHECK(g_value(n, m, GMode::Optimized) == want);
      CHECK(g_value(n, m, GMode::Naive) == want);
    }
  }
}

TEST_CASE("known values") {
  const std::vector<std::uint64_t> n1{0, 1, 1, 1, 1, 1, 1, 1};
  const std::vector<std::uint64_t> n2{0, 1, 2, 2, 2, 2, 2, 2};
  const std::vector<std::uint64_t> n3{0, 1, 2, 3, 4, 4, 4, 4, 4, 4};
  for (std::size_t i = 0; i < n1.size(); ++i) CHECK(g_value(1, i + 1) == n1[i]);
  for (std::size_t i = 0; i < n2.size(); ++i) CHECK(g_value(2, i + 1) == n2[i]);
  for (std::size_t i = 0; i < n3.size(); ++i) CHECK(g_value(3, i + 1) == n3[i]);
  CHECK(g_value(2, 32) == 2);
  CHECK(g_value(3, 16) == 4);
  CHECK(g_value(4, 1) == 0);
  CHECK(g_value(4, 2) == 1);
}

TEST_CASE("g is bounded by m-1 and non-decreasing in m") {
  for (unsigned n = 1; n <= 3; ++n) {
    std::uint64_t prev = 0;
    for (std::uint64_t m = 1; m <= 12; ++m) {
      const auto v = g_value(n, m);
      CHECK(v <= m - 1);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("results do not depend on thread count or kernel") {
  for (unsigned n = 2; n <= 4; ++n) {
    for (std::uint64_t m : {3u, 6u, 9u}) {
      if (n == 4 && m > 6) continue;
      SearchLimits base;
      base.kernel = kernels::KernelChoice::Scalar;
      const auto want = g_value(n, m, GMode::Optimized, base);
      for (unsigned t : {1u, 2u, 4u}) {
        SearchLimits l;
        l.parallelism = t;
        CHECK(g_value(n, m, GMode::Optimized, l) == want);
      }
    }
  }
}

TEST_CASE("work caps") {
  SearchLimits tight;
  tight.tuple_pair_cap = 1000;
  CHECK_THROWS_AS(g_value(3, 6, GMode::Naive, tight), ResourceCapError);
  CHECK_THROWS_AS(g_value(3, 11, GMode::Optimized, tight), ResourceCapError);
  CHECK_NOTHROW(g_value(2, 5, GMode::Naive, tight));
  CHECK_THROWS_AS(g_value(1, 70000), ResourceCapError);
  CHECK_THROWS_AS(g_value(0, 3), UsageError);
  CHECK_THROWS_AS(g_value(2, 0), UsageError);
}

TEST_CASE("streams") {
  GStream gs(2);
  for (std::uint64_t m = 1; m <= 5; ++m) {
    const GApprox a = gs.next();
    CHECK(a.m == m);
    CHECK(a.value == g_value(2, m));
  }
  GStream resumed(2, {}, 4);
  CHECK(resumed.next() == GApprox{2, 4, 2});

  // Reported values are those with g(n,m) = m-1: for n = 3 that is m = 1..5.
  FStream fs(3);
  std::vector<std::uint64_t> reported;
  while (fs.next_m() <= 10) {
    if (auto a = fs.step()) reported.push_back(a->value);
  }
  CHECK(reported == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
}

TEST_CASE("f certificates") {
  const FCertificate f1 = f_certify(1, 5);
  CHECK(f1.f_value == 1);
  CHECK(f1.exact);
  CHECK(f_certify(2, 32).f_value == 2);
  CHECK(f_certify(3, 16).f_value == 4);
  CHECK_FALSE(f_certify(3, 16).exact);
  CHECK_THROWS_AS(f_certify(3, 4), UsageError);
  // The certified value is reached at m = f+1 and the sequence is flat after.
  for (unsigned n : {2u, 3u}) {
    const std::uint64_t f = f_certify(n, n == 2 ? 32 : 16).f_value;
    CHECK(g_value(n, f) < f);
    CHECK(g_value(n, f + 1) == f);
    CHECK(g_value(n, f + 2) == f);
  }
}

TEST_CASE("phi") {
  CHECK(phi(1, 2) == g_value(2, 3));
  CHECK(phi(2, 5) == 4);
}
