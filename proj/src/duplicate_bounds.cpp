#include "ensearch/duplicate_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

#include "ensearch/core_systems.hpp"
#include "ensearch/errors.hpp"
#include "ensearch/signature_classes.hpp"

namespace ensearch {

namespace {

std::uint64_t box_size(unsigned n, std::uint64_t m, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (total > cap / m) {
      throw ResourceCapError("{0.." + std::to_string(m - 1) + "}^" + std::to_string(n) +
                             " exceeds the work cap of " + std::to_string(cap));
    }
    total *= m;
  }
  return total;
}

void check_arguments(unsigned n, std::uint64_t m) {
  if (n < 1) throw UsageError("n must be >= 1");
  if (m < 1) throw UsageError("m must be >= 1");
}

// Elimination loop over all ordered tuple pairs: x is dropped when some tuple
// with a strictly smaller maximum duplicates it; the answer is the largest
// entry among the survivors.
std::uint64_t g_naive(unsigned n, std::uint64_t m, const SearchLimits& limits) {
  const std::uint64_t count = box_size(n, m, limits.tuple_pair_cap);
  if (count > limits.tuple_pair_cap / count) {
    throw ResourceCapError("naive mode needs " + std::to_string(count) + "^2 tuple pairs, over the cap of " +
                           std::to_string(limits.tuple_pair_cap));
  }
  std::vector<std::uint64_t> tuples(count * n);
  std::vector<std::uint64_t> maxima(count);
  std::vector<std::uint64_t> digits(n, 0);
  for (std::uint64_t s = 0; s < count; ++s) {
    std::copy(digits.begin(), digits.end(), tuples.begin() + s * n);
    maxima[s] = *std::max_element(digits.begin(), digits.end());
    for (unsigned d = n; d-- > 0;) {
      if (++digits[d] < m) break;
      digits[d] = 0;
    }
  }

  std::vector<bool> removed(count, false);
  for (std::uint64_t s = 0; s < count; ++s) {
    const std::uint64_t* ys = &tuples[s * n];
    for (std::uint64_t t = 0; t < count && !removed[s]; ++t) {
      const std::uint64_t* yt = &tuples[t * n];
      bool broken = false;
      for (unsigned i = 0; i < n && !broken; ++i) {
        if (ys[i] == 1 && yt[i] != 1) broken = true;
        for (unsigned j = i; j < n && !broken; ++j) {
          for (unsigned k = 0; k < n && !broken; ++k) {
            if (ys[i] + ys[j] == ys[k] && yt[i] + yt[j] != yt[k]) broken = true;
            if (ys[i] * ys[j] == ys[k] && yt[i] * yt[j] != yt[k]) broken = true;
          }
        }
      }
      if (!broken && maxima[t] < maxima[s]) removed[s] = true;
    }
  }
  std::uint64_t best = 0;
  for (std::uint64_t s = 0; s < count; ++s) {
    if (!removed[s]) best = std::max(best, maxima[s]);
  }
  return best;
}

std::uint64_t g_optimized(unsigned n, std::uint64_t m, const SearchLimits& limits) {
  const std::uint64_t cap = limits.tuple_pair_cap;
  const std::uint64_t count = box_size(n, m, cap);
  if (m - 1 > kernels::kMaxPackedValue) {
    throw ResourceCapError("entries above 65535 are outside the packed signature kernels");
  }
  const auto& kern = kernels::select_kernels(limits.kernel);
  const unsigned threads = std::max(1u, limits.parallelism);
  const SignatureClasses classes =
      classify_box(n, static_cast<std::uint32_t>(m), threads, kern);

  // Classes by ascending minimal maximum; the first superset of a class in
  // this order is its cheapest duplicate.
  const std::size_t k = classes.size();
  const std::size_t stride = classes.stride();
  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return classes.min_max(a) < classes.min_max(b);
  });
  std::vector<std::uint64_t> sorted(k * stride);
  std::vector<std::uint32_t> sorted_max(k);
  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::uint64_t* sig = classes.signature(order[pos]);
    std::copy(sig, sig + stride, sorted.begin() + pos * stride);
    sorted_max[pos] = classes.min_max(order[pos]);
  }

  const std::uint64_t pair_budget = cap - count;
  std::atomic<std::uint64_t> checks{0};
  std::vector<std::uint64_t> partial(threads, 0);
  auto worker = [&](unsigned w) {
    std::uint64_t local_best = 0;
    for (std::size_t pos = w; pos < k; pos += threads) {
      if (checks.load(std::memory_order_relaxed) > pair_budget) return;
      const std::size_t hit =
          kern.first_superset(sorted.data() + pos * stride, sorted.data(), pos + 1, stride);
      checks.fetch_add(hit + 1, std::memory_order_relaxed);
      local_best = std::max<std::uint64_t>(local_best, sorted_max[hit]);
    }
    partial[w] = local_best;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  if (checks.load() > pair_budget) {
    throw ResourceCapError("optimized mode exceeded the work cap of " + std::to_string(cap) +
                           " (" + std::to_string(k) + " signature classes)");
  }
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace

std::uint64_t g_value(unsigned n, std::uint64_t m, GMode mode, const SearchLimits& limits) {
  check_arguments(n, m);
  if (limits.tuple_pair_cap == 0) throw UsageError("the work cap must be positive");
  return mode == GMode::Naive ? g_naive(n, m, limits) : g_optimized(n, m, limits);
}

GStream::GStream(unsigned n, SearchLimits limits, std::uint64_t start_m)
    : n_(n), limits_(limits), m_(start_m) {
  check_arguments(n, start_m);
}

GApprox GStream::next() {
  const std::uint64_t value = g_value(n_, m_, GMode::Optimized, limits_);
  return {n_, m_++, value};
}

FStream::FStream(unsigned n, SearchLimits limits, std::uint64_t start_m)
    : n_(n), limits_(limits), m_(start_m) {
  check_arguments(n, start_m);
}

std::optional<GApprox> FStream::step() {
  const std::uint64_t m = m_;
  const std::uint64_t value = g_value(n_, m, GMode::Optimized, limits_);
  ++m_;
  if (value == m - 1) return GApprox{n_, m, value};
  return std::nullopt;
}

FCertificate f_certify(unsigned n, std::uint64_t box, const SearchLimits& limits) {
  check_arguments(n, box);
  if (n == 1) {
    // Every subset of E_1 with a solution over N has one in {0,1}: x_1 = 0
    // satisfies all sums and products, x_1 = 1 the unit and x_1 * x_1 = x_1.
    return {1, 1, box, true};
  }
  if (BigInt(box) <= chain_bound(n)) {
    throw UsageError("box must exceed 2^(2^(n-2)) = " + chain_bound(n).str() +
                     " so the chain solution lies inside it");
  }
  return {n, g_value(n, box, GMode::Optimized, limits), box, false};
}

std::uint64_t phi(unsigned n, std::uint64_t l, GMode mode, const SearchLimits& limits) {
  if (n == std::numeric_limits<unsigned>::max() ||
      l == std::numeric_limits<std::uint64_t>::max()) {
    throw UsageError("phi arguments out of range");
  }
  return g_value(n + 1, l + 1, mode, limits);
}

}  // namespace ensearch
