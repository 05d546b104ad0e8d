#include "ensearch/signature_classes.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "ensearch/errors.hpp"

namespace ensearch {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kBatch = 256;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

SignatureClasses::SignatureClasses(const kernels::SignatureLayout& layout)
    : stride_(layout.stride), n_(layout.n), slots_(64, kEmpty) {}

std::size_t SignatureClasses::hash(const std::uint64_t* sig) const {
  std::uint64_t h = 0;
  for (std::size_t w = 0; w < stride_; ++w) h = mix(h ^ sig[w]);
  return static_cast<std::size_t>(h);
}

void SignatureClasses::grow() {
  std::vector<std::uint32_t> bigger(slots_.size() * 2, kEmpty);
  const std::size_t mask = bigger.size() - 1;
  for (std::uint32_t c = 0; c < size(); ++c) {
    std::size_t slot = hash(signature(c)) & mask;
    while (bigger[slot] != kEmpty) slot = (slot + 1) & mask;
    bigger[slot] = c;
  }
  slots_ = std::move(bigger);
}

std::uint32_t SignatureClasses::insert(const std::uint64_t* sig,
                                       std::span<const std::uint32_t> tuple,
                                       std::uint32_t tuple_max, std::uint64_t count) {
  const std::size_t mask = slots_.size() - 1;
  std::size_t slot = hash(sig) & mask;
  while (slots_[slot] != kEmpty) {
    const std::uint32_t c = slots_[slot];
    if (std::equal(sig, sig + stride_, signature(c))) {
      members_[c] += count;
      if (tuple_max < min_max_[c]) {
        min_max_[c] = tuple_max;
        std::copy(tuple.begin(), tuple.end(), reps_.begin() + c * n_);
      }
      return c;
    }
    slot = (slot + 1) & mask;
  }
  if (size() >= kEmpty - 1) throw ResourceCapError("too many signature classes");
  const auto c = static_cast<std::uint32_t>(size());
  slots_[slot] = c;
  words_.insert(words_.end(), sig, sig + stride_);
  min_max_.push_back(tuple_max);
  members_.push_back(count);
  reps_.insert(reps_.end(), tuple.begin(), tuple.end());
  if (2 * size() > slots_.size()) grow();
  return c;
}

std::uint32_t SignatureClasses::add(const std::uint64_t* sig,
                                    std::span<const std::uint32_t> tuple) {
  const std::uint32_t top = *std::max_element(tuple.begin(), tuple.end());
  return insert(sig, tuple, top, 1);
}

void SignatureClasses::merge(const SignatureClasses& other) {
  for (std::size_t c = 0; c < other.size(); ++c) {
    insert(other.signature(c), other.representative(c), other.min_max(c), other.members(c));
  }
}

namespace {

void classify_range(std::size_t n, std::uint32_t m, std::uint64_t begin, std::uint64_t end,
                    const kernels::SignatureLayout& layout,
                    const kernels::KernelTable& kernels, SignatureClasses& classes) {
  std::vector<std::uint32_t> digits(n, 0);
  std::uint64_t rest = begin;
  for (std::size_t d = n; d-- > 0;) {
    digits[d] = static_cast<std::uint32_t>(rest % m);
    rest /= m;
  }
  std::vector<std::uint32_t> batch(kBatch * n);
  std::vector<std::uint64_t> sigs(kBatch * layout.stride);

  for (std::uint64_t index = begin; index < end;) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, end - index));
    for (std::size_t t = 0; t < count; ++t) {
      std::copy(digits.begin(), digits.end(), batch.begin() + t * n);
      for (std::size_t d = n; d-- > 0;) {
        if (++digits[d] < m) break;
        digits[d] = 0;
      }
    }
    kernels.signatures(layout, batch.data(), count, sigs.data());
    for (std::size_t t = 0; t < count; ++t) {
      classes.add(sigs.data() + t * layout.stride, {batch.data() + t * n, n});
    }
    index += count;
  }
}

}  // namespace

SignatureClasses classify_box(std::size_t n, std::uint32_t m, unsigned threads,
                              const kernels::KernelTable& kernels) {
  if (m < 1 || m - 1 > kernels::kMaxPackedValue) {
    throw UsageError("packed signatures need entries in 0..65535");
  }
  const kernels::SignatureLayout layout(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / m) {
      throw ResourceCapError("box has more than 2^64 tuples");
    }
    total *= m;
  }
  threads = std::max(1u, threads);
  if (threads == 1 || total < 4096) {
    SignatureClasses classes(layout);
    classify_range(n, m, 0, total, layout, kernels, classes);
    return classes;
  }

  std::vector<SignatureClasses> parts(threads, SignatureClasses(layout));
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    using u128 = unsigned __int128;
    const auto begin = static_cast<std::uint64_t>(u128{total} * w / threads);
    const auto end = static_cast<std::uint64_t>(u128{total} * (w + 1) / threads);
    workers.emplace_back([&, w, begin, end] {
      classify_range(n, m, begin, end, layout, kernels, parts[w]);
    });
  }
  workers.clear();
  SignatureClasses merged = std::move(parts[0]);
  for (unsigned w = 1; w < threads; ++w) merged.merge(parts[w]);
  return merged;
}

}  // namespace ensearch
