#include <atomic>
#include <set>
#include <algorithm>
#include <map>
#include <thread>

#include "ensearch/errors.hpp"
#include "ensearch/signature_classes.hpp"
#include "ensearch/xi_engine.hpp"

namespace ensearch {

namespace {

std::uint64_t checked_box_size(unsigned n, std::uint64_t side, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (total > cap / side) throw ResourceCapError("box exceeds the work cap");
    total *= side;
  }
  return total;
}

Tuple to_tuple(std::span<const std::uint32_t> values) {
  return Tuple(std::vector<BigInt>(values.begin(), values.end()));
}

ChiEstimate chi_by_signatures(unsigned n, std::uint64_t box, const SearchLimits& limits) {
  const std::uint64_t total = checked_box_size(n, box + 1, limits.tuple_pair_cap);
  if (box > kernels::kMaxPackedValue) {
    throw ResourceCapError("entries above 65535 are outside the packed signature kernels");
  }
  const auto& kern = kernels::select_kernels(limits.kernel);
  const unsigned threads = std::max(1u, limits.parallelism);
  const SignatureClasses classes =
      classify_box(n, static_cast<std::uint32_t>(box + 1), threads, kern);
  const std::size_t k = classes.size();
  const std::size_t stride = classes.stride();
  const std::uint64_t* rows = classes.words().data();

  // A tuple is uniquely solvable in the box iff its class is a singleton and
  // no other class covers its signature.
  std::vector<char> unique(k, 0);
  const std::uint64_t budget = limits.tuple_pair_cap - total;
  std::atomic<std::uint64_t> checks{0};
  auto worker = [&](unsigned w) {
    for (std::size_t c = w; c < k; c += threads) {
      if (classes.members(c) != 1) continue;
      if (checks.load(std::memory_order_relaxed) > budget) return;
      const std::uint64_t* sig = classes.signature(c);
      const std::size_t before = kern.first_superset(sig, rows, c, stride);
      bool alone = before == c;
      std::size_t scanned = before == c ? c : before + 1;
      if (alone) {
        const std::size_t after =
            kern.first_superset(sig, rows + (c + 1) * stride, k - c - 1, stride);
        alone = after == k - c - 1;
        scanned += alone ? after : after + 1;
      }
      checks.fetch_add(scanned, std::memory_order_relaxed);
      unique[c] = alone;
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  if (checks.load() > budget) throw ResourceCapError("chi estimate exceeded the work cap");

  ChiEstimate estimate{0, {}};
  for (std::size_t c = 0; c < k; ++c) {
    if (!unique[c]) continue;
    Tuple x = to_tuple(classes.representative(c));
    const std::uint64_t bound = classes.min_max(c);
    estimate.value = std::max(estimate.value, bound);
    estimate.candidates.push_back({system_of(relations_of(x), n), std::move(x), box, bound});
  }
  return estimate;
}

ChiEstimate chi_by_subsets(unsigned n, std::uint64_t box, const SearchLimits& limits) {
  if (n > 2) throw UsageError("exhaustive-subset mode enumerates 2^|E_n| systems; n <= 2 only");
  const std::vector<Equation> eqs = all_equations(n);
  const std::uint64_t total = checked_box_size(n, box + 1, limits.tuple_pair_cap);
  const std::uint64_t subsets = std::uint64_t{1} << eqs.size();
  if (subsets > limits.tuple_pair_cap / total) {
    throw ResourceCapError("subset enumeration exceeds the work cap");
  }

  // Satisfied-equation mask per tuple, by direct evaluation.
  std::vector<std::vector<std::uint64_t>> tuples;
  std::vector<std::uint32_t> satisfied;
  std::vector<std::uint64_t> digits(n, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint32_t mask = 0;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      if (eqs[e].holds(std::span<const std::uint64_t>(digits))) mask |= 1u << e;
    }
    tuples.push_back(digits);
    satisfied.push_back(mask);
    for (unsigned d = n; d-- > 0;) {
      if (++digits[d] <= box) break;
      digits[d] = 0;
    }
  }

  std::map<std::uint64_t, std::uint32_t> first_system;  // tuple index -> subset
  for (std::uint32_t subset = 0; subset < subsets; ++subset) {
    std::uint64_t hits = 0, which = 0;
    for (std::uint64_t t = 0; t < total && hits < 2; ++t) {
      if ((satisfied[t] & subset) == subset) {
        ++hits;
        which = t;
      }
    }
    if (hits == 1) first_system.emplace(which, subset);
  }

  ChiEstimate estimate{0, {}};
  for (const auto& [t, subset] : first_system) {
    std::set<Equation> chosen;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      if (subset >> e & 1u) chosen.insert(eqs[e]);
    }
    const std::uint64_t bound = *std::max_element(tuples[t].begin(), tuples[t].end());
    estimate.value = std::max(estimate.value, bound);
    estimate.candidates.push_back(
        {EnSystem(n, std::move(chosen)), Tuple::from_u64(tuples[t]), box, bound});
  }
  return estimate;
}

}  // namespace

ChiEstimate chi_lower_bound(unsigned n, std::uint64_t box, ChiMode mode,
                            const SearchLimits& limits) {
  if (n < 1) throw UsageError("n must be >= 1");
  if (box < 1) throw UsageError("box must be >= 1");
  return mode == ChiMode::Signature ? chi_by_signatures(n, box, limits)
                                    : chi_by_subsets(n, box, limits);
}

}  // namespace ensearch
