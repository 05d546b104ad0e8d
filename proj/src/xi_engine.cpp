#include "ensearch/xi_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "ensearch/errors.hpp"
#include "ensearch/godel_codec.hpp"
#include "ensearch/primes.hpp"

namespace ensearch {

std::string to_string(const SearchEvent& event) {
  struct Printer {
    std::string operator()(const InitialZero&) const { return "initial_zero"; }
    std::string operator()(const Tested& e) const {
      return "tested m=" + std::to_string(e.m) + " iterations=" + std::to_string(e.iterations);
    }
    std::string operator()(const Found& e) const {
      return "found value=" + std::to_string(e.value) + " m=" + std::to_string(e.solving_m) +
             " iterations=" + std::to_string(e.iterations);
    }
    std::string operator()(const BudgetExhausted& e) const {
      return "budget_exhausted last_m=" + std::to_string(e.last_m);
    }
  };
  return std::visit(Printer{}, event);
}

namespace {

struct CompiledEquation {
  EquationKind kind;
  std::uint32_t i, j, k;  // 0-based
};

struct CompiledSystem {
  std::vector<CompiledEquation> eqs;
  std::size_t width = 0;  // tuples shorter than this cannot satisfy the system
};

CompiledSystem compile_system(const EnSystem& system) {
  CompiledSystem out;
  for (const auto& eq : system.equations()) {
    const std::uint32_t i = eq.kind() == EquationKind::Unit ? eq.k() - 1 : eq.i() - 1;
    const std::uint32_t j = eq.kind() == EquationKind::Unit ? eq.k() - 1 : eq.j() - 1;
    out.eqs.push_back({eq.kind(), i, j, eq.k() - 1});
    out.width = std::max<std::size_t>(out.width, eq.max_index());
  }
  return out;
}

// Exponents of every m in [lo, lo + len), by a segmented sieve.
class BlockSieve {
 public:
  static constexpr std::size_t kMaxFactors = 16;

  void factor(std::uint64_t lo, std::size_t len) {
    rest_.resize(len);
    counts_.assign(len, 0);
    exps_.resize(len * kMaxFactors);
    for (std::size_t idx = 0; idx < len; ++idx) rest_[idx] = lo + idx;
    const std::uint64_t hi = lo + len - 1;
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi))) + 1;
    if (root > primes_limit_) {
      primes_limit_ = std::max<std::uint64_t>(root, 2 * primes_limit_);
      primes_ = primes_up_to(primes_limit_);
    }
    for (std::uint64_t p : primes_) {
      if (p * p > hi) break;
      std::uint64_t first = (lo + p - 1) / p * p;
      for (std::uint64_t v = first; v <= hi; v += p) {
        const std::size_t idx = v - lo;
        std::uint8_t e = 0;
        while (rest_[idx] % p == 0) {
          rest_[idx] /= p;
          ++e;
        }
        exps_[idx * kMaxFactors + counts_[idx]++] = e;
      }
    }
    for (std::size_t idx = 0; idx < len; ++idx) {
      if (rest_[idx] > 1) exps_[idx * kMaxFactors + counts_[idx]++] = 1;
    }
  }

  std::size_t count(std::size_t idx) const { return counts_[idx]; }
  const std::uint8_t* exponents(std::size_t idx) const { return &exps_[idx * kMaxFactors]; }

 private:
  std::vector<std::uint64_t> rest_;
  std::vector<std::uint8_t> counts_;
  std::vector<std::uint8_t> exps_;
  std::vector<std::uint64_t> primes_;
  std::uint64_t primes_limit_ = 0;
};

bool exponents_solve(const CompiledSystem& sys, const std::uint8_t* exps, std::size_t count) {
  if (count < sys.width) return false;
  // Tuple entries are exponent - 1.
  auto w = [&](std::uint32_t v) { return static_cast<std::uint32_t>(exps[v]) - 1; };
  for (const auto& eq : sys.eqs) {
    switch (eq.kind) {
      case EquationKind::Unit:
        if (w(eq.k) != 1) return false;
        break;
      case EquationKind::Sum:
        if (w(eq.i) + w(eq.j) != w(eq.k)) return false;
        break;
      case EquationKind::Prod:
        if (w(eq.i) * w(eq.j) != w(eq.k)) return false;
        break;
    }
  }
  return true;
}

struct BlockResult {
  std::optional<std::uint64_t> hit;
};

BlockResult scan_block(const CompiledSystem& sys, BlockSieve& sieve, std::uint64_t lo,
                       std::size_t len) {
  sieve.factor(lo, len);
  for (std::size_t idx = 0; idx < len; ++idx) {
    if (exponents_solve(sys, sieve.exponents(idx), sieve.count(idx))) return {lo + idx};
  }
  return {};
}

}  // namespace

bool code_solves(const EnSystem& system, const BigInt& m) {
  const Tuple w = decode_tuple(m);
  return std::all_of(system.equations().begin(), system.equations().end(),
                     [&](const Equation& eq) { return eq.holds(w.values()); });
}

XiResult xi_run(const BigInt& n, const XiOptions& options,
                const std::function<void(const SearchEvent&)>& sink) {
  if (!options.unbounded && options.budget == 0) throw UsageError("budget must be positive");
  if (options.start_m < 2) throw UsageError("tuple codes start at 2");
  if (options.block_size == 0) throw UsageError("block size must be positive");

  // Reported before any decoding or search work.
  if (options.emit_initial_zero) sink(InitialZero{});

  EnSystem system = decode_system(n);
  XiResult result{system, false, std::nullopt, options.start_m};
  if (options.normalized && needs_normalization(system)) {
    result.system = normalize(system);
    result.normalization_applied = true;
  }
  const CompiledSystem compiled = compile_system(result.system);

  const unsigned threads = std::max(1u, options.parallelism);
  std::vector<BlockSieve> sieves(threads);
  const std::uint64_t interval = options.progress_interval;
  std::uint64_t m = options.start_m;
  std::uint64_t remaining = options.budget;
  const std::uint64_t last_m = options.start_m + options.budget - 1;

  // Tested events fall on codes whose iteration count m - 1 is a multiple of
  // the interval, so a resumed search reports on the same grid.
  auto report_progress = [&](std::uint64_t from, std::uint64_t to) {
    if (!interval) return;
    for (std::uint64_t it = (from - 1 + interval - 1) / interval * interval; it + 1 < to;
         it += interval) {
      sink(Tested{it + 1, it});
    }
  };

  while (options.unbounded || remaining > 0) {
    std::vector<std::pair<std::uint64_t, std::size_t>> blocks;
    std::uint64_t lo = m;
    for (unsigned w = 0; w < threads && (options.unbounded || remaining > 0); ++w) {
      std::uint64_t len = options.block_size;
      if (!options.unbounded) {
        len = std::min(len, remaining);
        remaining -= len;
      }
      blocks.emplace_back(lo, static_cast<std::size_t>(len));
      lo += len;
    }
    std::vector<BlockResult> results(blocks.size());
    if (blocks.size() == 1) {
      results[0] = scan_block(compiled, sieves[0], blocks[0].first, blocks[0].second);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        pool.emplace_back([&, b] {
          results[b] = scan_block(compiled, sieves[b], blocks[b].first, blocks[b].second);
        });
      }
    }
    for (const auto& r : results) {
      if (r.hit) {
        report_progress(m, *r.hit);
        const Tuple w = decode_tuple(BigInt(*r.hit));
        result.found = Found{w.max().convert_to<std::uint64_t>(), *r.hit, *r.hit - 1};
        result.next_m = *r.hit + 1;
        sink(*result.found);
        return result;
      }
    }
    report_progress(m, lo);
    m = lo;
    result.next_m = m;
    if (options.on_round) options.on_round(m);
  }
  sink(BudgetExhausted{last_m});
  return result;
}

// ---------------------------------------------------------------------------
// Refutation by constant propagation

std::optional<std::string> refute(const EnSystem& system) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 31;
  std::map<VarIndex, std::uint64_t> known;
  std::optional<std::string> conflict;

  auto assign = [&](VarIndex v, std::uint64_t value, const Equation& why) -> bool {
    auto it = known.find(v);
    if (it == known.end()) {
      if (value < kLimit) {
        known.emplace(v, value);
        return true;
      }
      return false;
    }
    if (it->second != value) {
      conflict = "x" + std::to_string(v) + " must equal both " + std::to_string(it->second) +
                 " and " + std::to_string(value) + " (" + to_string(why) + ")";
    }
    return false;
  };
  auto value_of = [&](VarIndex v) -> std::optional<std::uint64_t> {
    auto it = known.find(v);
    if (it == known.end()) return std::nullopt;
    return it->second;
  };
  auto fail = [&](const Equation& why, const std::string& what) {
    conflict = what + " (" + to_string(why) + ")";
  };

  bool changed = true;
  while (changed && !conflict) {
    changed = false;
    for (const auto& eq : system.equations()) {
      if (conflict) break;
      const VarIndex i = eq.i(), j = eq.j(), k = eq.k();
      if (eq.kind() == EquationKind::Unit) {
        changed |= assign(k, 1, eq);
        continue;
      }
      const auto xi = value_of(i), xj = value_of(j), xk = value_of(k);
      if (eq.kind() == EquationKind::Sum) {
        if (i == k && j == k) {
          changed |= assign(k, 0, eq);
        } else if (i == k) {
          changed |= assign(j, 0, eq);
        } else if (j == k) {
          changed |= assign(i, 0, eq);
        } else if (xi && xj) {
          changed |= assign(k, *xi + *xj, eq);
        } else if (xk && i == j) {
          if (*xk % 2) {
            fail(eq, "x" + std::to_string(k) + " = " + std::to_string(*xk) + " is odd");
          } else {
            changed |= assign(i, *xk / 2, eq);
          }
        } else if (xk && (xi || xj)) {
          const std::uint64_t part = xi ? *xi : *xj;
          if (part > *xk) {
            fail(eq, "sum would be negative");
          } else {
            changed |= assign(xi ? j : i, *xk - part, eq);
          }
        }
      } else {
        if (xi && xj) {
          changed |= assign(k, *xi * *xj, eq);
        } else if ((xi && *xi == 0) || (xj && *xj == 0)) {
          changed |= assign(k, 0, eq);
        } else if (xk && (xi || xj) && i != j) {
          const std::uint64_t part = xi ? *xi : *xj;
          if (*xk % part) {
            fail(eq, std::to_string(part) + " does not divide " + std::to_string(*xk));
          } else {
            changed |= assign(xi ? j : i, *xk / part, eq);
          }
        }
      }
    }
  }
  if (!conflict) {
    for (const auto& eq : system.equations()) {
      if (eq.kind() == EquationKind::Unit) continue;
      const auto xi = value_of(eq.i()), xj = value_of(eq.j()), xk = value_of(eq.k());
      if (!xi || !xj || !xk) continue;
      const bool holds = eq.kind() == EquationKind::Sum ? *xi + *xj == *xk : *xi * *xj == *xk;
      if (!holds) {
        conflict = "propagated values violate " + to_string(eq);
        break;
      }
    }
  }
  return conflict;
}

// ---------------------------------------------------------------------------
// Minimal solving code by direct construction

namespace {

class CodeSearch {
 public:
  CodeSearch(const EnSystem& system, std::uint64_t budget)
      : width_(system.max_index()), budget_(budget), levels_(width_), used_(width_, false),
        w_(width_, 0) {
    for (const auto& eq : system.equations()) {
      auto& level = levels_[eq.max_index() - 1];
      level.checks.push_back(eq);
      const bool outputs_last = eq.k() == eq.max_index() &&
                                (eq.kind() == EquationKind::Unit || eq.j() < eq.k());
      if (outputs_last && !level.forcing) level.forcing = eq;
      used_[eq.k() - 1] = true;
      if (eq.kind() != EquationKind::Unit) {
        used_[eq.i() - 1] = true;
        used_[eq.j() - 1] = true;
      }
    }
    for (auto p : first_primes(width_)) primes_.emplace_back(p);
  }

  CodeSearchResult run() {
    BigInt cap = 1;
    while (true) {
      best_.reset();
      cap_ = cap;
      if (!descend(0, 1)) {
        return {CodeSearchStatus::BudgetExhausted, 0, nodes_, ""};
      }
      if (best_) return {CodeSearchStatus::Found, primorial(width_) * *best_, nodes_, ""};
      cap *= 16;
    }
  }

 private:
  struct Level {
    std::vector<Equation> checks;
    std::optional<Equation> forcing;
  };

  bool consistent(std::size_t level) const {
    const std::span<const std::uint64_t> prefix(w_.data(), level + 1);
    return std::all_of(levels_[level].checks.begin(), levels_[level].checks.end(),
                       [&](const Equation& eq) { return eq.holds(prefix); });
  }

  // cost * p^v when it stays within the cap.
  std::optional<BigInt> scaled(const BigInt& cost, std::size_t level, std::uint64_t v) const {
    BigInt c = cost;
    for (std::uint64_t e = 0; e < v; ++e) {
      c *= primes_[level];
      if (c > cap_) return std::nullopt;
    }
    return c;
  }

  // Returns false when the node budget ran out.
  bool descend(std::size_t level, const BigInt& cost) {
    if (level == width_) {
      if (!best_ || cost < *best_) best_ = cost;
      return true;
    }
    if (++nodes_ > budget_) return false;
    auto visit = [&](std::uint64_t v, const BigInt& c) {
      w_[level] = v;
      return !consistent(level) || descend(level + 1, c);
    };
    if (const auto& f = levels_[level].forcing) {
      std::uint64_t v = 1;
      if (f->kind() == EquationKind::Sum) v = w_[f->i() - 1] + w_[f->j() - 1];
      if (f->kind() == EquationKind::Prod) v = w_[f->i() - 1] * w_[f->j() - 1];
      if (auto c = scaled(cost, level, v)) return visit(v, *c);
      return true;
    }
    if (!used_[level]) return visit(0, cost);
    BigInt c = cost;
    for (std::uint64_t v = 0;; ++v) {
      if (!visit(v, c)) return false;
      c *= primes_[level];
      if (c > cap_) return true;
    }
  }

  std::size_t width_;
  std::uint64_t budget_;
  std::vector<Level> levels_;
  std::vector<bool> used_;
  std::vector<std::uint64_t> w_;
  std::vector<BigInt> primes_;
  BigInt cap_;
  std::optional<BigInt> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

CodeSearchResult minimal_solving_code(const EnSystem& system, std::uint64_t node_budget) {
  if (system.empty()) throw UsageError("minimal_solving_code needs a non-empty system");
  if (auto reason = refute(system)) {
    return {CodeSearchStatus::Unsatisfiable, 0, 0, *reason};
  }
  return CodeSearch(system, node_budget).run();
}

}  // namespace ensearch
