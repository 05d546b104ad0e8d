#pragma once

// The xi search: report 0 at once, decode the system coded by n, then test
// tuple codes m = 2, 3, ... until the decoded tuple satisfies every equation
// of the system, and report the largest entry of that tuple. Testing code m
// is iteration m - 1.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ensearch/bigint.hpp"
#include "ensearch/core_systems.hpp"
#include "ensearch/duplicate_bounds.hpp"

namespace ensearch {

struct InitialZero {
  friend bool operator==(const InitialZero&, const InitialZero&) = default;
};
struct Tested {
  std::uint64_t m;
  std::uint64_t iterations;
  friend bool operator==(const Tested&, const Tested&) = default;
};
struct Found {
  std::uint64_t value;      // largest entry of decode_tuple(solving_m)
  std::uint64_t solving_m;
  std::uint64_t iterations;  // solving_m - 1
  friend bool operator==(const Found&, const Found&) = default;
};
struct BudgetExhausted {
  std::uint64_t last_m;
  friend bool operator==(const BudgetExhausted&, const BudgetExhausted&) = default;
};

using SearchEvent = std::variant<InitialZero, Tested, Found, BudgetExhausted>;

std::string to_string(const SearchEvent& event);

struct XiOptions {
  std::uint64_t budget = 100'000;  // codes tested by this call
  bool unbounded = false;          // ignore budget; may never return
  bool normalized = false;
  std::uint64_t start_m = 2;       // resume point
  bool emit_initial_zero = true;   // false when resuming
  std::uint64_t progress_interval = 0;  // Tested on codes m with (m-1) % interval == 0; 0 = never
  unsigned parallelism = 1;
  std::uint64_t block_size = 1 << 14;
  // Called after each completed round with the next untested code.
  std::function<void(std::uint64_t next_m)> on_round;
};

struct XiResult {
  EnSystem system;               // the system actually searched
  bool normalization_applied = false;
  std::optional<Found> found;
  std::uint64_t next_m = 2;      // first untested code
};

XiResult xi_run(const BigInt& n, const XiOptions& options,
                const std::function<void(const SearchEvent&)>& sink);

// True when the tuple coded by m satisfies every equation of `system`
// (indices past the tuple's length fail). Reference path through
// decode_tuple; the search itself uses a block sieve.
bool code_solves(const EnSystem& system, const BigInt& m);

enum class CodeSearchStatus { Found, BudgetExhausted, Unsatisfiable };

struct CodeSearchResult {
  CodeSearchStatus status;
  BigInt code;          // valid when Found
  std::uint64_t nodes;  // search nodes spent
  std::string reason;   // why Unsatisfiable
};

// Smallest m whose decoded tuple satisfies `system`, built directly: the
// tuple uses the first r primes (r = largest index), and candidates
// prod p_i^(w_i) are enumerated under a growing cap.
CodeSearchResult minimal_solving_code(const EnSystem& system,
                                      std::uint64_t node_budget = 10'000'000);

// Sound but incomplete unsatisfiability check by constant propagation.
// Returns a reason when the system has no solution over N.
std::optional<std::string> refute(const EnSystem& system);

// Box-limited estimate of chi(n): the largest max(x) over tuples
// x in {0..box}^n whose only duplicate in that box is x itself, i.e. tuples
// that are the unique solution of some system.
enum class ChiMode {
  Signature,          // packed signature classes
  ExhaustiveSubsets,  // every subset of E_n, n <= 2
};

struct ChiCandidate {
  EnSystem system;
  Tuple solution;
  std::uint64_t box;
  std::uint64_t witness_bound;
};

struct ChiEstimate {
  std::uint64_t value;
  std::vector<ChiCandidate> candidates;  // every uniquely solvable tuple found
};

ChiEstimate chi_lower_bound(unsigned n, std::uint64_t box, ChiMode mode = ChiMode::Signature,
                            const SearchLimits& limits = {});

}  // namespace ensearch
