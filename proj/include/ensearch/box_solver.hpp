#pragma once

// Bounded enumeration of the solutions of an E_n system inside {0..bound}^n.
// Backtracking over x_1, x_2, ... in order; an equation is checked as soon as
// its largest index is assigned, and a variable that is the output of an
// equation over earlier variables takes the forced value instead of being
// scanned.

#include <cstdint>
#include <functional>
#include <span>

#include "ensearch/core_systems.hpp"

namespace ensearch {

struct BoxSearch {
  std::uint64_t bound = 0;              // inclusive; must stay below 2^32
  std::span<const std::uint64_t> fixed; // values of x_1..x_|fixed|
  std::uint64_t node_cap = 50'000'000;  // ResourceCapError beyond this
};

// Calls `visit` for every solution in lexicographic order until it returns
// false. Returns the number of solutions visited.
std::uint64_t enumerate_box_solutions(
    const EnSystem& system, const BoxSearch& search,
    const std::function<bool(std::span<const std::uint64_t>)>& visit);

std::uint64_t count_box_solutions(const EnSystem& system, const BoxSearch& search);

}  // namespace ensearch
