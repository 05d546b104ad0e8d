#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ensearch {

using BigInt = boost::multiprecision::cpp_int;

// Parses a non-negative decimal integer. Throws UsageError on anything else.
BigInt parse_natural(std::string_view text);

inline std::string to_string(const BigInt& value) { return value.str(); }

inline bool fits_u64(const BigInt& value) {
  return value >= 0 && value <= std::numeric_limits<std::uint64_t>::max();
}

// 2^(2^e), the chain-system bound.
BigInt double_power_of_two(unsigned e);

}  // namespace ensearch
