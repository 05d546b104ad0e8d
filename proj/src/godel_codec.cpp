#include "ensearch/godel_codec.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>

#include "ensearch/errors.hpp"
#include "ensearch/primes.hpp"

namespace ensearch {

ExponentBlocks system_exponents(const BigInt& n) {
  if (n < 0) throw UsageError("system codes are non-negative");
  return {prime_exponents(210 * (n + 1))};
}

EnSystem decode_system(const BigInt& n) {
  const ExponentBlocks blocks = system_exponents(n);
  const auto& t = blocks.exponents;
  std::set<Equation> eqs;
  VarIndex top = 1;
  for (std::size_t b = 0; b < blocks.block_count(); ++b) {
    const VarIndex a = t[4 * b];
    const VarIndex c = t[4 * b + 1];
    const VarIndex k = t[4 * b + 2];
    const std::uint32_t marker = t[4 * b + 3];
    if (marker == 1) {
      eqs.insert(Equation::unit(a));
      top = std::max(top, a);
    } else {
      eqs.insert(marker == 2 ? Equation::sum(a, c, k) : Equation::prod(a, c, k));
      top = std::max({top, a, c, k});
    }
  }
  return EnSystem(top, std::move(eqs));
}

namespace {

// Exponent block for one equation; the larger of i, j goes on the smaller
// prime.
std::array<std::uint32_t, 4> block_of(const Equation& eq) {
  switch (eq.kind()) {
    case EquationKind::Unit:
      return {eq.k(), 1, 1, 1};
    case EquationKind::Sum:
      return {eq.j(), eq.i(), eq.k(), 2};
    case EquationKind::Prod:
      return {eq.j(), eq.i(), eq.k(), 3};
  }
  return {};
}

}  // namespace

BigInt encode_system(const EnSystem& system) {
  if (system.empty()) throw UsageError("the empty system has no code");
  if (system.size() > kMaxEncodedEquations) {
    throw ResourceCapError("encoding tries every equation order; at most " +
                           std::to_string(kMaxEncodedEquations) + " equations");
  }
  const std::vector<Equation> eqs(system.equations().begin(), system.equations().end());
  const std::vector<std::uint64_t> primes = first_primes(4 * eqs.size());

  // cost[e][b]: contribution of equation e placed in block position b.
  std::vector<std::vector<BigInt>> cost(eqs.size(), std::vector<BigInt>(eqs.size()));
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const auto block = block_of(eqs[e]);
    for (std::size_t b = 0; b < eqs.size(); ++b) {
      BigInt value = 1;
      for (std::size_t r = 0; r < 4; ++r) value *= boost::multiprecision::pow(BigInt(primes[4 * b + r]), block[r]);
      cost[e][b] = value;
    }
  }

  std::vector<std::size_t> order(eqs.size());
  std::iota(order.begin(), order.end(), 0);
  BigInt best = -1;
  do {
    BigInt product = 1;
    for (std::size_t b = 0; b < order.size(); ++b) {
      product *= cost[order[b]][b];
      if (best >= 0 && product >= best) break;
    }
    if (best < 0 || product < best) best = product;
  } while (std::next_permutation(order.begin(), order.end()));

  // best = 210 * (n + 1); the first block always covers 2, 3, 5, 7.
  return best / 210 - 1;
}

Tuple decode_tuple(const BigInt& m) {
  if (m < 2) throw UsageError("tuple codes start at 2");
  std::vector<BigInt> values;
  for (auto e : prime_exponents(m)) values.emplace_back(e - 1);
  return Tuple(std::move(values));
}

BigInt encode_tuple(const Tuple& w) {
  const auto primes = first_primes(w.size());
  BigInt product = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= std::numeric_limits<std::uint32_t>::max()) {
      throw ResourceCapError("tuple entry too large to encode as an exponent");
    }
    product *= boost::multiprecision::pow(BigInt(primes[i]), w[i].convert_to<unsigned>() + 1);
  }
  return product;
}

bool needs_normalization(const EnSystem& system) {
  std::set<VarIndex> used;
  for (const auto& eq : system.equations()) {
    used.insert(eq.k());
    if (eq.kind() != EquationKind::Unit) {
      used.insert(eq.i());
      used.insert(eq.j());
    }
  }
  return !used.empty() && *used.rbegin() > used.size();
}

EnSystem normalize(const EnSystem& system) {
  if (system.empty()) throw UsageError("normalize needs a non-empty system");
  if (needs_normalization(system)) return EnSystem(1, {Equation::unit(1)});
  return system;
}

}  // namespace ensearch
