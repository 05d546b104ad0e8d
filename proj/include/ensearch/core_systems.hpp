#pragma once

// Equations of E_n, systems, tuples and the duplicate order on tuples.
//
// E_n = { x_k = 1, x_i + x_j = x_k, x_i * x_j = x_k : i, j, k in 1..n }.
// Variable indices are 1-based throughout the public API. Sum and product
// equations are commutative in (i, j) and are stored with i <= j.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ensearch/bigint.hpp"

namespace ensearch {

using VarIndex = std::uint32_t;

enum class EquationKind : std::uint8_t { Unit, Sum, Prod };

class Equation {
 public:
  static Equation unit(VarIndex k);
  static Equation sum(VarIndex i, VarIndex j, VarIndex k);
  static Equation prod(VarIndex i, VarIndex j, VarIndex k);

  EquationKind kind() const { return kind_; }
  // For Unit equations i() and j() are 0.
  VarIndex i() const { return i_; }
  VarIndex j() const { return j_; }
  VarIndex k() const { return k_; }
  VarIndex max_index() const;

  // Holds under `values` (1-based index v reads values[v-1]). An index past
  // the end of `values` makes the equation false, never an error.
  template <typename Value>
  bool holds(std::span<const Value> values) const;

  friend auto operator<=>(const Equation&, const Equation&) = default;

 private:
  Equation(EquationKind kind, VarIndex i, VarIndex j, VarIndex k)
      : kind_(kind), i_(i), j_(j), k_(k) {}

  EquationKind kind_;
  VarIndex i_;
  VarIndex j_;
  VarIndex k_;
};

std::string to_string(const Equation& eq);

// A finite set of E_n equations together with the variable count n.
class EnSystem {
 public:
  EnSystem(std::size_t n, std::set<Equation> equations);
  EnSystem(std::size_t n, std::initializer_list<Equation> equations)
      : EnSystem(n, std::set<Equation>(equations)) {}

  std::size_t n() const { return n_; }
  const std::set<Equation>& equations() const { return equations_; }
  std::size_t size() const { return equations_.size(); }
  bool empty() const { return equations_.empty(); }
  bool contains(const Equation& eq) const { return equations_.contains(eq); }
  // Largest index used by an equation, 0 for the empty system.
  VarIndex max_index() const;
  // Same equation set (n is ignored).
  bool same_equations(const EnSystem& other) const {
    return equations_ == other.equations_;
  }

  friend bool operator==(const EnSystem&, const EnSystem&) = default;

 private:
  std::size_t n_;
  std::set<Equation> equations_;
};

// Assignment of non-negative integers to x_1..x_n.
class Tuple {
 public:
  explicit Tuple(std::vector<BigInt> values);
  Tuple(std::initializer_list<std::uint64_t> values);
  static Tuple from_u64(std::span<const std::uint64_t> values);

  std::size_t size() const { return values_.size(); }
  const BigInt& operator[](std::size_t index) const { return values_[index]; }
  std::span<const BigInt> values() const { return values_; }
  BigInt max() const;

  friend bool operator==(const Tuple&, const Tuple&) = default;

 private:
  std::vector<BigInt> values_;
};

std::string to_string(const Tuple& tuple);

struct Triple {
  VarIndex i;
  VarIndex j;
  VarIndex k;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Every E_n relation true of a tuple.
struct RelationSignature {
  std::set<VarIndex> units;
  std::set<Triple> sums;
  std::set<Triple> prods;

  bool contains(const Equation& eq) const;
  // Componentwise superset test: every relation of `other` is also here.
  bool includes(const RelationSignature& other) const;
  std::size_t size() const { return units.size() + sums.size() + prods.size(); }

  friend bool operator==(const RelationSignature&, const RelationSignature&) = default;
};

RelationSignature relations_of(const Tuple& x);

// The signature read as an n-variable system.
EnSystem system_of(const RelationSignature& signature, std::size_t n);

bool satisfies(const EnSystem& system, const Tuple& x);

// y is a duplicate of x when every relation of x also holds in y.
bool is_duplicate(const Tuple& x, const Tuple& y);

// All of E_n: n units, then n * n(n+1)/2 sums, then as many products.
std::vector<Equation> all_equations(std::size_t n);

// x_1 = 1, x_1 + x_1 = x_2, x_{k-1} * x_{k-1} = x_k for 3 <= k <= n.
// Unique solution (1, 2, 4, 16, ..., 2^(2^(n-2))).
EnSystem chain_system(std::size_t n);

// Largest entry of the unique chain solution: 1 for n = 1, else 2^(2^(n-2)).
BigInt chain_bound(std::size_t n);

// The eleven-equation core over x_1..x_12 followed by the squaring chain
// x_{k-1} * x_{k-1} = x_k for 13 <= k <= n. Requires n >= 12.
EnSystem strict_bound_system(std::size_t n);

// Variable layout of a padded system built from an s-variable core:
// x_1..x_s core, then the z block, the t chain, and w, y, u as the last three.
struct PaddingLayout {
  std::size_t s;
  std::size_t n;
  std::size_t z_count;
  std::size_t t_count;
  VarIndex z_first;
  VarIndex t_first;
  VarIndex w;
  VarIndex y;
  VarIndex u;
};

PaddingLayout padding_layout(std::size_t s, std::size_t n);

// Pads `phi` (s = phi.n() >= 3 variables) to n >= 6 + 2s variables so every
// solution over N has x_1 = n and u = x_2 + 1.
EnSystem pad_system(const EnSystem& phi, std::size_t n);

// Text format, one equation per line:
//   x<K> = 1 | x<I> + x<J> = x<K> | x<I> * x<J> = x<K>
// with an optional leading header `n = <N>`. Without the header n is the
// largest index used.
std::string format_system(const EnSystem& system);
EnSystem parse_system(std::string_view text);

// ---------------------------------------------------------------------------

template <typename Value>
bool Equation::holds(std::span<const Value> values) const {
  if (max_index() > values.size()) return false;
  const auto& out = values[k_ - 1];
  switch (kind_) {
    case EquationKind::Unit:
      return out == 1;
    case EquationKind::Sum:
      return values[i_ - 1] + values[j_ - 1] == out;
    case EquationKind::Prod:
      return values[i_ - 1] * values[j_ - 1] == out;
  }
  return false;
}

}  // namespace ensearch
