#include "ensearch/core_systems.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ensearch/errors.hpp"

namespace ensearch {

BigInt parse_natural(std::string_view text) {
  if (text.empty()) throw UsageError("expected a non-negative integer, got an empty string");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw UsageError("expected a non-negative integer, got '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

BigInt double_power_of_two(unsigned e) {
  BigInt one = 1;
  if (e >= 40) throw UsageError("2^(2^e) is too large to materialize");
  return one << (std::size_t{1} << e);
}

// ---------------------------------------------------------------------------
// Equation

namespace {

void require_index(VarIndex v) {
  if (v < 1) throw UsageError("variable indices are 1-based");
}

}  // namespace

Equation Equation::unit(VarIndex k) {
  require_index(k);
  return Equation(EquationKind::Unit, 0, 0, k);
}

Equation Equation::sum(VarIndex i, VarIndex j, VarIndex k) {
  require_index(i);
  require_index(j);
  require_index(k);
  if (i > j) std::swap(i, j);
  return Equation(EquationKind::Sum, i, j, k);
}

Equation Equation::prod(VarIndex i, VarIndex j, VarIndex k) {
  require_index(i);
  require_index(j);
  require_index(k);
  if (i > j) std::swap(i, j);
  return Equation(EquationKind::Prod, i, j, k);
}

VarIndex Equation::max_index() const { return std::max({i_, j_, k_}); }

std::string to_string(const Equation& eq) {
  std::ostringstream out;
  switch (eq.kind()) {
    case EquationKind::Unit:
      out << 'x' << eq.k() << " = 1";
      break;
    case EquationKind::Sum:
      out << 'x' << eq.i() << " + x" << eq.j() << " = x" << eq.k();
      break;
    case EquationKind::Prod:
      out << 'x' << eq.i() << " * x" << eq.j() << " = x" << eq.k();
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// EnSystem

EnSystem::EnSystem(std::size_t n, std::set<Equation> equations)
    : n_(n), equations_(std::move(equations)) {
  if (n_ < 1) throw UsageError("a system needs at least one variable");
  for (const auto& eq : equations_) {
    if (eq.max_index() > n_) {
      throw UsageError("equation '" + to_string(eq) + "' uses an index above n = " +
                       std::to_string(n_));
    }
  }
}

VarIndex EnSystem::max_index() const {
  VarIndex top = 0;
  for (const auto& eq : equations_) top = std::max(top, eq.max_index());
  return top;
}

// ---------------------------------------------------------------------------
// Tuple

Tuple::Tuple(std::vector<BigInt> values) : values_(std::move(values)) {
  if (values_.empty()) throw UsageError("a tuple has at least one entry");
  for (const auto& v : values_) {
    if (v < 0) throw UsageError("tuple entries are non-negative");
  }
}

Tuple::Tuple(std::initializer_list<std::uint64_t> values)
    : Tuple(std::vector<BigInt>(values.begin(), values.end())) {}

Tuple Tuple::from_u64(std::span<const std::uint64_t> values) {
  return Tuple(std::vector<BigInt>(values.begin(), values.end()));
}

BigInt Tuple::max() const { return *std::max_element(values_.begin(), values_.end()); }

std::string to_string(const Tuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += tuple[i].str();
  }
  return out + ')';
}

// ---------------------------------------------------------------------------
// Signatures and the duplicate order

bool RelationSignature::contains(const Equation& eq) const {
  switch (eq.kind()) {
    case EquationKind::Unit:
      return units.contains(eq.k());
    case EquationKind::Sum:
      return sums.contains({eq.i(), eq.j(), eq.k()});
    case EquationKind::Prod:
      return prods.contains({eq.i(), eq.j(), eq.k()});
  }
  return false;
}

bool RelationSignature::includes(const RelationSignature& other) const {
  return std::includes(units.begin(), units.end(), other.units.begin(), other.units.end()) &&
         std::includes(sums.begin(), sums.end(), other.sums.begin(), other.sums.end()) &&
         std::includes(prods.begin(), prods.end(), other.prods.begin(), other.prods.end());
}

RelationSignature relations_of(const Tuple& x) {
  RelationSignature sig;
  const auto n = static_cast<VarIndex>(x.size());
  for (VarIndex k = 1; k <= n; ++k) {
    if (x[k - 1] == 1) sig.units.insert(k);
  }
  for (VarIndex i = 1; i <= n; ++i) {
    for (VarIndex j = i; j <= n; ++j) {
      const BigInt s = x[i - 1] + x[j - 1];
      const BigInt p = x[i - 1] * x[j - 1];
      for (VarIndex k = 1; k <= n; ++k) {
        if (s == x[k - 1]) sig.sums.insert({i, j, k});
        if (p == x[k - 1]) sig.prods.insert({i, j, k});
      }
    }
  }
  return sig;
}

EnSystem system_of(const RelationSignature& signature, std::size_t n) {
  std::set<Equation> eqs;
  for (auto k : signature.units) eqs.insert(Equation::unit(k));
  for (const auto& t : signature.sums) eqs.insert(Equation::sum(t.i, t.j, t.k));
  for (const auto& t : signature.prods) eqs.insert(Equation::prod(t.i, t.j, t.k));
  return EnSystem(n, std::move(eqs));
}

bool satisfies(const EnSystem& system, const Tuple& x) {
  if (x.size() != system.n()) {
    throw UsageError("tuple length " + std::to_string(x.size()) + " does not match n = " +
                     std::to_string(system.n()));
  }
  return std::all_of(system.equations().begin(), system.equations().end(),
                     [&](const Equation& eq) { return eq.holds(x.values()); });
}

bool is_duplicate(const Tuple& x, const Tuple& y) {
  if (x.size() != y.size()) throw UsageError("duplicate test needs tuples of equal length");
  return relations_of(y).includes(relations_of(x));
}

std::vector<Equation> all_equations(std::size_t n) {
  std::vector<Equation> out;
  const auto top = static_cast<VarIndex>(n);
  for (VarIndex k = 1; k <= top; ++k) out.push_back(Equation::unit(k));
  for (VarIndex i = 1; i <= top; ++i)
    for (VarIndex j = i; j <= top; ++j)
      for (VarIndex k = 1; k <= top; ++k) out.push_back(Equation::sum(i, j, k));
  for (VarIndex i = 1; i <= top; ++i)
    for (VarIndex j = i; j <= top; ++j)
      for (VarIndex k = 1; k <= top; ++k) out.push_back(Equation::prod(i, j, k));
  return out;
}

// ---------------------------------------------------------------------------
// Named systems

EnSystem chain_system(std::size_t n) {
  if (n < 1) throw UsageError("chain_system needs n >= 1");
  std::set<Equation> eqs{Equation::unit(1)};
  if (n >= 2) eqs.insert(Equation::sum(1, 1, 2));
  for (VarIndex k = 3; k <= n; ++k) eqs.insert(Equation::prod(k - 1, k - 1, k));
  return EnSystem(n, std::move(eqs));
}

BigInt chain_bound(std::size_t n) {
  if (n < 1) throw UsageError("chain_bound needs n >= 1");
  if (n == 1) return 1;
  return double_power_of_two(static_cast<unsigned>(n - 2));
}

EnSystem strict_bound_system(std::size_t n) {
  if (n < 12) throw UsageError("strict_bound_system needs n >= 12");
  std::set<Equation> eqs{
      Equation::unit(1),         Equation::sum(1, 1, 2),    Equation::sum(2, 2, 3),
      Equation::sum(1, 3, 4),    Equation::prod(4, 4, 5),   Equation::prod(5, 5, 6),
      Equation::prod(6, 7, 8),   Equation::prod(8, 8, 9),   Equation::prod(10, 10, 11),
      Equation::sum(11, 1, 12),  Equation::prod(4, 9, 12),
  };
  for (VarIndex k = 13; k <= n; ++k) eqs.insert(Equation::prod(k - 1, k - 1, k));
  return EnSystem(n, std::move(eqs));
}

PaddingLayout padding_layout(std::size_t s, std::size_t n) {
  if (s < 3) throw UsageError("padding needs a core over at least 3 variables");
  if (n < 6 + 2 * s) {
    throw UsageError("padding needs n >= 6 + 2s = " + std::to_string(6 + 2 * s));
  }
  PaddingLayout layout{};
  layout.s = s;
  layout.n = n;
  layout.t_count = n / 2;
  layout.z_count = n - n / 2 - 3 - s;
  layout.z_first = static_cast<VarIndex>(s + 1);
  layout.t_first = static_cast<VarIndex>(s + layout.z_count + 1);
  layout.w = static_cast<VarIndex>(n - 2);
  layout.y = static_cast<VarIndex>(n - 1);
  layout.u = static_cast<VarIndex>(n);
  return layout;
}

EnSystem pad_system(const EnSystem& phi, std::size_t n) {
  const PaddingLayout L = padding_layout(phi.n(), n);
  std::set<Equation> eqs = phi.equations();
  for (std::size_t z = 0; z < L.z_count; ++z) {
    eqs.insert(Equation::unit(L.z_first + static_cast<VarIndex>(z)));
  }
  const VarIndex t1 = L.t_first;
  const VarIndex t_last = L.t_first + static_cast<VarIndex>(L.t_count) - 1;
  eqs.insert(Equation::unit(t1));
  // t_count >= 6 + s >= 9, so t_2 exists.
  eqs.insert(Equation::sum(t1, t1, t1 + 1));
  for (VarIndex t = t1 + 2; t <= t_last; ++t) eqs.insert(Equation::sum(t - 1, t1, t));
  eqs.insert(Equation::sum(t_last, t_last, L.w));
  eqs.insert(Equation::sum(L.w, L.y, 1));
  if (n % 2 == 0) {
    eqs.insert(Equation::sum(L.y, L.y, L.y));
  } else {
    eqs.insert(Equation::unit(L.y));
  }
  eqs.insert(Equation::sum(2, t1, L.u));
  return EnSystem(n, std::move(eqs));
}

}  // namespace ensearch
