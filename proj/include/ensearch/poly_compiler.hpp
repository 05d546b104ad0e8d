#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ensearch/core_systems.hpp"
#include "ensearch/polynomial.hpp"

namespace ensearch {

enum class StepKind { One, Zero, Sum, Prod };

// target := 1 | 0 | lhs + rhs | lhs * rhs. Indices are 1-based.
struct WitnessStep {
  StepKind kind;
  VarIndex target;
  VarIndex lhs = 0;
  VarIndex rhs = 0;
  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct CompilationResult {
  Polynomial polynomial;
  std::size_t p = 0;
  std::size_t n = 0;
  EnSystem system;
  std::vector<WitnessStep> witness_program;
  // The one equation that can fail once the program has run: it ties the
  // negative side's value to the shared final variable.
  Equation final_equality;
  VarIndex one_variable = 0;
};

CompilationResult compile(const Polynomial& d);

// Runs the witness program on x_1..x_p and returns the full n-tuple.
Tuple evaluate_witness(const CompilationResult& result, const Tuple& x);

struct CountReport {
  std::uint64_t polynomial_zeros = 0;   // x in the box with D(x) = 0
  std::uint64_t system_solutions = 0;   // witness extensions that solve T
  bool pointwise_agree = true;          // for each x: extension solves T iff D(x) = 0
  bool extensions_unique = true;        // no other extension up to the witness range solves T
  std::uint64_t witness_range = 0;
  bool holds() const {
    return polynomial_zeros == system_solutions && pointwise_agree && extensions_unique;
  }
};

// Exhaustive over {0..box-1}^p. When `check_uniqueness` is set, each x is
// also searched for alternative extensions with every auxiliary value in
// {0..witness_range}.
CountReport count_equivalence(const CompilationResult& result, std::uint64_t box,
                              bool check_uniqueness = true,
                              std::uint64_t enumeration_cap = 10'000'000);

}  // namespace ensearch
