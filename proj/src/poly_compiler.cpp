#include "ensearch/poly_compiler.hpp"

#include <algorithm>
#include <map>

#include "ensearch/box_solver.hpp"
#include "ensearch/errors.hpp"

namespace ensearch {

namespace {

class Builder {
 public:
  explicit Builder(std::size_t p) : next_(static_cast<VarIndex>(p) + 1) {
    one_ = fresh();
    emit({StepKind::One, one_});
    eqs_.insert(Equation::unit(one_));
  }

  VarIndex one() const { return one_; }

  VarIndex zero() {
    if (!zero_) {
      zero_ = fresh();
      emit({StepKind::Zero, zero_});
      eqs_.insert(Equation::sum(zero_, zero_, zero_));
    }
    return zero_;
  }

  VarIndex sum(VarIndex a, VarIndex b) {
    const VarIndex k = fresh();
    emit({StepKind::Sum, k, a, b});
    eqs_.insert(Equation::sum(a, b, k));
    return k;
  }

  VarIndex prod(VarIndex a, VarIndex b) {
    const VarIndex k = fresh();
    emit({StepKind::Prod, k, a, b});
    eqs_.insert(Equation::prod(a, b, k));
    return k;
  }

  // Binary double-and-add from the one-variable, sharing every prefix.
  VarIndex constant(const BigInt& c) {
    if (c == 1) return one_;
    if (auto it = constants_.find(c); it != constants_.end()) return it->second;
    VarIndex v;
    if (c % 2 == 0) {
      const VarIndex half = constant(c / 2);
      v = sum(half, half);
    } else {
      v = sum(constant(c - 1), one_);
    }
    constants_.emplace(c, v);
    return v;
  }

  // Monomial as a sorted list of variable factors; prefix products are shared.
  VarIndex monomial(const std::vector<VarIndex>& factors) {
    VarIndex acc = factors.front();
    std::vector<VarIndex> prefix{acc};
    for (std::size_t i = 1; i < factors.size(); ++i) {
      prefix.push_back(factors[i]);
      auto it = monomials_.find(prefix);
      if (it == monomials_.end()) it = monomials_.emplace(prefix, prod(acc, factors[i])).first;
      acc = it->second;
    }
    return acc;
  }

  void require(const Equation& eq) { eqs_.insert(eq); }
  VarIndex fresh() { return next_++; }
  VarIndex count() const { return next_ - 1; }
  std::vector<WitnessStep> take_program() { return std::move(program_); }
  std::set<Equation> take_equations() { return std::move(eqs_); }
  void emit(WitnessStep step) { program_.push_back(step); }

 private:
  VarIndex next_;
  VarIndex one_ = 0;
  VarIndex zero_ = 0;
  std::map<BigInt, VarIndex> constants_;
  std::map<std::vector<VarIndex>, VarIndex> monomials_;
  std::vector<WitnessStep> program_;
  std::set<Equation> eqs_;
};

VarIndex build_side(Builder& b, const std::vector<std::pair<Polynomial::Exponents, BigInt>>& side) {
  if (side.empty()) return b.zero();
  std::optional<VarIndex> acc;
  for (const auto& [exps, c] : side) {
    std::vector<VarIndex> factors;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      factors.insert(factors.end(), exps[i], static_cast<VarIndex>(i + 1));
    }
    VarIndex term;
    if (factors.empty()) {
      term = b.constant(c);
    } else if (c == 1) {
      term = b.monomial(factors);
    } else {
      term = b.prod(b.constant(c), b.monomial(factors));
    }
    acc = acc ? b.sum(*acc, term) : term;
  }
  return *acc;
}

}  // namespace

CompilationResult compile(const Polynomial& d) {
  if (d.p() == 0 || d.is_constant()) {
    throw UsageError("constant polynomial: every variable must occur with degree >= 1");
  }
  for (std::size_t i = 0; i < d.p(); ++i) {
    if (d.degree_in(i) == 0) {
      throw UsageError("x" + std::to_string(i + 1) +
                       " has degree 0; each of x1..xp must occur with degree >= 1");
    }
  }

  std::vector<std::pair<Polynomial::Exponents, BigInt>> positive, negative;
  for (const auto& [exps, c] : d.terms()) {
    if (c > 0) {
      positive.emplace_back(exps, c);
    } else {
      negative.emplace_back(exps, -c);
    }
  }

  Builder b(d.p());
  const VarIndex vp = build_side(b, positive);
  const VarIndex vq = build_side(b, negative);
  // Both sides route into one final variable: e := vp * 1, and vq * 1 = e
  // is the only equation a witness extension can violate.
  const VarIndex e = b.prod(vp, b.one());
  const Equation final_eq = Equation::prod(vq, b.one(), e);
  b.require(final_eq);

  const std::size_t n = b.count();
  const VarIndex one = b.one();
  std::vector<WitnessStep> program = b.take_program();
  return CompilationResult{d, d.p(), n, EnSystem(static_cast<VarIndex>(n), b.take_equations()),
                           std::move(program), final_eq, one};
}

Tuple evaluate_witness(const CompilationResult& result, const Tuple& x) {
  if (x.size() != result.p) {
    throw UsageError("expected " + std::to_string(result.p) + " values, got " +
                     std::to_string(x.size()));
  }
  std::vector<BigInt> v(result.n, 0);
  std::copy(x.values().begin(), x.values().end(), v.begin());
  for (const auto& s : result.witness_program) {
    BigInt& out = v[s.target - 1];
    switch (s.kind) {
      case StepKind::One:
        out = 1;
        break;
      case StepKind::Zero:
        out = 0;
        break;
      case StepKind::Sum:
        out = v[s.lhs - 1] + v[s.rhs - 1];
        break;
      case StepKind::Prod:
        out = v[s.lhs - 1] * v[s.rhs - 1];
        break;
    }
  }
  return Tuple(std::move(v));
}

CountReport count_equivalence(const CompilationResult& result, std::uint64_t box,
                              bool check_uniqueness, std::uint64_t enumeration_cap) {
  if (box < 1) throw UsageError("box must be >= 1");
  const std::size_t p = result.p;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (total > enumeration_cap / box) throw ResourceCapError("box^p exceeds the enumeration cap");
    total *= box;
  }

  CountReport report;
  std::vector<std::vector<std::uint64_t>> inputs;
  std::vector<std::uint64_t> digits(p, 0);
  BigInt range = box - 1;
  for (std::uint64_t t = 0; t < total; ++t) {
    const Tuple x = Tuple::from_u64(digits);
    const Tuple w = evaluate_witness(result, x);
    const bool zero = result.polynomial.evaluate(x.values()) == 0;
    const bool solves = satisfies(result.system, w);
    report.polynomial_zeros += zero;
    report.system_solutions += solves;
    if (zero != solves) report.pointwise_agree = false;
    range = std::max(range, w.max());
    inputs.push_back(digits);
    for (std::size_t d = p; d-- > 0;) {
      if (++digits[d] < box) break;
      digits[d] = 0;
    }
  }
  if (range >= (BigInt(1) << 32)) throw ResourceCapError("witness values exceed 2^32");
  report.witness_range = range.convert_to<std::uint64_t>();

  if (check_uniqueness) {
    for (const auto& x : inputs) {
      std::vector<BigInt> xs(x.begin(), x.end());
      const std::uint64_t expected =
          result.polynomial.evaluate(xs) == 0 ? 1 : 0;
      const std::uint64_t found =
          count_box_solutions(result.system, BoxSearch{report.witness_range, x});
      if (found != expected) report.extensions_unique = false;
    }
  }
  return report;
}

}  // namespace ensearch
