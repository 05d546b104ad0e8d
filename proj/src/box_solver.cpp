#include "ensearch/box_solver.hpp"

#include <optional>
#include <vector>

#include "ensearch/errors.hpp"

namespace ensearch {

namespace {

struct Level {
  std::vector<Equation> checks;      // equations whose largest index is this level
  std::optional<Equation> forcing;   // output equation over strictly earlier variables
};

std::uint64_t forced_value(const Equation& eq, const std::vector<std::uint64_t>& x) {
  switch (eq.kind()) {
    case EquationKind::Unit:
      return 1;
    case EquationKind::Sum:
      return x[eq.i() - 1] + x[eq.j() - 1];
    case EquationKind::Prod:
      return x[eq.i() - 1] * x[eq.j() - 1];
  }
  return 0;
}

class Backtracker {
 public:
  Backtracker(const EnSystem& system, const BoxSearch& search,
              const std::function<bool(std::span<const std::uint64_t>)>& visit)
      : search_(search), visit_(visit), levels_(system.n()), x_(system.n(), 0) {
    for (const auto& eq : system.equations()) {
      auto& level = levels_[eq.max_index() - 1];
      level.checks.push_back(eq);
      const bool outputs_last = eq.k() == eq.max_index() &&
                                (eq.kind() == EquationKind::Unit || eq.j() < eq.k());
      if (outputs_last && !level.forcing) level.forcing = eq;
    }
  }

  std::uint64_t run() {
    descend(0);
    return found_;
  }

 private:
  bool consistent(std::size_t level) const {
    for (const auto& eq : levels_[level].checks) {
      if (!eq.holds(std::span<const std::uint64_t>(x_.data(), level + 1))) return false;
    }
    return true;
  }

  // Returns false once the visitor asked to stop.
  bool descend(std::size_t level) {
    if (level == x_.size()) {
      ++found_;
      return visit_(x_);
    }
    if (++nodes_ > search_.node_cap) {
      throw ResourceCapError("box search exceeded its node cap of " +
                             std::to_string(search_.node_cap));
    }
    auto try_value = [&](std::uint64_t v) {
      x_[level] = v;
      return !consistent(level) || descend(level + 1);
    };
    if (level < search_.fixed.size()) return try_value(search_.fixed[level]);
    if (const auto& f = levels_[level].forcing) {
      const std::uint64_t v = forced_value(*f, x_);
      return v > search_.bound || try_value(v);
    }
    for (std::uint64_t v = 0; v <= search_.bound; ++v) {
      if (!try_value(v)) return false;
    }
    return true;
  }

  const BoxSearch& search_;
  const std::function<bool(std::span<const std::uint64_t>)>& visit_;
  std::vector<Level> levels_;
  std::vector<std::uint64_t> x_;
  std::uint64_t nodes_ = 0;
  std::uint64_t found_ = 0;
};

}  // namespace

std::uint64_t enumerate_box_solutions(
    const EnSystem& system, const BoxSearch& search,
    const std::function<bool(std::span<const std::uint64_t>)>& visit) {
  if (search.bound >= (std::uint64_t{1} << 32)) {
    throw UsageError("box bound must stay below 2^32");
  }
  if (search.fixed.size() > system.n()) throw UsageError("more fixed values than variables");
  for (auto v : search.fixed) {
    if (v >= (std::uint64_t{1} << 32)) throw UsageError("fixed values must stay below 2^32");
  }
  return Backtracker(system, search, visit).run();
}

std::uint64_t count_box_solutions(const EnSystem& system, const BoxSearch& search) {
  return enumerate_box_solutions(system, search, [](auto) { return true; });
}

}  // namespace ensearch
