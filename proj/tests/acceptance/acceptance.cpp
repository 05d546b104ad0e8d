// Acceptance criteria, one PASS/FAIL line each. With no argument every
// criterion runs; with a number only that one does. The exit status is the
// number of failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ensearch/box_solver.hpp"
#include "ensearch/core_systems.hpp"
#include "ensearch/duplicate_bounds.hpp"
#include "ensearch/godel_codec.hpp"
#include "ensearch/poly_compiler.hpp"
#include "ensearch/primes.hpp"
#include "ensearch/xi_engine.hpp"

using namespace ensearch;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kLimitC1 = 10;
constexpr double kLimitC2 = 60;
constexpr double kLimitC3 = 300;
constexpr double kLimitC4 = 300;
constexpr double kLimitC5 = 30;
constexpr double kLimitC6 = 60;
constexpr double kLimitC7 = 60;
constexpr double kLimitC8 = 120;
constexpr double kLimitC9 = 120;
constexpr double kLimitC10 = 600;

// Collects failed checks with a short description of each.
class Ledger {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    if (ok()) return std::to_string(checks_) + " checks";
    std::string out = std::to_string(failures_.size()) + "/" + std::to_string(checks_) +
                      " checks failed: " + failures_.front();
    if (failures_.size() > 1) out += " (+" + std::to_string(failures_.size() - 1) + " more)";
    return out;
  }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::string str(const SearchEvent& e) { return to_string(e); }

std::vector<SearchEvent> xi_events(const BigInt& n, XiOptions opt = {}) {
  std::vector<SearchEvent> ev;
  xi_run(n, opt, [&](const SearchEvent& e) { ev.push_back(e); });
  return ev;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(ENSEARCH_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

// ---------------------------------------------------------------------------

void c1(Ledger& l) {
  for (unsigned n = 1; n <= 4; ++n) {
    l.check(g_value(n, 1) == 0, "g(" + std::to_string(n) + ",1) != 0");
    l.check(g_value(n, 2) == 1, "g(" + std::to_string(n) + ",2) != 1");
  }
}

void c2(Ledger& l) {
  for (unsigned n = 1; n <= 3; ++n) {
    std::uint64_t prev = 0;
    for (std::uint64_t m = 1; m <= 6; ++m) {
      const std::string at = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
      const auto fast = g_value(n, m, GMode::Optimized);
      const auto slow = g_value(n, m, GMode::Naive);
      l.check(fast == slow, "naive != optimized at " + at);
      l.check(fast <= m - 1, "g > m-1 at " + at);
      l.check(fast >= prev, "g decreases at " + at);
      prev = fast;
    }
  }
}

void c3(Ledger& l) {
  const FCertificate f1 = f_certify(1, 8);
  l.check(f1.f_value == 1 && f1.exact, "f(1) != 1");
  const FCertificate f2 = f_certify(2, 32);
  const FCertificate f3 = f_certify(3, 16);
  l.check(f2.f_value == 2, "f_certify(2,32) = " + std::to_string(f2.f_value));
  l.check(f3.f_value == 4, "f_certify(3,16) = " + std::to_string(f3.f_value));
  for (const auto& c : {f2, f3}) {
    const auto f = c.f_value;
    const std::string n = std::to_string(c.n);
    l.check(g_value(c.n, f) < f, "g(n,f) < f fails for n=" + n);
    l.check(g_value(c.n, f + 1) == f, "g(n,f+1) = f fails for n=" + n);
    l.check(g_value(c.n, f + 2) == f, "g(n,f+2) = f fails for n=" + n);
  }
}

void c4(Ledger& l) {
  const auto f2 = f_certify(2, 32).f_value;
  const auto f3 = f_certify(3, 16).f_value;
  l.check(f3 >= f2 * f2, "f(3) = " + std::to_string(f3) + " < f(2)^2 = " +
                             std::to_string(f2 * f2));
}

void c5(Ledger& l) {
  const EnSystem pair(1, {Equation::sum(1, 1, 1), Equation::unit(1)});
  l.check(decode_system(323322) == pair, "decode_system(323322)");
  l.check(encode_system(pair) == 323322, "encode_system of {x1+x1=x1, x1=1}");
  const EnSystem x19(19, {Equation::unit(19)});
  l.check(decode_system(262143) == x19, "decode_system(262143)");
  const CodeSearchResult mc = minimal_solving_code(x19);
  l.check(mc.status == CodeSearchStatus::Found && mc.code == primorial(18) * 67 * 67,
          "minimal solving code of {x19=1} is " + mc.code.str());

  const auto eqs = all_equations(4);
  std::size_t bad = 0, total = 0;
  auto round_trip = [&](std::set<Equation> chosen) {
    ++total;
    VarIndex top = 1;
    for (const auto& e : chosen) top = std::max(top, e.max_index());
    const EnSystem s(top, std::move(chosen));
    if (!(decode_system(encode_system(s)) == s)) ++bad;
  };
  for (std::size_t a = 0; a < eqs.size(); ++a) {
    round_trip({eqs[a]});
    for (std::size_t b = a + 1; b < eqs.size(); ++b) {
      round_trip({eqs[a], eqs[b]});
      for (std::size_t c = b + 1; c < eqs.size(); ++c) round_trip({eqs[a], eqs[b], eqs[c]});
    }
  }
  l.check(bad == 0, std::to_string(bad) + " of " + std::to_string(total) + " round trips differ");
}

void c6(Ledger& l) {
  const auto zero = xi_events(0);
  std::string got;
  for (const auto& e : zero) got += (got.empty() ? "" : ", ") + str(e);
  l.check(zero.size() == 2 && std::holds_alternative<InitialZero>(zero[0]) &&
              std::holds_alternative<Found>(zero[1]) && std::get<Found>(zero[1]).value == 1 &&
              std::get<Found>(zero[1]).solving_m == 3,
          "xi_run(0) emitted [" + got + "], expected [initial_zero, found value=1 m=3]");

  const auto six = xi_events(6);
  l.check(six.size() == 2 && std::holds_alternative<InitialZero>(six[0]) &&
              std::get_if<Found>(&six[1]) && std::get<Found>(six[1]).value == 0 &&
              std::get<Found>(six[1]).solving_m == 2,
          "xi_run(6)");

  XiOptions opt;
  opt.budget = 100'000;
  const auto none = xi_events(323322, opt);
  l.check(none.size() == 2 && std::holds_alternative<InitialZero>(none[0]) &&
              std::holds_alternative<BudgetExhausted>(none[1]),
          "xi_run(323322, budget 1e5)");

  // Ordering: the first event precedes any progress report, and the CLI
  // prints the 0 before anything else.
  XiOptions progress;
  progress.progress_interval = 1;
  progress.budget = 50;
  const auto ordered = xi_events(323322, progress);
  l.check(!ordered.empty() && std::holds_alternative<InitialZero>(ordered[0]) &&
              std::holds_alternative<Tested>(ordered[1]),
          "InitialZero is not first");
  l.check(run_cli("xi --n 323322 --budget 5 --progress 1").rfind("0\ntested m=2\n", 0) == 0,
          "CLI does not flush 0 first");
}

void c7(Ledger& l) {
  l.check(decode_system(1) == EnSystem(2, {Equation::unit(2)}), "decode_system(1) != {x2=1}");
  XiOptions opt;
  opt.normalized = true;
  const XiResult r = xi_run(1, opt, [](const SearchEvent&) {});
  l.check(r.normalization_applied, "normalization did not trigger");
  l.check(r.found && r.found->value == 1, "normalized run did not find 1");
}

void c8(Ledger& l) {
  for (const char* text : {"x1 - 1", "x1 - x2*x2", "x1 + x2 - 5", "x1*x1 - 2"}) {
    const CountReport rep = count_equivalence(compile(Polynomial::parse(text)), 10);
    l.check(rep.holds(), std::string("count equivalence fails for ") + text);
  }
  // p = 1 instances: every extension of x in {0..3} with auxiliary values
  // up to the witness range is tried; exactly one solves T iff D(x) = 0.
  for (const char* text : {"x1 - 1", "x1*x1 - 2", "x1 - 3", "x1*x1 - x1", "2*x1 - 4"}) {
    const CompilationResult r = compile(Polynomial::parse(text));
    std::uint64_t range = 3;
    for (std::uint64_t x = 0; x < 4; ++x) {
      range = std::max(range, evaluate_witness(r, Tuple{x}).max().convert_to<std::uint64_t>());
    }
    bool unique = r.n - r.p <= 6;
    for (std::uint64_t x = 0; x < 4 && unique; ++x) {
      std::uint64_t solutions = 0;
      const std::uint64_t fixed[] = {x};
      BoxSearch search{range, fixed};
      search.node_cap = 200'000'000;
      // Exhaustive: no forcing shortcut, every auxiliary value is scanned.
      std::vector<std::uint64_t> v(r.n, 0);
      v[0] = x;
      const std::size_t aux = r.n - 1;
      std::uint64_t combos = 1;
      for (std::size_t i = 0; i < aux; ++i) combos *= range + 1;
      for (std::uint64_t c = 0; c < combos; ++c) {
        std::uint64_t rest = c;
        for (std::size_t i = 0; i < aux; ++i) {
          v[1 + i] = rest % (range + 1);
          rest /= range + 1;
        }
        bool ok = true;
        for (const auto& eq : r.system.equations()) {
          if (!eq.holds(std::span<const std::uint64_t>(v))) {
            ok = false;
            break;
          }
        }
        solutions += ok;
      }
      const bool zero = r.polynomial.evaluate(std::vector<BigInt>{x}) == 0;
      unique = solutions == (zero ? 1u : 0u) && count_box_solutions(r.system, search) == solutions;
    }
    l.check(unique, std::string("witness uniqueness fails for ") + text);
  }
}

void c9(Ledger& l) {
  const ChiEstimate e = chi_lower_bound(3, 10);
  bool witnessed = false;
  for (const auto& c : e.candidates) {
    if (c.solution == Tuple{1, 2, 4}) witnessed = true;
  }
  l.check(e.value == 4, "chi_lower_bound(3,10) = " + std::to_string(e.value));
  l.check(witnessed, "(1,2,4) is not among the uniquely solvable tuples");
  for (unsigned n = 1; n <= 2; ++n) {
    std::uint64_t prev = 0;
    for (std::uint64_t box = 1; box <= 12; ++box) {
      const auto v = chi_lower_bound(n, box).value;
      l.check(v >= prev, "chi decreases for n=" + std::to_string(n) + " at box " +
                             std::to_string(box));
      prev = v;
    }
  }
}

void c10(Ledger& l) {
  // Reflexive and transitive over {0..3}^n, n <= 3.
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<RelationSignature> sig;
    std::vector<std::uint64_t> x(n, 0);
    for (;;) {
      sig.push_back(relations_of(Tuple::from_u64(x)));
      std::size_t d = n;
      while (d > 0 && ++x[d - 1] == 4) x[--d] = 0;
      if (d == 0) break;
    }
    const std::size_t k = sig.size();
    std::vector<char> dup(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) dup[a * k + b] = sig[b].includes(sig[a]);
    }
    std::size_t broken = 0;
    for (std::size_t a = 0; a < k; ++a) {
      broken += !dup[a * k + a];
      for (std::size_t b = 0; b < k; ++b) {
        if (!dup[a * k + b]) continue;
        for (std::size_t c = 0; c < k; ++c) broken += dup[b * k + c] && !dup[a * k + c];
      }
    }
    l.check(broken == 0, "duplicate relation not a preorder for n=" + std::to_string(n));
  }

  // Duplicate iff entailment, n = 2, all 2^14 subsets of E_2.
  {
    const auto eqs = all_equations(2);
    std::vector<Tuple> tuples;
    std::vector<std::uint32_t> mask;
    for (std::uint64_t a = 0; a < 5; ++a) {
      for (std::uint64_t b = 0; b < 5; ++b) {
        tuples.push_back(Tuple{a, b});
        std::uint32_t m = 0;
        for (std::size_t e = 0; e < eqs.size(); ++e) {
          if (satisfies(EnSystem(2, {eqs[e]}), tuples.back())) m |= 1u << e;
        }
        mask.push_back(m);
      }
    }
    std::size_t mismatches = 0;
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      for (std::size_t b = 0; b < tuples.size(); ++b) {
        bool entailed = true;
        for (std::uint32_t s = 0; s < (1u << eqs.size()) && entailed; ++s) {
          if ((mask[a] & s) == s && (mask[b] & s) != s) entailed = false;
        }
        mismatches += entailed != is_duplicate(tuples[a], tuples[b]);
      }
    }
    l.check(eqs.size() == 14 && mismatches == 0, "duplicate/entailment mismatch");
  }

  // Deterministic under parallelism 1 and 4.
  for (unsigned n = 2; n <= 4; ++n) {
    for (std::uint64_t m : {4u, 7u}) {
      SearchLimits one, four;
      four.parallelism = 4;
      l.check(g_value(n, m, GMode::Optimized, one) == g_value(n, m, GMode::Optimized, four),
              "g differs across thread counts");
    }
  }
  {
    XiOptions a, b;
    a.budget = b.budget = 40'000;
    a.progress_interval = b.progress_interval = 2500;
    b.parallelism = 4;
    a.block_size = b.block_size = 3000;
    for (std::uint64_t n : {15u, 31u, 47u}) {
      l.check(xi_events(n, a) == xi_events(n, b), "xi differs across thread counts");
    }
    SearchLimits four;
    four.parallelism = 4;
    l.check(chi_lower_bound(3, 8).value == chi_lower_bound(3, 8, ChiMode::Signature, four).value,
            "chi differs across thread counts");
  }

  // Kill-and-resume through the CLI checkpoint.
  const auto cp = std::filesystem::temp_directory_path() / "ensearch_acceptance_resume.json";
  for (const std::string args : {std::string("g-stream --n 3 --count 8"),
                                 std::string("xi --n 15 --budget 30000 --progress 2000")}) {
    std::filesystem::remove(cp);
    const std::string whole = run_cli(args);
    std::string joined;
    for (int i = 0; i < 40; ++i) {
      const std::string part = run_cli(args + " --checkpoint " + cp.string() + " --stop-after 2");
      if (part.empty()) break;
      joined += part;
    }
    l.check(!whole.empty() && joined == whole, "resumed output differs for: " + args);
  }
  std::filesystem::remove(cp);
}

struct Criterion {
  const char* name;
  double limit;
  std::function<void(Ledger&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"C1 g(n,1)=0 and g(n,2)=1 for n<=4", kLimitC1, c1},
      {"C2 g bounds, monotonicity, naive=optimized for n<=3, m<=6", kLimitC2, c2},
      {"C3 f(1)=1, f_certify(2,32)=2, f_certify(3,16)=4, stabilization", kLimitC3, c3},
      {"C4 certified f(3) >= f(2)^2", kLimitC4, c4},
      {"C5 codec examples, {x19=1} minimal code, round trips", kLimitC5, c5},
      {"C6 xi event streams for codes 0, 6, 323322", kLimitC6, c6},
      {"C7 normalized variant on code 1", kLimitC7, c7},
      {"C8 polynomial count equivalence and witness uniqueness", kLimitC8, c8},
      {"C9 chi lower bound and monotonicity", kLimitC9, c9},
      {"C10 duplicate preorder, entailment, determinism, resume", kLimitC10, c10},
  };

  std::vector<std::size_t> selected;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > static_cast<int>(all.size())) {
      std::cerr << "criterion must be 1.." << all.size() << '\n';
      return 64;
    }
    selected.push_back(static_cast<std::size_t>(k - 1));
  } else {
    for (std::size_t i = 0; i < all.size(); ++i) selected.push_back(i);
  }

  int failed = 0;
  for (auto i : selected) {
    const auto& c = all[i];
    Ledger ledger;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(ledger);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit;
    const bool pass = error.empty() && ledger.ok() && in_time;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS " : "FAIL ") << c.name << " [" << secs << " s / " << c.limit
         << " s] ";
    if (!error.empty()) {
      line << "exception: " << error;
    } else {
      line << ledger.summary();
      if (!in_time) line << "; over time limit";
    }
    std::cout << line.str() << std::endl;
    failed += !pass;
  }
  return failed;
}
