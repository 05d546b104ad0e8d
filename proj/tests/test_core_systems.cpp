#include <doctest.h>

#include <random>

#include "ensearch/box_solver.hpp"
#include "ensearch/core_systems.hpp"
#include "ensearch/errors.hpp"
#include "oracles.hpp"

using namespace ensearch;

namespace {

oracle::Vec to_vec(const Tuple& t) {
  oracle::Vec v;
  for (const auto& x : t.values()) v.push_back(x.convert_to<std::int64_t>());
  return v;
}

Tuple to_tuple(const oracle::Vec& v) {
  std::vector<BigInt> out(v.begin(), v.end());
  return Tuple(std::move(out));
}

std::set<oracle::Rel> to_rels(const RelationSignature& s) {
  std::set<oracle::Rel> out;
  for (auto k : s.units) out.insert({0, 0, 0, static_cast<int>(k)});
  for (const auto& t : s.sums) out.insert({1, int(t.i), int(t.j), int(t.k)});
  for (const auto& t : s.prods) out.insert({2, int(t.i), int(t.j), int(t.k)});
  return out;
}

}  // namespace

TEST_CASE("equations are stored with ordered inputs") {
  CHECK(Equation::sum(3, 1, 2) == Equation::sum(1, 3, 2));
  CHECK(Equation::prod(2, 1, 1).i() == 1);
  CHECK(Equation::prod(2, 1, 1).j() == 2);
  CHECK(Equation::unit(4).max_index() == 4);
  CHECK_THROWS_AS(Equation::unit(0), UsageError);
}

TEST_CASE("systems reject indices beyond n") {
  CHECK_THROWS_AS(EnSystem(2, {Equation::unit(3)}), UsageError);
  CHECK_NOTHROW(EnSystem(3, {Equation::unit(3)}));
  CHECK_THROWS_AS(EnSystem(0, {}), UsageError);
}

TEST_CASE("satisfies evaluates every equation") {
  const EnSystem s(3, {Equation::unit(1), Equation::sum(1, 1, 2), Equation::prod(2, 2, 3)});
  CHECK(satisfies(s, Tuple{1, 2, 4}));
  CHECK_FALSE(satisfies(s, Tuple{1, 2, 5}));
  CHECK_THROWS_AS(satisfies(s, Tuple{1, 2}), UsageError);
}

TEST_CASE("relation signature matches the brute-force oracle") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& x : oracle::box(n, 5)) {
      CHECK(to_rels(relations_of(to_tuple(x))) == oracle::relations(x));
    }
  }
}

TEST_CASE("signature of a tuple read back as a system is satisfied by the tuple") {
  for (const auto& x : oracle::box(3, 4)) {
    const Tuple t = to_tuple(x);
    const EnSystem s = system_of(relations_of(t), 3);
    CHECK(satisfies(s, t));
    CHECK(s.size() == relations_of(t).size());
  }
}

TEST_CASE("all_equations enumerates E_n") {
  CHECK(all_equations(1).size() == 3);
  CHECK(all_equations(2).size() == 14);
  CHECK(all_equations(3).size() == 39);
  const auto e = all_equations(3);
  CHECK(std::set<Equation>(e.begin(), e.end()).size() == e.size());
}

TEST_CASE("duplicate relation is reflexive and transitive") {
  for (int n = 1; n <= 3; ++n) {
    const auto all = oracle::box(n, 4);
    std::vector<RelationSignature> sig;
    for (const auto& x : all) sig.push_back(relations_of(to_tuple(x)));
    const std::size_t k = all.size();
    std::vector<char> dup(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) dup[a * k + b] = sig[b].includes(sig[a]);
    }
    for (std::size_t a = 0; a < k; ++a) REQUIRE(dup[a * k + a]);
    std::size_t violations = 0;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (!dup[a * k + b]) continue;
        for (std::size_t c = 0; c < k; ++c) {
          if (dup[b * k + c] && !dup[a * k + c]) ++violations;
        }
      }
    }
    CHECK(violations == 0);
  }
  CHECK(is_duplicate(Tuple{1, 2}, Tuple{1, 2}));
}

TEST_CASE("duplicate iff every subset of E_2 true of x is true of y") {
  const auto eqs = all_equations(2);
  REQUIRE(eqs.size() == 14);
  const auto all = oracle::box(2, 4);
  std::vector<std::uint32_t> mask;
  for (const auto& x : all) {
    std::uint32_t m = 0;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      if (eqs[e].holds(std::span<const std::int64_t>(x))) m |= 1u << e;
    }
    mask.push_back(m);
  }
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = 0; b < all.size(); ++b) {
      bool entailed = true;
      for (std::uint32_t s = 0; s < (1u << 14) && entailed; ++s) {
        if ((mask[a] & s) == s && (mask[b] & s) != s) entailed = false;
      }
      CHECK(entailed == is_duplicate(to_tuple(all[a]), to_tuple(all[b])));
    }
  }
}

TEST_CASE("text format round trip and errors") {
  const EnSystem s(4, {Equation::unit(1), Equation::sum(1, 2, 3), Equation::prod(3, 3, 4)});
  CHECK(parse_system(format_system(s)) == s);
  const EnSystem padded(6, {Equation::unit(2)});
  CHECK(format_system(padded) == "n = 6\nx2 = 1\n");
  CHECK(parse_system(format_system(padded)) == padded);
  CHECK(parse_system("# comment\n\nx1 + x1 = x1\nx1 = 1\n") ==
        EnSystem(1, {Equation::unit(1), Equation::sum(1, 1, 1)}));
  CHECK_THROWS_AS(parse_system("x1 - x2 = x3\n"), ParseError);
  CHECK_THROWS_AS(parse_system("x1 = 1\nn = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_system("n = 1\nx2 = 1\n"), std::exception);
}

TEST_CASE("box solver agrees with exhaustive enumeration") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 3;
    const auto eqs = all_equations(n);
    std::set<Equation> chosen;
    std::set<oracle::Rel> rels;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < count; ++c) {
      const auto& e = eqs[rng() % eqs.size()];
      chosen.insert(e);
    }
    const EnSystem s(n, chosen);
    std::uint64_t expected = 0;
    for (const auto& x : oracle::box(n, 7)) expected += satisfies(s, to_tuple(x));
    CHECK(count_box_solutions(s, BoxSearch{6}) == expected);
  }
}

TEST_CASE("box solver honours fixed prefixes and the node cap") {
  const EnSystem s(3, {Equation::sum(1, 2, 3)});
  const std::uint64_t fixed[] = {2};
  CHECK(count_box_solutions(s, BoxSearch{5, fixed}) == 4);
  CHECK_THROWS_AS(count_box_solutions(EnSystem(6, {}), BoxSearch{20, {}, 1000}),
                  ResourceCapError);
}

TEST_CASE("chain system has exactly one solution up to its bound") {
  CHECK(chain_bound(1) == 1);
  CHECK(chain_bound(2) == 2);
  CHECK(chain_bound(3) == 4);
  CHECK(chain_bound(5) == 256);
  for (std::size_t n = 1; n <= 5; ++n) {
    const EnSystem s = chain_system(n);
    const auto bound = chain_bound(n).convert_to<std::uint64_t>();
    std::vector<std::uint64_t> sol;
    const auto count = enumerate_box_solutions(s, BoxSearch{bound}, [&](auto x) {
      sol.assign(x.begin(), x.end());
      return true;
    });
    CHECK(count == 1);
    CHECK(*std::max_element(sol.begin(), sol.end()) == bound);
  }
}

TEST_CASE("strict bound system has the expected shape") {
  const EnSystem s = strict_bound_system(14);
  CHECK(s.n() == 14);
  CHECK(s.size() == 13);
  CHECK(s.contains(Equation::prod(12, 12, 13)));
  CHECK(s.contains(Equation::prod(13, 13, 14)));
  CHECK_THROWS_AS(strict_bound_system(11), UsageError);
}

TEST_CASE("padding pins x1 to n and u to x2 + 1") {
  const EnSystem phi(3, {Equation::prod(2, 2, 3)});
  for (std::size_t n : {12u, 13u}) {
    const EnSystem padded = pad_system(phi, n);
    const PaddingLayout lay = padding_layout(3, n);
    CHECK(padded.n() == n);
    std::uint64_t seen = 0;
    enumerate_box_solutions(padded, BoxSearch{n + 2}, [&](auto x) {
      ++seen;
      CHECK(x[0] == n);
      CHECK(x[lay.u - 1] == x[1] + 1);
      CHECK(x[2] == x[1] * x[1]);
      return true;
    });
    CHECK(seen > 0);
  }
  CHECK_THROWS_AS(pad_system(phi, 11), UsageError);
}
