#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ensearch/bigint.hpp"

namespace ensearch {

// Sparse integer polynomial in x_1..x_p. Keys are exponent vectors of
// length p; zero coefficients are never stored.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;

  Polynomial() = default;
  Polynomial(std::size_t p, std::map<Exponents, BigInt> terms);

  static Polynomial parse(std::string_view text);

  std::size_t p() const { return p_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  std::uint32_t degree_in(std::size_t var) const;
  bool is_constant() const;

  BigInt evaluate(std::span<const BigInt> x) const;
  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  static Polynomial constant(std::size_t p, const BigInt& c);
  static Polynomial variable(std::size_t p, std::size_t var);
  Polynomial widened(std::size_t p) const;

 private:
  std::size_t p_ = 0;
  std::map<Exponents, BigInt> terms_;
};

}  // namespace ensearch
