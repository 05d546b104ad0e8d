#include "ensearch/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "ensearch/errors.hpp"

namespace ensearch {

Polynomial::Polynomial(std::size_t p, std::map<Exponents, BigInt> terms) : p_(p) {
  for (auto& [exps, c] : terms) {
    if (exps.size() != p) throw UsageError("exponent vector length differs from p");
    if (c != 0) terms_.emplace(exps, std::move(c));
  }
}

Polynomial Polynomial::constant(std::size_t p, const BigInt& c) {
  return Polynomial(p, {{Exponents(p, 0), c}});
}

Polynomial Polynomial::variable(std::size_t p, std::size_t var) {
  Exponents e(p, 0);
  e.at(var) = 1;
  return Polynomial(p, {{e, 1}});
}

Polynomial Polynomial::widened(std::size_t p) const {
  if (p < p_) throw UsageError("cannot narrow a polynomial");
  std::map<Exponents, BigInt> out;
  for (const auto& [exps, c] : terms_) {
    Exponents e = exps;
    e.resize(p, 0);
    out.emplace(std::move(e), c);
  }
  return Polynomial(p, std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const std::size_t p = std::max(a.p_, b.p_);
  auto terms = a.widened(p).terms_;
  for (const auto& [e, c] : b.widened(p).terms_) terms[e] += c;
  return Polynomial(p, std::move(terms));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + b * Polynomial::constant(0, -1);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const std::size_t p = std::max(a.p_, b.p_);
  const Polynomial wa = a.widened(p), wb = b.widened(p);
  std::map<Polynomial::Exponents, BigInt> terms;
  for (const auto& [ea, ca] : wa.terms_) {
    for (const auto& [eb, cb] : wb.terms_) {
      Polynomial::Exponents e(p);
      for (std::size_t i = 0; i < p; ++i) e[i] = ea[i] + eb[i];
      terms[e] += ca * cb;
    }
  }
  return Polynomial(p, std::move(terms));
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

bool Polynomial::is_constant() const {
  for (const auto& [e, c] : terms_) {
    for (auto x : e) {
      if (x) return false;
    }
  }
  return true;
}

BigInt Polynomial::evaluate(std::span<const BigInt> x) const {
  if (x.size() != p_) throw UsageError("evaluate expects " + std::to_string(p_) + " values");
  BigInt total = 0;
  for (const auto& [e, c] : terms_) {
    BigInt term = c;
    for (std::size_t i = 0; i < p_; ++i) term *= boost::multiprecision::pow(x[i], e[i]);
    total += term;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest total degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1) {
      out << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < p_; ++i) {
      if (!e[i]) continue;
      if (wrote) out << "*";
      out << "x" << i + 1;
      if (e[i] > 1) out << "^" << e[i];
      wrote = true;
    }
    if (!wrote) out << "1";
  }
  return out.str();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Polynomial run() {
    Polynomial result = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc = eat('-') ? Polynomial::constant(0, 0) - term() : term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!eat('^')) return base;
    const std::string e = digits();
    if (e.size() > 4) fail("exponent too large");
    Polynomial result = Polynomial::constant(0, 1);
    for (int i = std::stoi(e); i > 0; --i) result = result * base;
    return result;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      const std::string k = digits();
      if (k.size() > 6 || std::stoul(k) == 0) fail("variable index must be in 1..999999");
      const std::size_t var = std::stoul(k);
      return Polynomial::variable(var, var - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(0, parse_natural(digits()));
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace ensearch
