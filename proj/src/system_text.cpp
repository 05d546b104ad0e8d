#include <algorithm>
#include <charconv>
#include <optional>
#include <regex>
#include <sstream>

#include "ensearch/core_systems.hpp"
#include "ensearch/errors.hpp"

namespace ensearch {

namespace {

const std::regex& unit_line() {
  static const std::regex re(R"(^x([1-9][0-9]*) = 1$)");
  return re;
}

const std::regex& binary_line() {
  static const std::regex re(R"(^x([1-9][0-9]*) ([+*]) x([1-9][0-9]*) = x([1-9][0-9]*)$)");
  return re;
}

const std::regex& header_line() {
  static const std::regex re(R"(^n = ([1-9][0-9]*)$)");
  return re;
}

VarIndex to_index(const std::string& digits, std::size_t line_no) {
  VarIndex value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": index out of range");
  }
  return value;
}

}  // namespace

std::string format_system(const EnSystem& system) {
  std::ostringstream out;
  if (system.empty() || system.n() != system.max_index()) {
    out << "n = " << system.n() << '\n';
  }
  for (const auto& eq : system.equations()) out << to_string(eq) << '\n';
  return out.str();
}

EnSystem parse_system(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> header_n;
  bool seen_equation = false;
  std::set<Equation> eqs;
  VarIndex top = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::smatch m;
    if (std::regex_match(line, m, header_line())) {
      if (header_n || seen_equation) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": the `n = N` header must come first and only once");
      }
      header_n = to_index(m[1].str(), line_no);
      continue;
    }
    if (std::regex_match(line, m, unit_line())) {
      const auto k = to_index(m[1].str(), line_no);
      eqs.insert(Equation::unit(k));
      top = std::max(top, k);
    } else if (std::regex_match(line, m, binary_line())) {
      const auto i = to_index(m[1].str(), line_no);
      const auto j = to_index(m[3].str(), line_no);
      const auto k = to_index(m[4].str(), line_no);
      eqs.insert(m[2].str() == "+" ? Equation::sum(i, j, k) : Equation::prod(i, j, k));
      top = std::max({top, i, j, k});
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": not an E_n equation: '" + line +
                       "'");
    }
    seen_equation = true;
  }

  if (!header_n && eqs.empty()) throw ParseError("empty system without an `n = N` header");
  const std::size_t n = header_n.value_or(top);
  if (n < top) {
    throw ParseError("header n = " + std::to_string(n) + " is below the largest index " +
                     std::to_string(top));
  }
  return EnSystem(n, std::move(eqs));
}

}  // namespace ensearch
