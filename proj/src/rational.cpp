#include "platmatch/rational.hpp"

#include <cctype>

namespace platmatch {

namespace {

bool parse_integer(const std::string& text, BigInt* out) {
  if (text.empty()) return false;
  std::size_t start = 0;
  if (text[0] == '-' || text[0] == '+') start = 1;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  *out = BigInt(text);
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    BigInt n;
    if (!parse_integer(text, &n)) return std::nullopt;
    return Rational(n);
  }
  BigInt num, den;
  if (!parse_integer(text.substr(0, slash), &num)) return std::nullopt;
  if (!parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
  if (den <= 0) return std::nullopt;
  return Rational(num, den);
}

std::string rational_to_string(const Rational& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += "/";
    out += denominator(value).str();
  }
  return out;
}

double rational_to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace platmatch
