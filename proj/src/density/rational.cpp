#include "cheblab/rational.hpp"

#include <cctype>

#include "cheblab/error.hpp"

namespace cheblab {

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    try {
      r = Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    }
    if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  BigInt digits = 0;
  long exponent = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (in_fraction) --exponent;
      any_digit = true;
    } else if (ch == '.' && !in_fraction) {
      in_fraction = true;
    } else if (ch == 'e' || ch == 'E') {
      try {
        std::size_t used = 0;
        exponent += std::stol(s.substr(i + 1), &used);
        if (i + 1 + used != s.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
      }
      break;
    } else {
      throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
    }
  }
  if (!any_digit) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(digits, scale) : Rational(digits * scale, 1);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Rational rational_pow(const Rational& base, std::uint64_t exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace cheblab
