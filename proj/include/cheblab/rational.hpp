#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cheblab {

using Rational = mpq_class;
using BigInt = mpz_class;

/* Parses "3/10", "0.3", "1", "1e-3" into an exact rational. Decimal input is
 * read digit by digit, so "0.3" is exactly 3/10 and not the nearest double. */
Rational parse_rational(std::string_view text);

Rational rational_pow(const Rational& base, std::uint64_t exponent);

std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace cheblab
