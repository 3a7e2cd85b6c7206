#pragma once

#include <cstdint>
#include <vector>

namespace cheblab {

/// Dense polynomial over F_p, coefficients low degree first, no trailing zeros.
using PolyModP = std::vector<std::uint64_t>;

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);  // p prime, a != 0 mod p

/// Reduces signed integer coefficients (low degree first) into F_p.
PolyModP poly_from_integers(const std::vector<std::int64_t>& coeffs, std::uint64_t p);

int poly_degree(const PolyModP& f);  // -1 for the zero polynomial
PolyModP poly_monic(const PolyModP& f, std::uint64_t p);
PolyModP poly_mod(const PolyModP& a, const PolyModP& f, std::uint64_t p);
PolyModP poly_mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& f, std::uint64_t p);
PolyModP poly_gcd(PolyModP a, PolyModP b, std::uint64_t p);  // monic
PolyModP poly_div(const PolyModP& a, const PolyModP& b, std::uint64_t p);  // exact quotient

/// Degrees of the irreducible factors of a squarefree polynomial, sorted
/// descending, by distinct-degree factorization: the product of the factors of
/// degree d is gcd(x^{p^d} - x, f). Degree 0 input gives an empty list.
std::vector<int> distinct_degree_factorization(const PolyModP& f, std::uint64_t p);

}  // namespace cheblab
