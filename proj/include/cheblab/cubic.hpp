#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "cheblab/permutation.hpp"
#include "cheblab/rational.hpp"

namespace cheblab {

/// f = x^3 + a x + b.
struct CubicPoly {
  std::int64_t a = 0;
  std::int64_t b = 0;
  auto operator<=>(const CubicPoly&) const = default;
};

enum class CubicGaloisType { S3, C3 };
const char* to_string(CubicGaloisType type);

/// -4a^3 - 27b^2, exact.
BigInt cubic_discriminant(const CubicPoly& f);

/// Factor degrees of f mod p. Throws NotPrime, or RamifiedPrime if p | disc(f).
SplittingType frobenius_splitting_type(const CubicPoly& f, std::uint64_t p);

/// True iff f has a rational (hence integer) root; exact.
bool has_integer_root(const CubicPoly& f);

/// Divides out every k with k^2 | a and k^3 | b, giving the generator of
/// theta / k. Requires b != 0.
CubicPoly reduced_generator(const CubicPoly& f);

/// C3 iff disc(f) is a perfect square. Throws Reducible.
CubicGaloisType cubic_galois_type(const CubicPoly& f);

/// Integral binary cubic form a x^3 + b x^2 y + c x y^2 + d y^3. Under the
/// Delone-Faddeev correspondence a form whose ring is maximal everywhere
/// describes a cubic field, with disc(form) = disc(field).
struct BinaryCubicForm {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  std::array<std::int64_t, 4> coefficients() const { return {a, b, c, d}; }
  auto operator<=>(const BinaryCubicForm&) const = default;

  /// b^2c^2 - 27a^2d^2 + 18abcd - 4ac^3 - 4b^3d. Throws Overflow past 127 bits.
  __int128 discriminant() const;
  /// x^3 + A x + B with A = 9ac - 3b^2, B = 2b^3 - 9abc + 27a^2d: the minimal
  /// polynomial of 3a*theta + b for a root theta of f(x, 1). Its
  /// discriminant is 729 a^2 disc(form).
  CubicPoly depressed() const;
  bool is_irreducible() const;
  /// The associated cubic ring is maximal at p. Throws NotPrime.
  bool is_maximal_at(std::uint64_t p) const;
  /// Splitting of p in the cubic ring. Throws RamifiedPrime if p | disc.
  SplittingType splitting_type(std::uint64_t p) const;
  std::string to_string() const;
};

}  // namespace cheblab
