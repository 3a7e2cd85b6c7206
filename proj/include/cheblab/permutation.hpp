#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cheblab {

using Point = std::uint32_t;

/// Cycle type of a permutation, equivalently the splitting type of an
/// unramified prime in a degree-n algebra. Parts are sorted descending.
class SplittingType {
 public:
  SplittingType() = default;
  explicit SplittingType(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int degree() const noexcept;

  /// "3", "2,1", "1,1,1".
  std::string to_string() const;
  /// Accepts "2,1", "[2,1]", "2 1" or "(2,1)".
  static SplittingType parse(std::string_view text);

  auto operator<=>(const SplittingType&) const = default;

 private:
  std::vector<int> parts_;
};

/// A bijection of {0, ..., n-1}. Composition reads right to left:
/// (p * q)(x) = p(q(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Cycle notation with 0-based points, e.g. "(0 1 2)(3 4)". "()" and the
  /// empty string are the identity.
  static Permutation parse_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  std::span<const Point> images() const noexcept { return images_; }
  Point operator()(Point x) const { return images_[x]; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  /// h * this * h^-1
  Permutation conjugate_by(const Permutation& h) const;

  bool is_identity() const noexcept;
  std::size_t orbit_count() const;
  std::uint64_t order() const;
  SplittingType cycle_type() const;
  std::string to_cycle_string() const;

  // Lexicographic on image sequences; the fixed total order used for class
  // representatives and output ordering.
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

inline SplittingType cycle_type(const Permutation& p) { return p.cycle_type(); }

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace cheblab
