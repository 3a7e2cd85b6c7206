#pragma once

#include <cstdint>
#include <random>

namespace cheblab {

/// SplitMix64 finalizer. Used to derive independent stream seeds from
/// (seed, stream, counter) so that results never depend on how work is
/// partitioned across threads.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t counter) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

/// Unbiased draw from [0, n) by rejection on the top of the 64-bit range.
/// Written out instead of std::uniform_int_distribution, whose output is
/// implementation-defined and would break cross-platform reproducibility.
inline std::uint64_t bounded_draw(std::mt19937_64& engine, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x;
  do {
    x = engine();
  } while (x > limit);
  return x % n;
}

/// Stateless counterpart: the i-th draw of a counter-indexed stream.
inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                                  std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x = derive_seed(seed, stream, counter);
  while (x > limit) x = mix64(x);
  return x % n;
}

}  // namespace cheblab
