#pragma once

#include <cstdint>
#include <vector>

namespace cheblab {

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Sieve of Eratosthenes, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Euler phi by trial division.
std::uint64_t euler_phi(std::uint64_t n);

/// Smallest-prime-factor table for 0..bound (entries 0 and 1 are 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t bound);

}  // namespace cheblab
