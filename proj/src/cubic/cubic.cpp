#include "cheblab/cubic.hpp"

#include <cstdlib>

#include "cheblab/error.hpp"
#include "cheblab/finite_field.hpp"
#include "cheblab/primes.hpp"

namespace cheblab {

namespace {

using i128 = __int128;

constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 40;

BigInt big(std::int64_t v) { return BigInt(std::to_string(v)); }

void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw Error(ErrorCode::InvalidArgument, "prime too large for F_p arithmetic");
}

std::int64_t reduce(std::int64_t v, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  return ((v % sp) + sp) % sp;
}

// Sign of x^3 + a x + b at x.
template <class Int>
int cubic_sign(const Int& a, const Int& b, const Int& x) {
  const Int v = x * x * x + a * x + b;
  return (v > 0) - (v < 0);
}

// Zero of a monotone function on the integer interval [lo, hi].
template <class Int, class Sign>
bool monotone_zero(Int lo, Int hi, bool increasing, Sign sign) {
  while (lo <= hi) {
    const Int mid = lo + (hi - lo) / 2;
    int s = sign(mid);
    if (s == 0) return true;
    if (!increasing) s = -s;
    if (s > 0) {
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  return false;
}

template <class Int>
bool integer_root(const Int& a, const Int& b, const Int& bound, const Int& s) {
  auto sign = [&](const Int& x) { return cubic_sign<Int>(a, b, x); };
  // f' = 3x^2 + a is positive for |x| >= s + 1 and negative for |x| < s.
  return monotone_zero<Int>(-bound, -s - 1, true, sign) ||
         monotone_zero<Int>(-s, s, false, sign) ||
         monotone_zero<Int>(s + 1, bound, true, sign);
}

}  // namespace

const char* to_string(CubicGaloisType type) { return type == CubicGaloisType::C3 ? "C3" : "S3"; }

BigInt cubic_discriminant(const CubicPoly& f) {
  const BigInt a = big(f.a), b = big(f.b);
  return -4 * a * a * a - 27 * b * b;
}

SplittingType frobenius_splitting_type(const CubicPoly& f, std::uint64_t p) {
  check_prime(p);
  const BigInt disc = cubic_discriminant(f);
  if (disc % BigInt(std::to_string(p)) == 0) {
    throw Error(ErrorCode::RamifiedPrime, std::to_string(p) + " divides the discriminant");
  }
  const auto poly = poly_from_integers({f.b, f.a, 0, 1}, p);
  return SplittingType(distinct_degree_factorization(poly, p));
}

bool has_integer_root(const CubicPoly& f) {
  const std::uint64_t ua = f.a < 0 ? 0 - static_cast<std::uint64_t>(f.a) : static_cast<std::uint64_t>(f.a);
  const std::uint64_t ub = f.b < 0 ? 0 - static_cast<std::uint64_t>(f.b) : static_cast<std::uint64_t>(f.b);
  // Cauchy bound on the roots of a monic polynomial.
  const std::uint64_t bound = 1 + std::max(ua, ub);
  // s = floor(sqrt(floor(-a/3))), or 0 if a >= 0.
  std::uint64_t s = 0;
  if (f.a < 0) {
    BigInt t = BigInt(std::to_string(ua / 3));
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    s = r.get_ui();
  }
  if (bound < (std::uint64_t{1} << 40)) {
    return integer_root<i128>(f.a, f.b, static_cast<i128>(bound), static_cast<i128>(s));
  }
  return integer_root<BigInt>(big(f.a), big(f.b), BigInt(std::to_string(bound)),
                              BigInt(std::to_string(s)));
}

CubicPoly reduced_generator(const CubicPoly& f) {
  if (f.b == 0) throw Error(ErrorCode::Reducible, "x^3 + a x has the root 0");
  CubicPoly g = f;
  auto divisible = [&](std::int64_t k) { return g.a % (k * k) == 0 && g.b % (k * k * k) == 0; };
  for (std::int64_t k = 2; k <= 2'000'000 && k * k * k <= (g.b < 0 ? -g.b : g.b); ++k) {
    while (divisible(k)) {
      g.a /= k * k;
      g.b /= k * k * k;
    }
  }
  return g;
}

CubicGaloisType cubic_galois_type(const CubicPoly& f) {
  if (has_integer_root(f)) throw Error(ErrorCode::Reducible, "polynomial has a rational root");
  const BigInt disc = cubic_discriminant(f);
  if (disc > 0 && mpz_perfect_square_p(disc.get_mpz_t())) return CubicGaloisType::C3;
  return CubicGaloisType::S3;
}

i128 BinaryCubicForm::discriminant() const {
  constexpr std::int64_t kFast = std::int64_t{1} << 24;
  auto small = [](std::int64_t v) { return v > -kFast && v < kFast; };
  if (small(a) && small(b) && small(c) && small(d)) {
    const i128 A = a, B = b, C = c, D = d;
    return B * B * C * C - 27 * A * A * D * D + 18 * A * B * C * D - 4 * A * C * C * C - 4 * B * B * B * D;
  }
  const BigInt A = big(a), B = big(b), C = big(c), D = big(d);
  const BigInt disc = B * B * C * C - 27 * A * A * D * D + 18 * A * B * C * D - 4 * A * C * C * C - 4 * B * B * B * D;
  if (mpz_sizeinbase(disc.get_mpz_t(), 2) > 126) {
    throw Error(ErrorCode::Overflow, "form discriminant exceeds 127 bits");
  }
  const BigInt mag = abs(disc);
  const BigInt hi = mag >> 64;
  const BigInt lo = mag - (hi << 64);
  i128 v = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
  return disc < 0 ? -v : v;
}

CubicPoly BinaryCubicForm::depressed() const {
  const i128 A = 9 * static_cast<i128>(a) * c - 3 * static_cast<i128>(b) * b;
  const i128 B = 2 * static_cast<i128>(b) * b * b - 9 * static_cast<i128>(a) * b * c +
                 27 * static_cast<i128>(a) * a * d;
  constexpr i128 lim = static_cast<i128>(INT64_MAX);
  if (A > lim || A < -lim || B > lim || B < -lim) {
    throw Error(ErrorCode::Overflow, "depressed generator does not fit in 64 bits");
  }
  return {static_cast<std::int64_t>(A), static_cast<std::int64_t>(B)};
}

bool BinaryCubicForm::is_irreducible() const {
  if (a == 0) return false;  // (1:0) is a root
  return !has_integer_root(depressed());
}

bool BinaryCubicForm::is_maximal_at(std::uint64_t p) const {
  check_prime(p);
  const i128 P = static_cast<i128>(p);
  const i128 disc = discriminant();
  if (disc % (P * P) != 0) return true;
  if (reduce(a, p) == 0 && reduce(b, p) == 0 && reduce(c, p) == 0 && reduce(d, p) == 0) return false;
  // Move the multiple root mod p to (1:0); the ring is non-maximal there iff
  // the new leading coefficient vanishes mod p^2.
  if (reduce(a, p) == 0 && reduce(b, p) == 0) return static_cast<i128>(a) % (P * P) != 0;
  for (std::uint64_t r = 0; r < p; ++r) {
    const i128 x = static_cast<i128>(r);
    const i128 value = ((static_cast<i128>(a) * x + b) * x + c) * x + d;
    const i128 slope = (3 * static_cast<i128>(a) * x + 2 * b) * x + c;
    if (value % P == 0 && slope % P == 0) return value % (P * P) != 0;
  }
  return true;
}

SplittingType BinaryCubicForm::splitting_type(std::uint64_t p) const {
  check_prime(p);
  if (discriminant() % static_cast<i128>(p) == 0) {
    throw Error(ErrorCode::RamifiedPrime, std::to_string(p) + " divides the form discriminant");
  }
  if (reduce(a, p) != 0) {
    return SplittingType(distinct_degree_factorization(poly_from_integers({d, c, b, a}, p), p));
  }
  // (1:0) is a simple root; the rest is the quadratic b x^2 + c x + d.
  auto degrees = distinct_degree_factorization(poly_from_integers({d, c, b}, p), p);
  degrees.push_back(1);
  return SplittingType(std::move(degrees));
}

std::string BinaryCubicForm::to_string() const {
  return std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + " " + std::to_string(d);
}

}  // namespace cheblab
