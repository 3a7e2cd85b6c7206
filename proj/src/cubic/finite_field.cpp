#include "cheblab/finite_field.hpp"

#include <algorithm>

#include "cheblab/error.hpp"

namespace cheblab {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

void trim(PolyModP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyModP sub(PolyModP a, const PolyModP& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorCode::InvalidArgument, "zero has no inverse mod p");
  return mod_pow(a, p - 2, p);
}

PolyModP poly_from_integers(const std::vector<std::int64_t>& coeffs, std::uint64_t p) {
  PolyModP f(coeffs.size());
  const auto sp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    f[i] = static_cast<std::uint64_t>(((coeffs[i] % sp) + sp) % sp);
  }
  trim(f);
  return f;
}

int poly_degree(const PolyModP& f) { return static_cast<int>(f.size()) - 1; }

PolyModP poly_monic(const PolyModP& f, std::uint64_t p) {
  if (f.empty()) return f;
  const auto inv = mod_inverse(f.back(), p);
  PolyModP out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = mulmod(f[i], inv, p);
  return out;
}

PolyModP poly_mod(const PolyModP& a, const PolyModP& f, std::uint64_t p) {
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  PolyModP r = a;
  trim(r);
  const auto inv = mod_inverse(f.back(), p);
  const std::size_t n = f.size() - 1;
  while (r.size() > n) {
    const std::uint64_t coef = mulmod(r.back(), inv, p);
    const std::size_t shift = r.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i) {
      r[shift + i] = (r[shift + i] + p - mulmod(coef, f[i], p)) % p;
    }
    trim(r);
  }
  return r;
}

PolyModP poly_mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyModP prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(prod, f, p);
}

PolyModP poly_gcd(PolyModP a, PolyModP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a, p);
}

PolyModP poly_div(const PolyModP& a, const PolyModP& b, std::uint64_t p) {
  if (b.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  PolyModP r = a;
  trim(r);
  if (r.size() < b.size()) return {};
  PolyModP q(r.size() - b.size() + 1, 0);
  const auto inv = mod_inverse(b.back(), p);
  const std::size_t n = b.size() - 1;
  while (r.size() > n && !r.empty()) {
    const std::uint64_t coef = mulmod(r.back(), inv, p);
    const std::size_t shift = r.size() - 1 - n;
    q[shift] = coef;
    for (std::size_t i = 0; i <= n; ++i) {
      r[shift + i] = (r[shift + i] + p - mulmod(coef, b[i], p)) % p;
    }
    trim(r);
  }
  trim(q);
  return q;
}

std::vector<int> distinct_degree_factorization(const PolyModP& input, std::uint64_t p) {
  std::vector<int> degrees;
  PolyModP f = poly_monic(input, p);
  if (poly_degree(f) <= 0) return degrees;
  const PolyModP x{0, 1};
  PolyModP h = poly_mod(x, f, p);
  for (int d = 1; 2 * d <= poly_degree(f); ++d) {
    // h <- h^p mod f, so h = x^{p^d}
    PolyModP power{1};
    PolyModP base = h;
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) power = poly_mulmod(power, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    h = power;
    const PolyModP g = poly_gcd(f, sub(h, x, p), p);
    if (poly_degree(g) > 0) {
      for (int k = 0; k < poly_degree(g) / d; ++k) degrees.push_back(d);
      f = poly_div(f, g, p);
      h = poly_mod(h, f, p);
    }
  }
  if (poly_degree(f) > 0) degrees.push_back(poly_degree(f));
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  return degrees;
}

}  // namespace cheblab
