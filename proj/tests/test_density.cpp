#include <random>

#include "cheblab/catalog.hpp"
#include "cheblab/density.hpp"
#include "cheblab/error.hpp"
#include "cheblab/primes.hpp"
#include "cheblab/random.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cheblab;

namespace {

Rational q(const char* text) { return parse_rational(text); }

std::vector<bool> class_indicator(const PermGroup& g, ClassId c) {
  std::vector<bool> in(g.order(), false);
  for (ElementId e = 0; e < g.order(); ++e) in[e] = g.class_of(e) == c;
  return in;
}

Rational brute_hit_fraction(const PermGroup& g, ClassId c, std::uint64_t m) {
  const auto hits = oracle::count_hitting_tuples(g.order(), class_indicator(g, c), m);
  BigInt total = 1;
  for (std::uint64_t i = 0; i < m; ++i) total *= static_cast<unsigned long>(g.order());
  Rational r(BigInt(static_cast<unsigned long>(hits)), total);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(q("0.3") == Rational(3, 10));
  CHECK(q("3/10") == Rational(3, 10));
  CHECK(q("1") == 1);
  CHECK(q("1e-3") == Rational(1, 1000));
  CHECK(q("-2.50") == Rational(-5, 2));
  CHECK_THROWS_AS(q("abc"), Error);
  CHECK_THROWS_AS(q("1/0"), Error);
  CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("primes") {
  CHECK(primes_up_to(100).size() == 25);
  CHECK(primes_up_to(1).empty());
  CHECK(is_prime(1000003));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK(euler_phi(4) == 2);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(36) == 12);
  const auto ps = primes_up_to(5000);
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    bool brute = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && brute; ++d) brute = n % d != 0;
    CHECK(is_prime(n) == brute);
    CHECK(std::binary_search(ps.begin(), ps.end(), n) == brute);
  }
}

TEST_CASE("tuple_hit_fraction examples") {
  const auto s3 = catalog_group("S3");
  CHECK(tuple_hit_fraction(*s3, 2, 2) == Rational(3, 4));
  CHECK(oracle::count_hitting_tuples(6, class_indicator(*s3, 2), 2) == 27);
  CHECK(tuple_hit_fraction(*s3, 0, 3) == Rational(91, 216));
  CHECK(oracle::count_hitting_tuples(6, class_indicator(*s3, 0), 3) == 91);
  CHECK(tuple_hit_fraction(*s3, 1, 1) == Rational(1, 3));
  CHECK_THROWS_AS(tuple_hit_fraction(*s3, 1, 0), Error);
  CHECK_THROWS_AS(tuple_hit_fraction(*s3, 7, 1), Error);
}

TEST_CASE("tuple_hit_fraction matches enumeration on small catalog cases") {
  // The full |G|^m <= 1e7 sweep lives in the acceptance binary.
  for (const char* name : {"C2", "C3", "S3", "D4", "C3wrC2"}) {
    const auto g = catalog_group(name);
    for (ClassId c = 0; c < g->class_count(); ++c) {
      std::uint64_t power = g->order();
      for (std::uint64_t m = 1; power <= 20000; ++m, power *= g->order()) {
        CAPTURE(name);
        CAPTURE(c);
        CAPTURE(m);
        CHECK(tuple_hit_fraction(*g, c, m) == brute_hit_fraction(*g, c, m));
      }
    }
  }
}

TEST_CASE("property: tuple_hit_fraction increases to 1 at the geometric rate") {
  for (const auto& entry : builtin_catalog()) {
    const auto g = build_group(entry);
    for (ClassId c = 0; c < g->class_count(); ++c) {
      Rational share(static_cast<unsigned long>(g->classes()[c].size()),
                     static_cast<unsigned long>(g->order()));
      share.canonicalize();
      for (std::uint64_t m = 1; m < 40; ++m) {
        const auto now = tuple_hit_fraction(*g, c, m);
        const auto next = tuple_hit_fraction(*g, c, m + 1);
        CHECK(next > now);
        CHECK(next < 1);
        CHECK((1 - next) == (1 - now) * (1 - share));
      }
    }
  }
}

TEST_CASE("pigeonhole bound") {
  CHECK(pigeonhole_class_bound(*catalog_group("S3"), q("0.3")) == Rational(9, 10));
  CHECK(pigeonhole_class_bound(*catalog_group("S4"), q("1/2")) == Rational(9, 10));
  const auto trivial = std::make_shared<const PermGroup>(generate_group({Permutation::identity(2)}));
  CHECK(pigeonhole_class_bound(*trivial, 1) == 0);
  CHECK_THROWS_AS(pigeonhole_class_bound(*trivial, 0), Error);
  CHECK_THROWS_AS(pigeonhole_class_bound(*trivial, q("1.5")), Error);
}

TEST_CASE("independence bound") {
  const auto s3 = catalog_group("S3");
  const auto b = independence_bound(*s3, q("0.3"));
  CHECK(b.bound == 12);
  CHECK(b.per_class[0] == 12);
  CHECK(b.threshold == Rational(1, 10));
  CHECK(rational_pow(Rational(5, 6), 12) >= Rational(1, 10));
  CHECK(rational_pow(Rational(5, 6), 13) < Rational(1, 10));
  CHECK(independence_bound(*catalog_group("C2"), 1).bound == 1);
  CHECK(independence_bound(*s3, q("1/1000")).bound >= independence_bound(*s3, q("1/10")).bound);
  CHECK_THROWS_AS(independence_bound(*s3, 0), Error);
  const auto trivial = generate_group({Permutation::identity(2)});
  try {
    independence_bound(trivial, 1);
    FAIL("expected TrivialGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrivialGroup);
  }
}

TEST_CASE("property: no class accommodates bound + 1, and the bound is monotone") {
  std::mt19937_64 rng(7);
  for (const auto& entry : builtin_catalog()) {
    const auto g = build_group(entry);
    std::uint64_t previous = 0;
    // Decreasing list of random deltas in (0, 1].
    std::vector<Rational> deltas;
    for (int i = 0; i < 12; ++i) {
      Rational d(static_cast<unsigned long>(1 + rng() % 1000), 1000ul);
      d.canonicalize();
      deltas.push_back(d);
    }
    std::sort(deltas.begin(), deltas.end(), std::greater<>());
    for (const auto& delta : deltas) {
      const auto b = independence_bound(*g, delta);
      const auto ph = pigeonhole_class_bound(*g, delta);
      for (ClassId c = 0; c < g->class_count(); ++c) {
        CHECK(tuple_hit_fraction(*g, c, b.bound + 1) > ph);
        // The per-class value is the exact crossover.
        if (b.per_class[c] > 0) CHECK(tuple_hit_fraction(*g, c, b.per_class[c]) <= ph);
      }
      CHECK(b.bound >= previous);
      previous = b.bound;
    }
  }
}

TEST_CASE("density report examples") {
  const auto s3 = catalog_group("S3");
  const auto ap = SigmaRule::forbid_on_progression(s3, {1}, 4, {1});
  const auto r = density_report(ap, 100000, PlaceSource::RealPrimes);
  REQUIRE(r.delta_na_exact.has_value());
  CHECK(*r.delta_na_exact == Rational(1, 2));
  CHECK(r.delta_na == doctest::Approx(0.5).epsilon(0.02));

  const auto all = density_report(SigmaRule::allow_all(s3), 1000, PlaceSource::RealPrimes);
  CHECK(all.delta_na == 0.0);
  for (double u : all.upper_density) CHECK(u == 1.0);

  const auto ns = normal_subgroups(*s3);
  const auto sub = subfield_sigma(s3, ns[1], QuotientFrobenius::seeded(0, 2));
  const auto rs = density_report(sub, 10000, PlaceSource::Synthetic);
  CHECK(std::abs(rs.delta_na - 0.5) < 0.05);

  CHECK_THROWS_AS(density_report(ap, 1, PlaceSource::RealPrimes), Error);
  CHECK_THROWS_AS(SigmaRule::forbid_on_progression(s3, {1}, 0, {}), Error);
  CHECK_THROWS_AS(SigmaRule::forbid_on_progression(s3, {1}, 4, {4}), Error);
  CHECK(*SigmaRule::forbid_on_progression(s3, {1}, 4, {1}).exact_restricted_density(PlaceSource::Synthetic) ==
        Rational(1, 4));
  CHECK(*SigmaRule::forbid_on_progression(s3, {1}, 6, {0, 1, 2, 5}).exact_restricted_density(
            PlaceSource::RealPrimes) == 1);
}

TEST_CASE("subfield rule on S3 / A3") {
  const auto s3 = catalog_group("S3");
  const auto a3 = normal_subgroups(*s3)[1];
  const auto sigma = subfield_sigma(s3, a3, QuotientFrobenius::explicit_sequence({1, 0}));
  // Non-split place: L's Frobenius has order 2, only transpositions embed.
  CHECK(sigma.allowed_classes({0, 0}) == ClassMask{false, false, true});
  // Split place: every unramified algebra contains L ⊗ K_p = K_p^2.
  CHECK(sigma.allowed_classes({1, 1}) == ClassMask{true, true, true});
  CHECK_THROWS_AS(sigma.allowed_classes({2, 2}), Error);
  CHECK_THROWS_AS(subfield_sigma(s3, normal_subgroups(*s3)[2], QuotientFrobenius::seeded(0, 1)), Error);
}

TEST_CASE("property: the lemma chain holds on the horizon's place set") {
  std::mt19937_64 rng(11);
  for (const char* name : {"S3", "S4", "D4", "C3wrC2"}) {
    const auto g = catalog_group(name);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<ClassId> forbidden;
      for (ClassId c = 0; c < g->class_count(); ++c) {
        if (rng() % 3 == 0) forbidden.push_back(c);
      }
      const std::uint64_t modulus = 1 + rng() % 12;
      std::vector<std::uint64_t> residues;
      for (std::uint64_t r = 0; r < modulus; ++r) {
        if (rng() % 2) residues.push_back(r);
      }
      const auto sigma = SigmaRule::forbid_on_progression(g, forbidden, modulus, residues);
      for (auto source : {PlaceSource::RealPrimes, PlaceSource::Synthetic}) {
        const auto r = density_report(sigma, 2 + rng() % 3000, source);
        CHECK(r.delta_na >= 0.0);
        CHECK(r.delta_na <= 1.0);
        // Pointwise: a restricted place misses some class.
        Rational missed = 0;
        double missed_lower = 0.0;
        for (ClassId c = 0; c < g->class_count(); ++c) {
          missed += 1 - r.density_at_horizon(c);
          missed_lower += 1.0 - r.lower_density[c];
          CHECK(r.upper_density[c] >= r.lower_density[c]);
          CHECK(r.upper_density[c] <= 1.0);
        }
        CHECK(missed >= r.delta_na_at_horizon());
        CHECK(missed_lower >= r.delta_na - 1e-12);
      }
    }
  }
}

TEST_CASE("euler constant terms") {
  const auto s3 = catalog_group("S3");
  CHECK(euler_constant_term(*s3, std::vector<ClassId>{0, 1, 2}) == 1);
  CHECK(euler_constant_term(*s3, std::vector<ClassId>{0, 2}) == Rational(2, 3));
  CHECK(euler_constant_term(*s3, std::vector<ClassId>{}) == 0);
  CHECK_THROWS_AS(euler_constant_term(*s3, std::vector<ClassId>{5}), Error);
}

TEST_CASE("euler partial products") {
  const auto s3 = catalog_group("S3");
  CHECK(euler_partial_product(SigmaRule::allow_all(s3), 1000).value == 1);
  const auto everywhere = euler_partial_product(SigmaRule::forbid_everywhere(s3, {1}), 100);
  CHECK(everywhere.value == rational_pow(Rational(2, 3), 25));
  CHECK(everywhere.rows.size() == 25);
  const auto ap = euler_partial_product(SigmaRule::forbid_on_progression(s3, {1}, 4, {1}), 30);
  CHECK(ap.value == rational_pow(Rational(2, 3), 4));
  CHECK(ap.restricted_primes == 4);
  CHECK_THROWS_AS(euler_partial_product(SigmaRule::allow_all(s3), 1), Error);

  // Monotone, strictly decreasing exactly where a restricted prime enters.
  Rational previous = 1;
  for (const auto& row : euler_partial_product(SigmaRule::forbid_on_progression(s3, {1}, 3, {2}), 500).rows) {
    if (row.constant_term < 1) {
      CHECK(row.running_product < previous);
    } else {
      CHECK(row.running_product == previous);
    }
    previous = row.running_product;
  }
}

TEST_CASE("counter-based draws") {
  std::mt19937_64 a(derive_seed(1, 2, 3)), b(derive_seed(1, 2, 3)), c(derive_seed(1, 2, 4));
  CHECK(a() == b());
  CHECK(a() != c());
  std::vector<int> counts(6, 0);
  for (std::uint64_t i = 0; i < 60000; ++i) ++counts[counter_draw(5, 9, i, 6)];
  for (int n : counts) CHECK(std::abs(n - 10000) < 4 * 92);
}
