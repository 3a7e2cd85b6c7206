#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cheblab/perm_group.hpp"
#include "cheblab/rational.hpp"
#include "cheblab/sigma_rule.hpp"

namespace cheblab {

/// 1 - (1 - |c|/|G|)^m: the share of m-tuples in G^m with at least one entry
/// in the class c. Throws InvalidArgument for m = 0.
Rational tuple_hit_fraction(const PermGroup& group, ClassId c, std::uint64_t m);

/// 1 - delta/kappa(G). Some class c must have upper density of A_c at most
/// this value. Throws DeltaOutOfRange unless 0 < delta <= 1.
Rational pigeonhole_class_bound(const PermGroup& group, const Rational& delta);

struct IndependenceBound {
  std::uint64_t bound = 0;              // over all classes (the worst one)
  std::vector<std::uint64_t> per_class; // by ClassId
  Rational threshold;                   // delta / kappa(G)
};

/// Largest m for which some class still satisfies (1 - |c|/|G|)^m >=
/// delta/kappa(G); no independent family of size m+1 can satisfy a Sigma with
/// nonadmissible density >= delta. Nonincreasing in delta.
/// Throws DeltaOutOfRange or TrivialGroup.
IndependenceBound independence_bound(const PermGroup& group, const Rational& delta);

/// Finite-horizon density estimates for a Sigma rule.
///
/// Running ratios r(k) = (count among the first k places) / k are tracked for
/// the restricted set and for each A_c. The liminf/limsup proxies are the
/// minimum/maximum of r(k) over the tail k > n/2, where n is the number of
/// places up to the horizon.
struct DensityReport {
  std::uint64_t horizon = 0;
  std::size_t place_count = 0;

  double delta_na = 0.0;                     // tail minimum (liminf proxy)
  std::optional<Rational> delta_na_exact;    // Dirichlet value for AP rules

  std::vector<double> upper_density;         // delta^+(A_c), tail maximum
  std::vector<double> lower_density;         // delta^-(A_c), tail minimum

  // Exact counts over all places up to the horizon.
  std::uint64_t restricted_count = 0;
  std::vector<std::uint64_t> allowed_count;  // |A_c ∩ places|, by ClassId

  Rational delta_na_at_horizon() const;
  Rational density_at_horizon(ClassId c) const;
};

/// Throws InvalidArgument for horizon < 2.
DensityReport density_report(const SigmaRule& sigma, std::uint64_t horizon, PlaceSource source);

/// (sum of |c| over allowed classes) / |G|: the constant term of the local
/// Euler factor, since each of the |G| unramified homomorphisms is counted
/// once. Throws UnknownClassId.
Rational euler_constant_term(const PermGroup& group, const std::vector<ClassId>& allowed_classes);
Rational euler_constant_term(const PermGroup& group, const ClassMask& allowed);

struct EulerFactorRow {
  std::uint64_t prime = 0;
  std::uint64_t ordinal = 0;
  std::size_t allowed_class_count = 0;
  Rational constant_term;
  Rational running_product;
};

struct EulerPartialProduct {
  Rational value;
  std::vector<EulerFactorRow> rows;
  std::size_t restricted_primes = 0;
};

/// Product over primes p <= prime_bound of the Euler-factor constant terms.
/// Throws InvalidArgument for prime_bound < 2.
EulerPartialProduct euler_partial_product(const SigmaRule& sigma, std::uint64_t prime_bound);

}  // namespace cheblab
