#include "cheblab/density.hpp"

#include <algorithm>
#include <cmath>

#include "cheblab/error.hpp"

namespace cheblab {

namespace {

void check_delta(const Rational& delta) {
  if (delta <= 0 || delta > 1) {
    throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1], got " + to_string(delta));
  }
}

Rational class_share(const PermGroup& group, ClassId c) {
  if (c >= group.class_count()) {
    throw Error(ErrorCode::UnknownClassId, "class id " + std::to_string(c) + " out of range");
  }
  Rational r(static_cast<unsigned long>(group.classes()[c].size()),
             static_cast<unsigned long>(group.order()));
  r.canonicalize();
  return r;
}

// Largest m >= 0 with base^m >= threshold, for 0 < base < 1 and 0 < threshold <= 1.
std::uint64_t largest_power_above(const Rational& base, const Rational& threshold) {
  const double estimate = std::log(to_double(threshold)) / std::log(to_double(base));
  std::uint64_t m = estimate > 0 ? static_cast<std::uint64_t>(std::floor(estimate)) : 0;
  // The double estimate is only a starting point; settle it exactly.
  while (m > 0 && rational_pow(base, m) < threshold) --m;
  while (rational_pow(base, m + 1) >= threshold) ++m;
  return m;
}

}  // namespace

Rational tuple_hit_fraction(const PermGroup& group, ClassId c, std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "tuple length m must be positive");
  const Rational miss = 1 - class_share(group, c);
  return 1 - rational_pow(miss, m);
}

Rational pigeonhole_class_bound(const PermGroup& group, const Rational& delta) {
  check_delta(delta);
  Rational kappa(static_cast<unsigned long>(group.class_count()));
  return 1 - delta / kappa;
}

IndependenceBound independence_bound(const PermGroup& group, const Rational& delta) {
  check_delta(delta);
  if (group.order() <= 1) throw Error(ErrorCode::TrivialGroup, "independence bound needs |G| > 1");
  IndependenceBound out;
  out.threshold = delta / Rational(static_cast<unsigned long>(group.class_count()));
  for (ClassId c = 0; c < group.class_count(); ++c) {
    const Rational miss = 1 - class_share(group, c);
    const std::uint64_t m = largest_power_above(miss, out.threshold);
    out.per_class.push_back(m);
    out.bound = std::max(out.bound, m);
  }
  return out;
}

Rational DensityReport::delta_na_at_horizon() const {
  if (place_count == 0) return Rational(0);
  Rational r(static_cast<unsigned long>(restricted_count), static_cast<unsigned long>(place_count));
  r.canonicalize();
  return r;
}

Rational DensityReport::density_at_horizon(ClassId c) const {
  if (place_count == 0) return Rational(0);
  Rational r(static_cast<unsigned long>(allowed_count.at(c)), static_cast<unsigned long>(place_count));
  r.canonicalize();
  return r;
}

DensityReport density_report(const SigmaRule& sigma, std::uint64_t horizon, PlaceSource source) {
  if (horizon < 2) throw Error(ErrorCode::InvalidArgument, "density horizon must be at least 2");
  const auto places = places_up_to(horizon, source);
  const std::size_t k = sigma.group().class_count();

  DensityReport report;
  report.horizon = horizon;
  report.place_count = places.size();
  report.allowed_count.assign(k, 0);
  report.upper_density.assign(k, 0.0);
  report.lower_density.assign(k, 1.0);
  report.delta_na = 1.0;
  report.delta_na_exact = sigma.exact_restricted_density(source);

  const std::size_t tail_start = places.size() / 2;
  for (std::size_t i = 0; i < places.size(); ++i) {
    const auto mask = sigma.allowed_classes(places[i]);
    bool restricted = false;
    for (ClassId c = 0; c < k; ++c) {
      if (mask[c]) {
        ++report.allowed_count[c];
      } else {
        restricted = true;
      }
    }
    if (restricted) ++report.restricted_count;

    const std::size_t seen = i + 1;
    if (seen > tail_start) {
      const double n = static_cast<double>(seen);
      report.delta_na = std::min(report.delta_na, static_cast<double>(report.restricted_count) / n);
      for (ClassId c = 0; c < k; ++c) {
        const double r = static_cast<double>(report.allowed_count[c]) / n;
        report.upper_density[c] = std::max(report.upper_density[c], r);
        report.lower_density[c] = std::min(report.lower_density[c], r);
      }
    }
  }
  if (places.empty()) {
    report.delta_na = 0.0;
    std::fill(report.lower_density.begin(), report.lower_density.end(), 0.0);
  }
  return report;
}

Rational euler_constant_term(const PermGroup& group, const std::vector<ClassId>& allowed_classes) {
  ClassMask mask(group.class_count(), false);
  for (ClassId c : allowed_classes) {
    if (c >= group.class_count()) {
      throw Error(ErrorCode::UnknownClassId, "class id " + std::to_string(c) + " out of range");
    }
    mask[c] = true;
  }
  return euler_constant_term(group, mask);
}

Rational euler_constant_term(const PermGroup& group, const ClassMask& allowed) {
  if (allowed.size() != group.class_count()) {
    throw Error(ErrorCode::UnknownClassId, "class mask does not match the group");
  }
  unsigned long hits = 0;
  for (ClassId c = 0; c < allowed.size(); ++c) {
    if (allowed[c]) hits += static_cast<unsigned long>(group.classes()[c].size());
  }
  Rational r(hits, static_cast<unsigned long>(group.order()));
  r.canonicalize();
  return r;
}

EulerPartialProduct euler_partial_product(const SigmaRule& sigma, std::uint64_t prime_bound) {
  if (prime_bound < 2) throw Error(ErrorCode::InvalidArgument, "prime bound must be at least 2");
  EulerPartialProduct out;
  out.value = 1;
  for (const auto& place : places_up_to(prime_bound, PlaceSource::RealPrimes)) {
    const auto mask = sigma.allowed_classes(place);
    EulerFactorRow row;
    row.prime = place.key;
    row.ordinal = place.ordinal;
    row.allowed_class_count = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    row.constant_term = euler_constant_term(sigma.group(), mask);
    if (row.constant_term < 1) ++out.restricted_primes;
    out.value *= row.constant_term;
    row.running_product = out.value;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace cheblab
