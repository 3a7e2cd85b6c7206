#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cheblab/perm_group.hpp"
#include "cheblab/rational.hpp"
#include "cheblab/sigma_rule.hpp"

namespace cheblab {

/// Largest M * T a population may hold (one element id per cell).
inline constexpr std::uint64_t kMaxPopulationCells = 500'000'000;

/// A positive-density family of extensions sharing the G/H-subextension L.
struct AccumulatingScenario {
  NormalSubgroup subgroup;     // proper
  Rational weight;             // limiting share among the first N heights
  QuotientFrobenius frobenius; // L's Frobenius, one coset per place
};

enum class MemberTag : std::uint8_t { Independent = 0, Accumulating = 1 };

/// Model G-extensions in height order: member i has height rank i + 1 and a
/// Frobenius element at each of the `horizon` model places.
class SyntheticPopulation {
 public:
  const PermGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  std::size_t size() const noexcept { return tags_.size(); }
  std::size_t horizon() const noexcept { return horizon_; }
  std::uint64_t seed() const noexcept { return seed_; }

  MemberTag tag(std::size_t member) const { return tags_.at(member); }
  std::uint64_t height_rank(std::size_t member) const { return member + 1; }
  ElementId frobenius(std::size_t member, std::size_t place) const {
    return frobenius_[member * horizon_ + place];
  }
  std::span<const ElementId> row(std::size_t member) const {
    return {frobenius_.data() + member * horizon_, horizon_};
  }

  const std::optional<AccumulatingScenario>& scenario() const noexcept { return scenario_; }
  /// Set when a scenario is present.
  const std::optional<QuotientGroup>& quotient() const noexcept { return quotient_; }
  std::size_t accumulating_count() const;

 private:
  friend SyntheticPopulation sample_population(GroupPtr, std::optional<AccumulatingScenario>,
                                               std::size_t, std::size_t, std::uint64_t, unsigned);
  GroupPtr group_;
  std::size_t horizon_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<ElementId> frobenius_;  // member-major
  std::vector<MemberTag> tags_;
  std::optional<AccumulatingScenario> scenario_;
  std::optional<QuotientGroup> quotient_;
};

/// True iff rank r (1-based) is an accumulating slot for weight w: the
/// interleaving floor(r w) > floor((r - 1) w), so exactly floor(N w) of the
/// first N ranks are accumulating.
bool is_accumulating_rank(std::uint64_t rank, const Rational& weight);

/// Independent members draw each Frobenius uniformly from G; accumulating
/// members draw uniformly from the coset preimage of L's Frobenius. Output is
/// a pure function of the arguments other than `jobs`.
/// Throws InvalidArgument (M or T = 0), InvalidScenario (H = G) or
/// ZeroWeight (w <= 0 or w >= 1).
SyntheticPopulation sample_population(GroupPtr group, std::optional<AccumulatingScenario> scenario,
                                      std::size_t members, std::size_t horizon,
                                      std::uint64_t seed, unsigned jobs = 1);

struct SurvivalRow {
  std::uint64_t cutoff = 0;  // place horizon T, or height cutoff X
  std::uint64_t survivors = 0;
  std::uint64_t total = 0;
  double proportion = 0.0;
  double exact_expectation = 0.0;
  std::uint64_t independent_survivors = 0;
  std::uint64_t independent_total = 0;
  std::uint64_t accumulating_survivors = 0;
  std::uint64_t accumulating_total = 0;
};

struct SurvivalCurve {
  std::vector<SurvivalRow> rows;
};

/// For each horizon T, the members whose Frobenius class is allowed at every
/// model place below T. Throws HorizonExceedsPopulation or InvalidArgument if
/// the rule is over a different group.
SurvivalCurve survival_curve(const SyntheticPopulation& population, const SigmaRule& sigma,
                             std::span<const std::uint64_t> horizons, unsigned jobs = 1);

/// Fixed place horizon, varying height cutoff X: survivors among ranks <= X.
SurvivalCurve survival_by_height(const SyntheticPopulation& population, const SigmaRule& sigma,
                                 std::uint64_t horizon, std::span<const std::uint64_t> cutoffs);

/// ((|G| - f)/|G|)^(m R): the chance that m independent members all avoid a
/// forbidden set of f elements at each of R restricted places.
Rational survival_probability_exact(const PermGroup& group, std::uint64_t forbidden_size,
                                    std::uint64_t restricted_places, std::uint64_t m);

struct IndependentSurvivors {
  std::uint64_t count = 0;
  std::vector<std::size_t> members;
};

/// Survivors of a scenario-free population at the horizon. Every member is
/// independent of the others by construction, so the survivors form an
/// independent family satisfying Sigma up to the horizon.
IndependentSurvivors greedy_independent_survivors(const SyntheticPopulation& population,
                                                  const SigmaRule& sigma, std::uint64_t horizon);

}  // namespace cheblab
