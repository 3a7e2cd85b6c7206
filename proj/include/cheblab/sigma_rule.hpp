#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cheblab/perm_group.hpp"
#include "cheblab/rational.hpp"

namespace cheblab {

/// A place of the base field. For rational primes `key` is p itself; for the
/// synthetic model it is the place index. `ordinal` is the 0-based position
/// in the place sequence (2 has ordinal 0, 3 ordinal 1, ...).
struct Place {
  std::uint64_t key = 0;
  std::uint64_t ordinal = 0;
};

enum class PlaceSource { RealPrimes, Synthetic };

/// Places up to `horizon`: primes p <= horizon, or indices 0..horizon-1.
std::vector<Place> places_up_to(std::uint64_t horizon, PlaceSource source);

using ClassMask = std::vector<bool>;

/// Frobenius of the fixed G/H-extension L, one coset id per place ordinal.
/// Either an explicit list or an unbounded counter-based uniform stream.
class QuotientFrobenius {
 public:
  static QuotientFrobenius explicit_sequence(std::vector<std::size_t> cosets);
  static QuotientFrobenius seeded(std::uint64_t seed, std::size_t quotient_order);

  std::size_t at(std::uint64_t ordinal) const;
  std::optional<std::size_t> length() const;
  std::optional<std::uint64_t> seed() const { return seed_; }

 private:
  std::vector<std::size_t> explicit_;
  std::optional<std::uint64_t> seed_;
  std::size_t quotient_order_ = 0;
};

/// Stream id under which L's Frobenius is drawn; shared with the simulator.
inline constexpr std::uint64_t kQuotientFrobeniusStream = 0x4c46524fu;

/// A family of unramified local conditions Sigma = (Sigma_p), each Sigma_p
/// given as the set of Frobenius classes it allows.
class SigmaRule {
 public:
  struct AllowAll {};
  struct ForbidOnProgression {
    std::vector<ClassId> forbidden;
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> residues;
  };
  struct ForbidOnIndexSet {
    std::vector<ClassId> forbidden;
    std::function<bool(std::uint64_t)> contains;  // by place ordinal
    std::vector<std::uint64_t> indices;           // empty for functional predicates
  };
  struct Subfield {
    NormalSubgroup subgroup;
    std::shared_ptr<const QuotientGroup> quotient;
    QuotientFrobenius frobenius;
    // allowed[q] = classes allowed where L has Frobenius q
    std::vector<ClassMask> allowed_by_coset;
  };
  using Rule = std::variant<AllowAll, ForbidOnProgression, ForbidOnIndexSet, Subfield>;

  static SigmaRule allow_all(GroupPtr group);
  /// Forbids `forbidden` at primes (or indices) congruent to a residue mod q.
  /// Throws BadModulus unless q >= 1 and every residue lies in [0, q).
  static SigmaRule forbid_on_progression(GroupPtr group, std::vector<ClassId> forbidden,
                                         std::uint64_t modulus,
                                         std::vector<std::uint64_t> residues);
  static SigmaRule forbid_everywhere(GroupPtr group, std::vector<ClassId> forbidden);
  static SigmaRule forbid_on_indices(GroupPtr group, std::vector<ClassId> forbidden,
                                     std::vector<std::uint64_t> ordinals);
  static SigmaRule forbid_on_index_set(GroupPtr group, std::vector<ClassId> forbidden,
                                       std::function<bool(std::uint64_t)> contains,
                                       std::string description);

  const PermGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const Rule& rule() const noexcept { return rule_; }
  const std::string& description() const noexcept { return description_; }

  ClassMask allowed_classes(const Place& place) const;
  /// True iff Sigma_p omits some unramified algebra at this place.
  bool is_restricted(const Place& place) const;

  /// Exact density of restricted places where one exists: the Dirichlet
  /// density |residues ∩ (Z/q)^*| / phi(q) for progression rules over primes,
  /// |residues| / q over model indices, 0 for AllowAll.
  std::optional<Rational> exact_restricted_density(PlaceSource source) const;

 private:
  friend SigmaRule subfield_sigma(GroupPtr, const NormalSubgroup&, QuotientFrobenius);
  SigmaRule(GroupPtr group, Rule rule, std::string description);

  GroupPtr group_;
  Rule rule_;
  std::string description_;
};

/// The local conditions Sigma_p = {F_p : L ⊗ K_p embeds in the Galois closure
/// of F_p}, for a G/H-extension L with the given Frobenius sequence.
/// An unramified algebra with Frobenius g admits such an embedding iff
/// ord(Frob_L) divides ord(g) and |G|/ord(g) >= [G:H]/ord(Frob_L).
/// Throws InvalidScenario when H = G.
SigmaRule subfield_sigma(GroupPtr group, const NormalSubgroup& subgroup,
                         QuotientFrobenius frobenius);

}  // namespace cheblab
