#include "cheblab/sigma_rule.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cheblab/error.hpp"
#include "cheblab/primes.hpp"
#include "cheblab/random.hpp"

namespace cheblab {

std::vector<Place> places_up_to(std::uint64_t horizon, PlaceSource source) {
  std::vector<Place> out;
  if (source == PlaceSource::RealPrimes) {
    const auto primes = primes_up_to(horizon);
    out.reserve(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) out.push_back({primes[i], i});
  } else {
    out.reserve(horizon);
    for (std::uint64_t i = 0; i < horizon; ++i) out.push_back({i, i});
  }
  return out;
}

QuotientFrobenius QuotientFrobenius::explicit_sequence(std::vector<std::size_t> cosets) {
  QuotientFrobenius f;
  f.explicit_ = std::move(cosets);
  return f;
}

QuotientFrobenius QuotientFrobenius::seeded(std::uint64_t seed, std::size_t quotient_order) {
  if (quotient_order == 0) throw Error(ErrorCode::InvalidArgument, "empty quotient");
  QuotientFrobenius f;
  f.seed_ = seed;
  f.quotient_order_ = quotient_order;
  return f;
}

std::size_t QuotientFrobenius::at(std::uint64_t ordinal) const {
  if (seed_) {
    return static_cast<std::size_t>(
        counter_draw(*seed_, kQuotientFrobeniusStream, ordinal, quotient_order_));
  }
  if (ordinal >= explicit_.size()) {
    throw Error(ErrorCode::HorizonExceedsPopulation,
                "Frobenius sequence of L has only " + std::to_string(explicit_.size()) + " places");
  }
  return explicit_[ordinal];
}

std::optional<std::size_t> QuotientFrobenius::length() const {
  if (seed_) return std::nullopt;
  return explicit_.size();
}

namespace {

std::vector<ClassId> normalize_classes(const PermGroup& group, std::vector<ClassId> ids) {
  for (ClassId c : ids) {
    if (c >= group.class_count()) {
      throw Error(ErrorCode::UnknownClassId, "class id " + std::to_string(c) + " out of range");
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::string class_list(const PermGroup& group, const std::vector<ClassId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += "; ";
    out += "#" + std::to_string(ids[i]) + "[" + group.classes()[ids[i]].type.to_string() + "]";
  }
  return out + "}";
}

ClassMask forbid_mask(const PermGroup& group, const std::vector<ClassId>& forbidden) {
  ClassMask mask(group.class_count(), true);
  for (ClassId c : forbidden) mask[c] = false;
  return mask;
}

}  // namespace

SigmaRule::SigmaRule(GroupPtr group, Rule rule, std::string description)
    : group_(std::move(group)), rule_(std::move(rule)), description_(std::move(description)) {
  if (!group_) throw Error(ErrorCode::InvalidArgument, "sigma rule needs a group");
}

SigmaRule SigmaRule::allow_all(GroupPtr group) {
  return SigmaRule(std::move(group), AllowAll{}, "allow all");
}

SigmaRule SigmaRule::forbid_on_progression(GroupPtr group, std::vector<ClassId> forbidden,
                                           std::uint64_t modulus,
                                           std::vector<std::uint64_t> residues) {
  if (modulus < 1) throw Error(ErrorCode::BadModulus, "modulus must be at least 1");
  for (auto r : residues) {
    if (r >= modulus) {
      throw Error(ErrorCode::BadModulus, "residue " + std::to_string(r) + " not reduced mod " +
                                             std::to_string(modulus));
    }
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  auto ids = normalize_classes(*group, std::move(forbidden));
  std::ostringstream desc;
  desc << "forbid " << class_list(*group, ids) << " at places = {";
  for (std::size_t i = 0; i < residues.size(); ++i) desc << (i ? "," : "") << residues[i];
  desc << "} mod " << modulus;
  auto text = desc.str();
  return SigmaRule(std::move(group), ForbidOnProgression{std::move(ids), modulus, std::move(residues)},
                   std::move(text));
}

SigmaRule SigmaRule::forbid_everywhere(GroupPtr group, std::vector<ClassId> forbidden) {
  return forbid_on_progression(std::move(group), std::move(forbidden), 1, {0});
}

SigmaRule SigmaRule::forbid_on_indices(GroupPtr group, std::vector<ClassId> forbidden,
                                       std::vector<std::uint64_t> ordinals) {
  std::sort(ordinals.begin(), ordinals.end());
  ordinals.erase(std::unique(ordinals.begin(), ordinals.end()), ordinals.end());
  auto ids = normalize_classes(*group, std::move(forbidden));
  std::string desc = "forbid " + class_list(*group, ids) + " at " +
                     std::to_string(ordinals.size()) + " listed places";
  auto lookup = [set = ordinals](std::uint64_t i) {
    return std::binary_search(set.begin(), set.end(), i);
  };
  return SigmaRule(std::move(group), ForbidOnIndexSet{std::move(ids), lookup, std::move(ordinals)},
                   std::move(desc));
}

SigmaRule SigmaRule::forbid_on_index_set(GroupPtr group, std::vector<ClassId> forbidden,
                                         std::function<bool(std::uint64_t)> contains,
                                         std::string description) {
  if (!contains) throw Error(ErrorCode::InvalidArgument, "index predicate is empty");
  auto ids = normalize_classes(*group, std::move(forbidden));
  std::string desc = "forbid " + class_list(*group, ids) + " at " + description;
  return SigmaRule(std::move(group), ForbidOnIndexSet{std::move(ids), std::move(contains), {}},
                   std::move(desc));
}

ClassMask SigmaRule::allowed_classes(const Place& place) const {
  const std::size_t k = group_->class_count();
  return std::visit(
      [&](const auto& r) -> ClassMask {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, AllowAll>) {
          return ClassMask(k, true);
        } else if constexpr (std::is_same_v<T, ForbidOnProgression>) {
          const std::uint64_t residue = place.key % r.modulus;
          if (std::binary_search(r.residues.begin(), r.residues.end(), residue)) {
            return forbid_mask(*group_, r.forbidden);
          }
          return ClassMask(k, true);
        } else if constexpr (std::is_same_v<T, ForbidOnIndexSet>) {
          if (r.contains(place.ordinal)) return forbid_mask(*group_, r.forbidden);
          return ClassMask(k, true);
        } else {
          return r.allowed_by_coset.at(r.frobenius.at(place.ordinal));
        }
      },
      rule_);
}

bool SigmaRule::is_restricted(const Place& place) const {
  const auto mask = allowed_classes(place);
  return std::find(mask.begin(), mask.end(), false) != mask.end();
}

std::optional<Rational> SigmaRule::exact_restricted_density(PlaceSource source) const {
  if (std::holds_alternative<AllowAll>(rule_)) return Rational(0);
  const auto* ap = std::get_if<ForbidOnProgression>(&rule_);
  if (!ap) return std::nullopt;
  if (ap->forbidden.empty()) return Rational(0);
  if (source == PlaceSource::Synthetic) {
    Rational r(static_cast<unsigned long>(ap->residues.size()), static_cast<unsigned long>(ap->modulus));
    r.canonicalize();
    return r;
  }
  unsigned long units = 0;
  for (auto residue : ap->residues) {
    if (std::gcd(residue, ap->modulus) == 1) ++units;
  }
  Rational r(units, static_cast<unsigned long>(euler_phi(ap->modulus)));
  r.canonicalize();
  return r;
}

SigmaRule subfield_sigma(GroupPtr group, const NormalSubgroup& subgroup,
                         QuotientFrobenius frobenius) {
  if (!group) throw Error(ErrorCode::InvalidArgument, "sigma rule needs a group");
  if (subgroup.order() == group->order()) {
    throw Error(ErrorCode::InvalidScenario, "subfield rule needs a proper normal subgroup (H != G)");
  }
  auto quotient = std::make_shared<const QuotientGroup>(quotient_map(*group, subgroup));
  if (auto len = frobenius.length()) {
    for (std::size_t i = 0; i < *len; ++i) {
      if (frobenius.at(i) >= quotient->order) {
        throw Error(ErrorCode::InvalidScenario, "Frobenius coset id out of range");
      }
    }
  }

  const std::uint64_t group_order = group->order();
  const std::uint64_t quotient_order = quotient->order;
  std::vector<ClassMask> allowed(quotient->order, ClassMask(group->class_count(), false));
  for (std::size_t q = 0; q < quotient->order; ++q) {
    const std::uint64_t f = quotient->element_orders[q];
    for (ClassId c = 0; c < group->class_count(); ++c) {
      const std::uint64_t e = group->element_order(group->classes()[c].members.front());
      // L ⊗ K_p is (|G/H|/f) copies of the degree-f unramified extension; the
      // closure of F_p is (|G|/e) copies of the degree-e one.
      allowed[q][c] = (e % f == 0) && (group_order * f >= quotient_order * e);
    }
  }

  std::string desc = "subfield rule: H of index " + std::to_string(subgroup.index());
  if (auto s = frobenius.seed()) desc += ", L Frobenius seed " + std::to_string(*s);
  SigmaRule::Subfield rule{subgroup, std::move(quotient), std::move(frobenius), std::move(allowed)};
  return SigmaRule(std::move(group), std::move(rule), std::move(desc));
}

}  // namespace cheblab
