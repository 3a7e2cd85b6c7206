#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cheblab/permutation.hpp"

namespace cheblab {

using ElementId = std::uint32_t;
using ClassId = std::size_t;

inline constexpr std::size_t kDefaultOrderCap = 1'000'000;

/// The order cap in effect: CHEBLAB_ORDER_CAP if set to a positive integer,
/// otherwise kDefaultOrderCap.
std::size_t default_order_cap();

struct ConjugacyClass {
  Permutation representative;
  std::vector<ElementId> members;  // sorted
  SplittingType type;

  std::size_t size() const noexcept { return members.size(); }
};

/// A finite permutation group stored by its full element list.
///
/// Elements are sorted lexicographically by image sequence, so ElementId 0 is
/// always the identity and ids are stable for a given generating set. Classes
/// are computed once at construction; the object is immutable afterwards.
class PermGroup {
 public:
  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(ElementId id) const { return elements_.at(id); }
  ElementId identity_id() const noexcept { return 0; }

  std::optional<ElementId> find(const Permutation& p) const;
  ElementId id_of(const Permutation& p) const;

  ElementId multiply(ElementId lhs, ElementId rhs) const;
  ElementId inverse(ElementId id) const { return inverses_[id]; }
  std::uint64_t element_order(ElementId id) const { return element_orders_[id]; }

  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  ClassId class_of(ElementId id) const { return class_of_[id]; }

  /// Optional display name ("S3" for catalog groups).
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  friend PermGroup generate_group(const std::vector<Permutation>&, std::size_t);

  std::size_t degree_ = 0;
  std::string name_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementId, PermutationHash> index_;
  std::vector<ElementId> table_;  // order^2 entries when the group is small
  std::vector<ElementId> inverses_;
  std::vector<std::uint64_t> element_orders_;
  std::vector<ConjugacyClass> classes_;
  std::vector<ClassId> class_of_;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

/// Closure of the generators under composition. Throws DegreeMismatch or
/// OrderCapExceeded.
PermGroup generate_group(const std::vector<Permutation>& generators,
                         std::size_t order_cap = default_order_cap());

/// Sorted by size, then by smallest member in the lexicographic order.
const std::vector<ConjugacyClass>& conjugacy_classes(const PermGroup& group);

bool is_transitive(const PermGroup& group);

class NormalSubgroup {
 public:
  NormalSubgroup() = default;
  NormalSubgroup(std::vector<ElementId> elements, std::vector<ClassId> classes,
                 std::size_t group_order);

  const std::vector<ElementId>& elements() const noexcept { return elements_; }
  const std::vector<ClassId>& classes() const noexcept { return classes_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t index() const noexcept { return index_; }
  bool contains(ElementId id) const;

  bool operator==(const NormalSubgroup& other) const { return elements_ == other.elements_; }

 private:
  std::vector<ElementId> elements_;  // sorted
  std::vector<ClassId> classes_;     // sorted
  std::size_t index_ = 0;
};

/// Every normal subgroup, from {e} up to G, ordered by subgroup order and then
/// by class list. Throws OrderCapExceeded if |G| exceeds the cap.
std::vector<NormalSubgroup> normal_subgroups(const PermGroup& group,
                                             std::size_t order_cap = default_order_cap());

/// The subgroup generated by a union of classes. Throws NotNormal unless the
/// union is already closed (i.e. it is itself the normal subgroup).
NormalSubgroup subgroup_from_classes(const PermGroup& group, std::span<const ClassId> classes);

/// Validates an explicit element set as a normal subgroup; throws NotNormal.
NormalSubgroup make_normal_subgroup(const PermGroup& group, std::vector<ElementId> elements);

/// G/H as an abstract group on coset ids; coset 0 is H itself.
struct QuotientGroup {
  std::size_t order = 0;
  std::vector<std::size_t> table;         // order * order, row-major
  std::vector<std::size_t> coset_of;      // indexed by ElementId
  std::vector<ElementId> representatives; // smallest element of each coset
  std::vector<std::uint64_t> element_orders;

  std::size_t multiply(std::size_t lhs, std::size_t rhs) const { return table[lhs * order + rhs]; }
  std::size_t project(ElementId id) const { return coset_of[id]; }
};

QuotientGroup quotient_map(const PermGroup& group, const NormalSubgroup& subgroup);

struct MalleIndex {
  int a = 0;                     // min ind over non-identity elements
  std::vector<int> class_index;  // ind of each class, by ClassId
};

/// ind(g) = n - #orbits(g); throws TrivialGroup for |G| = 1.
int malle_index(const Permutation& g);
MalleIndex malle_a_invariant(const PermGroup& group);

/// Resolves a class reference: "#k" (class id k) or a cycle type such as
/// "2,1" / "[2,1]", which selects every class of that cycle type.
std::vector<ClassId> resolve_class_spec(const PermGroup& group, std::string_view spec);

}  // namespace cheblab
