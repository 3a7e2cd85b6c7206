#include "cheblab/perm_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "cheblab/error.hpp"

namespace cheblab {

namespace {

constexpr std::size_t kTableLimit = 1024;

}  // namespace

std::size_t default_order_cap() {
  if (const char* env = std::getenv("CHEBLAB_ORDER_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultOrderCap;
}

std::optional<ElementId> PermGroup::find(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId PermGroup::id_of(const Permutation& p) const {
  auto id = find(p);
  if (!id) throw Error(ErrorCode::InvalidArgument, p.to_cycle_string() + " is not in the group");
  return *id;
}

ElementId PermGroup::multiply(ElementId lhs, ElementId rhs) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(lhs) * order() + rhs];
  return index_.at(elements_[lhs] * elements_[rhs]);
}

PermGroup generate_group(const std::vector<Permutation>& generators, std::size_t order_cap) {
  if (order_cap < 1) throw Error(ErrorCode::InvalidArgument, "order cap must be at least 1");
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "no generators given");
  const std::size_t degree = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw Error(ErrorCode::DegreeMismatch, "generators act on different numbers of points");
    }
  }

  PermGroup group;
  group.degree_ = degree;
  group.generators_ = generators;

  std::unordered_map<Permutation, ElementId, PermutationHash> seen;
  std::vector<Permutation> found{Permutation::identity(degree)};
  seen.emplace(found.front(), 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& g : generators) {
      Permutation next = g * found[i];
      if (seen.contains(next)) continue;
      if (found.size() >= order_cap) {
        throw Error(ErrorCode::OrderCapExceeded,
                    "group order exceeds cap " + std::to_string(order_cap));
      }
      seen.emplace(next, static_cast<ElementId>(found.size()));
      found.push_back(std::move(next));
    }
  }

  std::sort(found.begin(), found.end());
  group.elements_ = std::move(found);
  group.index_.reserve(group.elements_.size());
  for (std::size_t i = 0; i < group.elements_.size(); ++i) {
    group.index_.emplace(group.elements_[i], static_cast<ElementId>(i));
  }

  const std::size_t n = group.order();
  if (n <= kTableLimit) {
    group.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        group.table_[i * n + j] = group.index_.at(group.elements_[i] * group.elements_[j]);
      }
    }
  }
  group.inverses_.resize(n);
  group.element_orders_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    group.inverses_[i] = group.index_.at(group.elements_[i].inverse());
    group.element_orders_[i] = group.elements_[i].order();
  }

  // Conjugation orbits under the generators are the conjugacy classes.
  constexpr ClassId kUnassigned = static_cast<ClassId>(-1);
  group.class_of_.assign(n, kUnassigned);
  std::vector<ConjugacyClass> classes;
  for (std::size_t start = 0; start < n; ++start) {
    if (group.class_of_[start] != kUnassigned) continue;
    const ClassId cid = classes.size();
    std::vector<ElementId> members{static_cast<ElementId>(start)};
    group.class_of_[start] = cid;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto& g : generators) {
        const ElementId next = group.index_.at(group.elements_[members[k]].conjugate_by(g));
        if (group.class_of_[next] == kUnassigned) {
          group.class_of_[next] = cid;
          members.push_back(next);
        }
      }
    }
    std::sort(members.begin(), members.end());
    ConjugacyClass cls;
    cls.representative = group.elements_[members.front()];
    cls.type = cls.representative.cycle_type();
    cls.members = std::move(members);
    classes.push_back(std::move(cls));
  }
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members.front() < b.members.front();
  });
  for (ClassId c = 0; c < classes.size(); ++c) {
    for (ElementId e : classes[c].members) group.class_of_[e] = c;
  }
  group.classes_ = std::move(classes);
  return group;
}

const std::vector<ConjugacyClass>& conjugacy_classes(const PermGroup& group) {
  return group.classes();
}

bool is_transitive(const PermGroup& group) {
  const std::size_t n = group.degree();
  std::vector<bool> reached(n, false);
  std::vector<Point> queue{0};
  reached[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : group.generators()) {
      const Point y = g(queue[i]);
      if (!reached[y]) {
        reached[y] = true;
        queue.push_back(y);
      }
    }
  }
  return queue.size() == n;
}

NormalSubgroup::NormalSubgroup(std::vector<ElementId> elements, std::vector<ClassId> classes,
                               std::size_t group_order)
    : elements_(std::move(elements)), classes_(std::move(classes)) {
  std::sort(elements_.begin(), elements_.end());
  std::sort(classes_.begin(), classes_.end());
  index_ = elements_.empty() ? 0 : group_order / elements_.size();
}

bool NormalSubgroup::contains(ElementId id) const {
  return std::binary_search(elements_.begin(), elements_.end(), id);
}

namespace {

// Subgroup generated by the given elements, as a membership mask.
std::vector<bool> generated_subgroup(const PermGroup& group, const std::vector<ElementId>& gens) {
  std::vector<bool> in(group.order(), false);
  std::vector<ElementId> members{group.identity_id()};
  in[group.identity_id()] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (ElementId g : gens) {
      const ElementId next = group.multiply(members[i], g);
      if (!in[next]) {
        in[next] = true;
        members.push_back(next);
      }
    }
  }
  return in;
}

std::vector<bool> class_mask_of(const PermGroup& group, const std::vector<bool>& members) {
  std::vector<bool> mask(group.class_count(), false);
  for (std::size_t e = 0; e < members.size(); ++e) {
    if (members[e]) mask[group.class_of(static_cast<ElementId>(e))] = true;
  }
  return mask;
}

NormalSubgroup subgroup_from_mask(const PermGroup& group, const std::vector<bool>& mask) {
  std::vector<ElementId> elements;
  std::vector<ClassId> class_ids;
  for (ClassId c = 0; c < mask.size(); ++c) {
    if (!mask[c]) continue;
    class_ids.push_back(c);
    const auto& m = group.classes()[c].members;
    elements.insert(elements.end(), m.begin(), m.end());
  }
  return NormalSubgroup(std::move(elements), std::move(class_ids), group.order());
}

}  // namespace

std::vector<NormalSubgroup> normal_subgroups(const PermGroup& group, std::size_t order_cap) {
  if (group.order() > order_cap) {
    throw Error(ErrorCode::OrderCapExceeded, "normal subgroup search needs |G| <= " +
                                                 std::to_string(order_cap));
  }
  const std::size_t k = group.class_count();
  std::vector<bool> trivial(k, false);
  trivial[0] = true;

  std::set<std::vector<bool>> found{trivial};
  std::deque<std::vector<bool>> queue{trivial};
  while (!queue.empty()) {
    auto mask = queue.front();
    queue.pop_front();
    for (ClassId c = 0; c < k; ++c) {
      if (mask[c]) continue;
      std::vector<ElementId> gens;
      for (ClassId d = 0; d < k; ++d) {
        if (mask[d] || d == c) {
          const auto& m = group.classes()[d].members;
          gens.insert(gens.end(), m.begin(), m.end());
        }
      }
      auto next = class_mask_of(group, generated_subgroup(group, gens));
      if (found.insert(next).second) queue.push_back(std::move(next));
    }
  }

  std::vector<NormalSubgroup> out;
  for (const auto& mask : found) out.push_back(subgroup_from_mask(group, mask));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.classes() < b.classes();
  });
  return out;
}

NormalSubgroup subgroup_from_classes(const PermGroup& group, std::span<const ClassId> classes) {
  std::vector<bool> mask(group.class_count(), false);
  for (ClassId c : classes) {
    if (c >= group.class_count()) {
      throw Error(ErrorCode::UnknownClassId, "class id " + std::to_string(c) + " out of range");
    }
    mask[c] = true;
  }
  auto candidate = subgroup_from_mask(group, mask);
  return make_normal_subgroup(group, candidate.elements());
}

NormalSubgroup make_normal_subgroup(const PermGroup& group, std::vector<ElementId> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<bool> in(group.order(), false);
  for (ElementId e : elements) {
    if (e >= group.order()) throw Error(ErrorCode::InvalidArgument, "element id out of range");
    in[e] = true;
  }
  if (elements.empty() || !in[group.identity_id()]) {
    throw Error(ErrorCode::NotNormal, "subset does not contain the identity");
  }
  for (ElementId a : elements) {
    if (!in[group.inverse(a)]) throw Error(ErrorCode::NotNormal, "subset not closed under inverse");
    for (ElementId b : elements) {
      if (!in[group.multiply(a, b)]) {
        throw Error(ErrorCode::NotNormal, "subset not closed under multiplication");
      }
    }
    for (const auto& g : group.generators()) {
      if (!in[group.id_of(group.element(a).conjugate_by(g))]) {
        throw Error(ErrorCode::NotNormal, "subgroup not closed under conjugation");
      }
    }
  }
  std::vector<ClassId> class_ids;
  for (ElementId e : elements) class_ids.push_back(group.class_of(e));
  std::sort(class_ids.begin(), class_ids.end());
  class_ids.erase(std::unique(class_ids.begin(), class_ids.end()), class_ids.end());
  return NormalSubgroup(std::move(elements), std::move(class_ids), group.order());
}

QuotientGroup quotient_map(const PermGroup& group, const NormalSubgroup& subgroup) {
  // Re-validate: a NormalSubgroup built from another group must not slip through.
  const auto checked = make_normal_subgroup(group, subgroup.elements());

  QuotientGroup q;
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  q.coset_of.assign(group.order(), kUnassigned);
  for (ElementId g = 0; g < group.order(); ++g) {
    if (q.coset_of[g] != kUnassigned) continue;
    const std::size_t cid = q.representatives.size();
    q.representatives.push_back(g);
    for (ElementId h : checked.elements()) q.coset_of[group.multiply(g, h)] = cid;
  }
  q.order = q.representatives.size();
  q.table.resize(q.order * q.order);
  for (std::size_t i = 0; i < q.order; ++i) {
    for (std::size_t j = 0; j < q.order; ++j) {
      q.table[i * q.order + j] =
          q.coset_of[group.multiply(q.representatives[i], q.representatives[j])];
    }
  }
  q.element_orders.resize(q.order);
  for (std::size_t i = 0; i < q.order; ++i) {
    std::uint64_t k = 1;
    for (std::size_t x = i; x != 0; x = q.multiply(x, i)) ++k;
    q.element_orders[i] = (i == 0) ? 1 : k;
  }
  return q;
}

int malle_index(const Permutation& g) {
  return static_cast<int>(g.degree() - g.orbit_count());
}

MalleIndex malle_a_invariant(const PermGroup& group) {
  if (group.order() <= 1) throw Error(ErrorCode::TrivialGroup, "a(G) needs a nontrivial group");
  MalleIndex out;
  out.a = static_cast<int>(group.degree());
  for (const auto& cls : group.classes()) {
    const int ind = malle_index(cls.representative);
    out.class_index.push_back(ind);
    if (!cls.representative.is_identity()) out.a = std::min(out.a, ind);
  }
  return out;
}

std::vector<ClassId> resolve_class_spec(const PermGroup& group, std::string_view spec) {
  while (!spec.empty() && spec.front() == ' ') spec.remove_prefix(1);
  while (!spec.empty() && spec.back() == ' ') spec.remove_suffix(1);
  if (!spec.empty() && spec.front() == '#') {
    std::size_t id = 0;
    try {
      id = std::stoul(std::string(spec.substr(1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::UnknownClassId, "bad class id '" + std::string(spec) + "'");
    }
    if (id >= group.class_count()) {
      throw Error(ErrorCode::UnknownClassId, "class id " + std::string(spec) + " out of range");
    }
    return {id};
  }
  SplittingType wanted;
  try {
    wanted = SplittingType::parse(spec);
  } catch (const Error&) {
    throw Error(ErrorCode::UnknownClassId, "bad class spec '" + std::string(spec) + "'");
  }
  std::vector<ClassId> out;
  for (ClassId c = 0; c < group.class_count(); ++c) {
    if (group.classes()[c].type == wanted) out.push_back(c);
  }
  if (out.empty()) {
    throw Error(ErrorCode::UnknownClassId, "no class of cycle type " + wanted.to_string());
  }
  return out;
}

}  // namespace cheblab
