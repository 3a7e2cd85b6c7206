#include <map>
#include <random>

#include "cheblab/catalog.hpp"
#include "cheblab/error.hpp"
#include "cheblab/perm_group.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cheblab;

namespace {

Permutation cyc(const char* text, std::size_t n) { return Permutation::parse_cycles(text, n); }

std::vector<std::size_t> class_sizes(const PermGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& c : g.classes()) out.push_back(c.size());
  return out;
}

// Random subgroups of S_n for n <= 5, from 1..3 random generators.
std::vector<GroupPtr> random_groups(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<GroupPtr> out;
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 2 + rng() % 4;
    std::vector<Permutation> gens;
    for (std::size_t k = 0, ng = 1 + rng() % 3; k < ng; ++k) {
      gens.push_back(oracle::random_permutation(rng, n));
    }
    out.push_back(std::make_shared<const PermGroup>(generate_group(gens)));
  }
  return out;
}

}  // namespace

TEST_CASE("permutation basics") {
  const auto p = cyc("(0 1)(3 4 5)", 6);
  CHECK(p.cycle_type().to_string() == "3,2,1");
  CHECK(cycle_type(Permutation::identity(3)).parts() == std::vector<int>{1, 1, 1});
  CHECK(cycle_type(cyc("(0 1 2)", 3)).parts() == std::vector<int>{3});
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.order() == 6);
  CHECK(Permutation::parse_cycles(p.to_cycle_string(), 6) == p);
  // (p*q)(x) = p(q(x))
  const auto a = cyc("(0 1)", 3), b = cyc("(1 2)", 3);
  CHECK((a * b) == oracle::compose(a, b));
  CHECK_THROWS_AS(Permutation::parse_cycles("(0 3)", 3), Error);
  CHECK_THROWS_AS(Permutation::parse_cycles("(0 1 0)", 3), Error);
  CHECK_THROWS_AS(Permutation::parse_cycles("(0 x)", 3), Error);
}

TEST_CASE("splitting type parsing") {
  CHECK(SplittingType::parse("[2,1]") == SplittingType({1, 2}));
  CHECK(SplittingType::parse("1 1 1").to_string() == "1,1,1");
  CHECK_THROWS_AS(SplittingType::parse("[2,x]"), Error);
}

TEST_CASE("generate_group orders") {
  CHECK(generate_group({cyc("(0 1 2)", 3), cyc("(0 1)", 3)}).order() == 6);
  CHECK(generate_group({Permutation::identity(4)}).order() == 1);
  CHECK(generate_group({cyc("(0 1 2)", 6), cyc("(3 4 5)", 6), cyc("(0 3)(1 4)(2 5)", 6)}).order() == 18);
  CHECK_THROWS_AS(generate_group({cyc("(0 1)", 2), cyc("(0 1)", 3)}), Error);
  try {
    generate_group({cyc("(0 1 2 3 4)", 5), cyc("(0 1)", 5)}, 100);
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderCapExceeded);
  }
}

TEST_CASE("catalog groups match the brute-force closure") {
  const std::map<std::string, std::size_t> orders{{"C2", 2},  {"C3", 3},   {"S3", 6},     {"S4", 24},
                                                  {"D4", 8},  {"S5", 120}, {"C3wrC2", 18}};
  for (const auto& entry : builtin_catalog()) {
    CAPTURE(entry.name);
    const auto g = build_group(entry);
    CHECK(g->order() == orders.at(entry.name));
    const auto brute = oracle::closure(g->generators());
    CHECK(std::vector<Permutation>(brute.begin(), brute.end()) == g->elements());
    CHECK(is_transitive(*g));
  }
  CHECK_THROWS_AS(catalog_group("A7"), Error);
}

TEST_CASE("conjugacy classes") {
  const auto s3 = catalog_group("S3");
  CHECK(class_sizes(*s3) == std::vector<std::size_t>{1, 2, 3});
  CHECK(s3->classes()[0].type.to_string() == "1,1,1");
  CHECK(s3->classes()[1].type.to_string() == "3");
  CHECK(s3->classes()[2].type.to_string() == "2,1");
  CHECK(generate_group({Permutation::identity(2)}).class_count() == 1);
  CHECK(catalog_group("S4")->class_count() == 5);
  CHECK(catalog_group("S5")->class_count() == 7);

  for (const auto& entry : builtin_catalog()) {
    CAPTURE(entry.name);
    const auto g = build_group(entry);
    const auto brute = oracle::conjugation_orbits({g->elements().begin(), g->elements().end()});
    CHECK(brute.size() == g->class_count());
    std::multiset<std::size_t> brute_sizes, sizes;
    for (const auto& o : brute) brute_sizes.insert(o.size());
    for (const auto& c : g->classes()) sizes.insert(c.size());
    CHECK(brute_sizes == sizes);
  }
}

TEST_CASE("transitivity") {
  CHECK(is_transitive(*catalog_group("S3")));
  CHECK_FALSE(is_transitive(generate_group({cyc("(0 1)", 3)})));
  CHECK(is_transitive(*catalog_group("C3wrC2")));
}

TEST_CASE("normal subgroups") {
  const auto s3 = catalog_group("S3");
  const auto ns = normal_subgroups(*s3);
  REQUIRE(ns.size() == 3);
  CHECK(ns[0].order() == 1);
  CHECK(ns[1].order() == 3);
  CHECK(ns[2].order() == 6);
  CHECK(normal_subgroups(generate_group({Permutation::identity(3)})).size() == 1);
  CHECK(normal_subgroups(*catalog_group("S4")).size() == 4);

  const auto w = catalog_group("C3wrC2");
  bool base_found = false;
  const auto base = generate_group({cyc("(0 1 2)", 6), cyc("(3 4 5)", 6)});
  for (const auto& h : normal_subgroups(*w)) {
    if (h.index() != 2) continue;
    std::vector<Permutation> elems;
    for (auto id : h.elements()) elems.push_back(w->element(id));
    std::sort(elems.begin(), elems.end());
    if (elems == base.elements()) base_found = true;
  }
  CHECK(base_found);

  std::vector<ElementId> not_normal{0, s3->id_of(cyc("(0 1)", 3))};
  CHECK_THROWS_AS(make_normal_subgroup(*s3, not_normal), Error);
}

TEST_CASE("quotient maps") {
  const auto s3 = catalog_group("S3");
  const auto ns = normal_subgroups(*s3);
  CHECK(quotient_map(*s3, ns[1]).order == 2);
  CHECK(quotient_map(*s3, ns[2]).order == 1);
  const auto w = catalog_group("C3wrC2");
  for (const auto& h : normal_subgroups(*w)) {
    if (h.order() == 9) CHECK(quotient_map(*w, h).order == 2);
  }
}

TEST_CASE("malle index") {
  CHECK(malle_index(Permutation::identity(3)) == 0);
  CHECK(malle_index(cyc("(0 1)", 3)) == 1);
  CHECK(malle_a_invariant(*catalog_group("S3")).a == 1);
  CHECK(malle_a_invariant(*catalog_group("C3wrC2")).a == 2);
  CHECK(malle_a_invariant(*catalog_group("C3")).a == 2);
  CHECK_THROWS_AS(malle_a_invariant(generate_group({Permutation::identity(3)})), Error);
  for (const auto& entry : builtin_catalog()) {
    const auto g = build_group(entry);
    int brute = 1 << 20;
    for (const auto& p : g->elements()) {
      if (!p.is_identity()) brute = std::min(brute, int(p.degree() - oracle::orbits_on_points(p)));
    }
    CHECK(malle_a_invariant(*g).a == brute);
  }
}

TEST_CASE("class specs") {
  const auto s3 = catalog_group("S3");
  CHECK(resolve_class_spec(*s3, "3") == std::vector<ClassId>{1});
  CHECK(resolve_class_spec(*s3, "[2,1]") == std::vector<ClassId>{2});
  CHECK(resolve_class_spec(*s3, "#0") == std::vector<ClassId>{0});
  CHECK_THROWS_AS(resolve_class_spec(*s3, "#9"), Error);
  CHECK_THROWS_AS(resolve_class_spec(*s3, "2,2"), Error);
}

TEST_CASE("catalog json") {
  const auto entries = parse_catalog(R"j([{"name":"K4","degree":4,"generators":["(0 1)(2 3)","(0 2)(1 3)"]}])j");
  REQUIRE(entries.size() == 1);
  CHECK(build_group(entries[0])->order() == 4);
  CHECK(parse_catalog(R"j({"name":"T","degree":4,"generators":["()"]})j").size() == 1);
  CHECK_THROWS_AS(parse_catalog("{not json"), Error);
  CHECK_THROWS_AS(parse_catalog(R"j({"name":"T","generators":[]})j"), Error);
}

TEST_CASE("property: class equation, conjugation invariance, normal closure, quotients") {
  for (const auto& g : random_groups(20261016, 40)) {
    CAPTURE(g->order());
    std::size_t sum = 0;
    for (const auto& c : g->classes()) {
      sum += c.size();
      CHECK(g->order() % c.size() == 0);
    }
    CHECK(sum == g->order());
    for (const auto& gen : g->generators()) CHECK(g->find(gen).has_value());

    if (g->order() <= 200) {
      for (ElementId a = 0; a < g->order(); ++a) {
        for (ElementId h = 0; h < g->order(); ++h) {
          const auto conj = g->element(a).conjugate_by(g->element(h));
          CHECK(g->class_of(g->id_of(conj)) == g->class_of(a));
          CHECK(conj.cycle_type() == g->element(a).cycle_type());
        }
      }
    }

    for (const auto& h : normal_subgroups(*g)) {
      CHECK(h.contains(g->identity_id()));
      CHECK(g->order() % h.order() == 0);
      for (auto x : h.elements()) {
        for (ElementId y = 0; y < g->order(); ++y) {
          CHECK(h.contains(g->multiply(g->multiply(y, x), g->inverse(y))));
        }
      }
      const auto q = quotient_map(*g, h);
      CHECK(q.order == h.index());
      std::set<std::size_t> image;
      for (ElementId x = 0; x < g->order(); ++x) {
        image.insert(q.project(x));
        CHECK((q.project(x) == 0) == h.contains(x));
        for (ElementId y = 0; y < g->order(); ++y) {
          CHECK(q.project(g->multiply(x, y)) == q.multiply(q.project(x), q.project(y)));
        }
      }
      CHECK(image.size() == q.order);
    }
  }
}
