#include <doctest.h>

#include "corpus.hpp"
#include "generators.hpp"
#include "grpd/catalog.hpp"
#include "grpd/io.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {

GroupoidTables fixture_tables(const std::string& name) {
  return io::groupoid_tables_from_json(io::load_json(corpus::fixture_path(name)));
}

}  // namespace

TEST_CASE("fixtures validate as expected") {
  CHECK(validate(fixture_tables("r2.json")).empty());
  CHECK(validate(fixture_tables("z2-trivial-grading.json")).empty());
  CHECK(validate(fixture_tables("z2-identity-grading.json")).empty());
  const auto broken = validate(fixture_tables("broken-inverse.json"));
  REQUIRE(broken.size() == 1);
  CHECK(broken[0].axiom == "inverse");
  CHECK(broken[0].witnesses == std::vector<std::string>{"(1,2)"});
  CHECK_THROWS_AS(Groupoid::from_tables(fixture_tables("broken-inverse.json")), InvalidGroupoid);
}

TEST_CASE("validate catches each kind of corruption") {
  const auto good = catalog::pair_groupoid(2).tables();
  auto t = good;
  t.compose.pop_back();
  CHECK_FALSE(validate(t).empty());

  t = good;
  t.source["(1,2)"] = "(1,2)";
  CHECK_FALSE(validate(t).empty());

  t = good;
  t.compose[0][2] = "(2,2)";
  CHECK_FALSE(validate(t).empty());

  t = good;
  t.morphisms.push_back("(1,1)");
  CHECK_FALSE(validate(t).empty());

  t = good;
  t.group = GradeGroup{1, {}};
  t.grading = {{"(1,1)", {0}}, {"(1,2)", {1}}, {"(2,1)", {1}}, {"(2,2)", {0}}};  // not a cocycle
  const auto r = validate(t);
  REQUIRE_FALSE(r.empty());
  CHECK(r[0].axiom == "grading-cocycle");
}

TEST_CASE("random compose-table mutations never validate") {
  testgen::Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const auto g = testgen::random_principal_groupoid(rng, 9);
    auto t = g.tables();
    REQUIRE(validate(t).empty());
    if (g.size() < 2) continue;
    auto& entry = t.compose[testgen::below(rng, t.compose.size())];
    const auto old = entry[2];
    do entry[2] = t.morphisms[testgen::below(rng, t.morphisms.size())];
    while (entry[2] == old);
    CHECK_FALSE(validate(t).empty());
  }
}

TEST_CASE("morphisms are ordered lexicographically") {
  const auto g = catalog::pair_groupoid(2);
  CHECK(g.name(0) == "(1,1)");
  CHECK(g.name(3) == "(2,2)");
  CHECK(g.src(g.at("(1,2)")) == g.at("(2,2)"));
  CHECK(g.dst(g.at("(1,2)")) == g.at("(1,1)"));
  CHECK(*g.compose(g.at("(1,2)"), g.at("(2,1)")) == g.at("(1,1)"));
  CHECK_FALSE(g.compose(g.at("(1,2)"), g.at("(1,2)")));
}

TEST_CASE("principal kernel agrees with the isotropy oracle") {
  using catalog::CyclicGrading;
  CHECK(is_principal_kernel(catalog::cyclic_group(2, CyclicGrading::Identity)));
  CHECK_FALSE(is_principal_kernel(catalog::cyclic_group(2, CyclicGrading::Trivial)));
  testgen::Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto g = testgen::random_principal_groupoid(rng, 12);
    CHECK(is_principal_kernel(g) == !oracle::kernel_has_isotropy(g));
  }
  for (const auto& e : corpus::non_principal()) CHECK(oracle::kernel_has_isotropy(e.groupoid));
}

TEST_CASE("homogeneous bisections match subset enumeration") {
  testgen::Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    const auto g = testgen::random_principal_groupoid(rng, 10);
    const auto got = homogeneous_bisections(g);
    const auto want = oracle::homogeneous_bisections(g);
    REQUIRE(got.size() == want.size());
    CHECK(got.front().set.empty());
    std::set<std::vector<Groupoid::Id>> a, b(want.begin(), want.end());
    for (const auto& h : got) {
      a.insert(h.set.elems());
      if (!h.set.empty()) CHECK(*h.grade == g.grade(h.set.elems().front()));
    }
    CHECK(a == b);
  }
  CHECK_THROWS_AS(homogeneous_bisections(catalog::pair_groupoid(5), 16), EnumerationTooLarge);
}

TEST_CASE("set product, inversion and S_G closure") {
  const auto g = catalog::pair_groupoid(3);
  auto id = [&](const char* n) { return g.at(n); };
  const auto u = make_set({id("(1,2)"), id("(2,3)")});
  const auto v = make_set({id("(2,1)"), id("(3,2)")});
  CHECK(set_product(g, u, v) == make_set({id("(1,1)"), id("(2,2)")}));
  CHECK(invert_set(g, u) == v);
  CHECK(src_set(g, u) == make_set({id("(2,2)"), id("(3,3)")}));
  CHECK_THROWS_AS(Bisection(g, make_set({id("(1,2)"), id("(3,2)")})), NotABisection);
  testgen::Rng rng(6);
  const auto hs = homogeneous_bisections(g);
  for (int k = 0; k < 200; ++k) {
    const auto& a = hs[testgen::below(rng, hs.size())].set;
    const auto& b = hs[testgen::below(rng, hs.size())].set;
    CHECK(is_bisection(g, compose_sets(g, a, b).elems()));
    CHECK(invert_set(g, compose_sets(g, a, b)) == compose_sets(g, invert_set(g, b), invert_set(g, a)));
  }
}

TEST_CASE("isomorphism search agrees with the brute-force oracle") {
  testgen::Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    const auto g = testgen::random_principal_groupoid(rng, 8);
    std::map<std::string, std::string> names;
    std::vector<std::string> fresh;
    for (Groupoid::Id a = 0; a < g.size(); ++a) fresh.push_back("m" + std::to_string(a));
    std::shuffle(fresh.begin(), fresh.end(), rng);
    for (Groupoid::Id a = 0; a < g.size(); ++a) names[g.name(a)] = fresh[a];
    const auto h = catalog::relabel(g, names);
    const auto w = groupoid_isomorphic(g, h);
    REQUIRE(w);
    CHECK(oracle::preserves_tables(g, h, *w));
    CHECK_FALSE(check_isomorphism(g, h, *w));
    const auto other = testgen::random_principal_groupoid(rng, 8);
    CHECK(groupoid_isomorphic(g, other).has_value() == oracle::isomorphic(g, other));
  }
}

TEST_CASE("gradings must be cocycles") {
  const auto g = catalog::pair_groupoid(2);
  const GradeGroup z{1, {}};
  std::vector<Grade> bad(g.size(), Grade::zero(z));
  bad[g.at("(1,2)")] = Grade::of(z, {1});
  CHECK_THROWS_AS(g.with_grading(z, bad), InvalidGroupoid);
  const auto graded = catalog::graded_pair_groupoid(3);
  CHECK(graded.grade(graded.at("(3,1)")).coords() == std::vector<std::int64_t>{2});
}

TEST_CASE("automorphisms start with the identity") {
  const auto autos = groupoid_automorphisms(catalog::pair_groupoid(3), 100);
  CHECK(autos.size() == 6);  // S_3 permuting the objects
  for (Groupoid::Id a = 0; a < 9; ++a) CHECK(autos[0][a] == a);
}
