#include <doctest.h>

#include "corpus.hpp"
#include "generators.hpp"
#include "grpd/catalog.hpp"
#include "grpd/normaliser.hpp"
#include "oracles.hpp"

using namespace grpd;
using catalog::CyclicGrading;

namespace {

AlgebraElement elem(const GroupoidPtr& g, const Ring& r, std::initializer_list<std::pair<const char*, std::int64_t>> t) {
  AlgebraElement f(g, r);
  for (auto [n, c] : t) f.add_to(g->at(n), RingElement(r, c));
  return f;
}

}  // namespace

TEST_CASE("structural normaliser test on R2") {
  auto g = std::make_shared<const Groupoid>(catalog::pair_groupoid(2));
  const Ring q = Ring::rationals(), z = Ring::integers();
  CHECK(is_normaliser(elem(g, q, {{"(1,2)", 3}, {"(2,1)", -1}})));
  CHECK_FALSE(is_normaliser(elem(g, q, {{"(1,1)", 1}, {"(1,2)", 1}})));  // not a bisection
  CHECK_FALSE(is_normaliser(elem(g, z, {{"(1,2)", 2}})));                // 2 is not a unit in Z
  CHECK(is_normaliser(elem(g, q, {{"(1,2)", 2}})));
  const auto sf = is_normaliser(elem(g, q, {{"(1,1)", 2}, {"(2,2)", 2}, {"(1,2)", 0}}));
  REQUIRE(sf);
  CHECK(sf->pieces.size() == 1);
  CHECK(sf->normaliser(g, q) == elem(g, q, {{"(1,1)", 2}, {"(2,2)", 2}}));
  CHECK(is_normaliser(AlgebraElement(g, q)));  // zero
}

TEST_CASE("homogeneity matters under a grading") {
  auto g = std::make_shared<const Groupoid>(catalog::graded_pair_groupoid(2));
  const Ring f3 = Ring::prime_field(3);
  // A bisection whose morphisms have grades -1 and 1.
  const auto mixed = elem(g, f3, {{"(1,2)", 1}, {"(2,1)", 1}});
  CHECK_FALSE(is_normaliser(mixed));
  CHECK_FALSE(bf_is_normaliser(mixed));
  CHECK(is_normaliser(elem(g, f3, {{"(1,2)", 2}})));
}

TEST_CASE("non-principal kernels are a hypothesis violation") {
  auto g = std::make_shared<const Groupoid>(catalog::cyclic_group(2, CyclicGrading::Trivial));
  CHECK_THROWS_AS(is_normaliser(AlgebraElement::point_mass(g, Ring::rationals(), 0)), HypothesisViolated);
  CHECK_THROWS_AS(normaliser_semigroup(g, Ring::prime_field(2), EnumerationMode::WhiteBox), HypothesisViolated);
}

TEST_CASE("brute force finds exactly the expected partner") {
  auto g = std::make_shared<const Groupoid>(catalog::pair_groupoid(2));
  const Ring f3 = Ring::prime_field(3);
  const auto n = elem(g, f3, {{"(1,2)", 2}, {"(2,1)", 1}});
  const auto partners = bf_normaliser_partners(n);
  REQUIRE(partners.size() == 1);
  CHECK(partners[0] == normaliser_star(n));
  CHECK(normaliser_star(n) == elem(g, f3, {{"(2,1)", 2}, {"(1,2)", 1}}));
  CHECK_THROWS_AS(bf_is_normaliser(AlgebraElement(g, Ring::rationals())), std::invalid_argument);
  CHECK_THROWS_AS(bf_is_normaliser(n, 10), EnumerationTooLarge);
}

TEST_CASE("structural and definitional tests agree on random F_p elements") {
  testgen::Rng rng(20);
  for (int k = 0; k < 150; ++k) {
    auto g = std::make_shared<const Groupoid>(testgen::random_principal_groupoid(rng, 6));
    const Ring ring = k % 2 ? Ring::prime_field(3) : Ring::prime_field(2);
    const auto n = testgen::random_homogeneous(g, ring, rng);
    CHECK(is_normaliser(n).has_value() == bf_is_normaliser(n));
  }
}

TEST_CASE("involution identities: n*n and nn* are the source and range idempotents") {
  testgen::Rng rng(21);
  for (int k = 0; k < 40; ++k) {
    const auto base = testgen::random_principal_groupoid(rng, 9);
    auto g = std::make_shared<const Groupoid>(base);
    const Ring q = Ring::rationals();
    for (const auto& h : homogeneous_bisections(base)) {
      AlgebraElement n(g, q);
      for (auto a : h.set.elems()) n.add_to(a, testgen::random_unit(q, rng));
      const auto s = normaliser_star(n);
      CHECK(s * n == unit_indicator(g, q, src_set(base, h.set.elems())));
      CHECK(n * s == unit_indicator(g, q, dst_set(base, h.set.elems())));
      CHECK(n * s * n == n);
    }
  }
}

TEST_CASE("equivalence ignores coefficients and sees supports") {
  auto g = std::make_shared<const Groupoid>(catalog::pair_groupoid(2));
  const Ring q = Ring::rationals();
  const auto a = elem(g, q, {{"(1,2)", 1}, {"(2,1)", 1}});
  const auto b = elem(g, q, {{"(1,2)", 5}, {"(2,1)", -2}});
  const auto c = elem(g, q, {{"(1,2)", 1}});
  CHECK(equiv(a, b));
  CHECK(equiv(a, b, IdempotentScope::AllIdempotents));
  CHECK_FALSE(equiv(a, c));
  CHECK_FALSE(equiv(a, c, IdempotentScope::AllIdempotents));
}

TEST_CASE("quotient semigroup: white-box and brute-force agree") {
  for (const auto& e : corpus::small_graded()) {
    if (e.groupoid.size() > 6) continue;
    auto g = std::make_shared<const Groupoid>(e.groupoid);
    const auto wb = normaliser_semigroup(g, Ring::rationals(), EnumerationMode::WhiteBox);
    const auto bf = normaliser_semigroup(g, Ring::prime_field(2), EnumerationMode::BruteForce);
    CHECK(wb.classes.size() == oracle::homogeneous_bisections(e.groupoid).size());
    CHECK(wb.classes.size() == bf.classes.size());
    CHECK_FALSE(check_q_tilde(e.groupoid, wb));
    CHECK_FALSE(check_q_tilde(e.groupoid, bf));
    CHECK(wb.product == bf.product);
    CHECK(wb.star == bf.star);
  }
}

TEST_CASE("R2 over F2 has seven normaliser classes") {
  auto g = std::make_shared<const Groupoid>(catalog::pair_groupoid(2));
  const auto quotient = normaliser_semigroup(g, Ring::prime_field(2), EnumerationMode::BruteForce);
  CHECK(quotient.classes.size() == 7);
  CHECK(quotient.classes.front().support.empty());
}
