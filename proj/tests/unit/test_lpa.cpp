#include <doctest.h>

#include "corpus.hpp"
#include "generators.hpp"
#include "grpd/io.hpp"
#include "grpd/lpa_parser.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {

GraphPtr e2() {
  return std::make_shared<const Graph>(io::graph_from_json(io::load_json(corpus::fixture_path("e2.json"))));
}

std::string eval(const GraphPtr& g, const std::string& text, const Ring& ring = Ring::rationals()) {
  return parse_lpa(g, ring, text).to_string();
}

}  // namespace

TEST_CASE("products on E2") {
  const auto g = e2();
  CHECK(eval(g, "t(e) s(e)") == "1 * v");
  CHECK(eval(g, "t(e) s(f)") == "0");
  CHECK(eval(g, "s(e) t(e)") == "1 * v + -1 * f.(f)^*");
  CHECK(eval(g, "s(e) t(e) + s(f) t(f)") == "1 * v");
  CHECK(eval(g, "s(e) t(e) + s(f) t(f)", Ring::prime_field(2)) == "1 * v");
  CHECK(eval(g, "2 s(e) t(e)", Ring::prime_field(2)) == "0");
  CHECK(eval(g, "1/2 v(v) - 1/2") == "0");
}

TEST_CASE("diagonal and commutation") {
  const auto g = e2();
  const auto q = Ring::rationals();
  CHECK(is_lpa_diagonal(parse_lpa(g, q, "s(e) t(e)")));
  CHECK_FALSE(is_lpa_diagonal(parse_lpa(g, q, "s(e)")));
  const auto v = parse_lpa(g, q, "v(v)");
  for (const auto& mu : paths_up_to(*g, 3)) CHECK(commutes_with_diagonal(v, mu));
  CHECK_FALSE(commutes_with_diagonal(parse_lpa(g, q, "s(e)"), Path{0, {*g->find_edge("e")}}));
}

TEST_CASE("parser errors carry positions") {
  const auto g = e2();
  const auto q = Ring::rationals();
  try {
    parse_lpa(g, q, "s(e) t(f");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  try {
    parse_lpa(g, q, "v(v)\n  + ?");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_lpa(g, q, "s(x)"), UnknownId);
  CHECK_THROWS_AS(parse_lpa(g, q, "s(v)"), UnknownId);
  CHECK_THROWS_AS(parse_lpa(g, Ring::integers(), "1/2 v(v)"), ParseError);
  CHECK_THROWS_AS(parse_lpa(g, q, ""), ParseError);
}

TEST_CASE("normal forms print and parse back") {
  testgen::Rng rng(50);
  for (const auto& [name, graph] : corpus::fixture_graphs()) {
    const auto g = std::make_shared<const Graph>(graph);
    for (const auto& ring : {Ring::rationals(), Ring::prime_field(3), Ring::integers()})
      for (int k = 0; k < 30; ++k) {
        const auto a = normalize(testgen::random_raw_element(g, ring, rng, 4, 3));
        CHECK(a.is_normal());
        CHECK(parse_lpa(g, ring, a.to_string()) == a);
      }
  }
}

TEST_CASE("rewriting is confluent") {
  testgen::Rng rng(51);
  for (const auto& [name, graph] : corpus::fixture_graphs()) {
    const auto g = std::make_shared<const Graph>(graph);
    for (int k = 0; k < 10; ++k) {
      const auto raw = testgen::random_raw_element(g, Ring::rationals(), rng, 4, 3);
      const auto canonical = normalize(raw);
      for (int j = 0; j < 10; ++j) CHECK(normalize(raw, &rng) == canonical);
    }
  }
}

TEST_CASE("ring laws and grading in L(E)") {
  testgen::Rng rng(52);
  for (const auto& [name, graph] : corpus::fixture_graphs()) {
    const auto g = std::make_shared<const Graph>(graph);
    const Ring q = Ring::rationals();
    for (int k = 0; k < 15; ++k) {
      const auto a = normalize(testgen::random_raw_element(g, q, rng, 3, 2));
      const auto b = normalize(testgen::random_raw_element(g, q, rng, 3, 2));
      const auto c = normalize(testgen::random_raw_element(g, q, rng, 3, 2));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(star(a * b) == star(b) * star(a));
      CHECK(star(star(a)) == a);
      const int da = static_cast<int>(testgen::below(rng, 5)) - 2, db = static_cast<int>(testgen::below(rng, 5)) - 2;
      const auto p = testgen::random_homogeneous_lpa(g, q, rng, da, 3) * testgen::random_homogeneous_lpa(g, q, rng, db, 3);
      for (int d : p.grades()) CHECK(d == da + db);
    }
  }
}

TEST_CASE("products agree with the path-space representation on acyclic graphs") {
  testgen::Rng rng(53);
  for (int k = 0; k < 60; ++k) {
    const auto g = std::make_shared<const Graph>(testgen::random_acyclic_graph(rng, 5, 6));
    const oracle::PathRep rep(*g);
    const Ring ring = k % 2 ? Ring::prime_field(5) : Ring::rationals();
    const auto a = testgen::random_raw_element(g, ring, rng, 3, 3);
    const auto b = testgen::random_raw_element(g, ring, rng, 3, 3);
    CHECK(rep.of(normalize(a)) == rep.of(a));
    CHECK(rep.of(a * b) == oracle::PathRep::multiply(rep.of(a), rep.of(b)));
  }
}

TEST_CASE("mixing graphs or rings is rejected") {
  const auto g = e2(), h = e2();
  const auto q = Ring::rationals();
  CHECK_THROWS_AS(LpaElement::vertex(g, q, 0) * LpaElement::vertex(h, q, 0), std::invalid_argument);
  CHECK_THROWS_AS(LpaElement::vertex(g, q, 0) * LpaElement::vertex(g, Ring::integers(), 0), std::invalid_argument);
}
