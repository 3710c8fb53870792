#include <doctest.h>

#include <functional>

#include "corpus.hpp"
#include "generators.hpp"
#include "grpd/catalog.hpp"
#include "grpd/io.hpp"
#include "grpd/reconstruction.hpp"
#include "oracles.hpp"

using namespace grpd;
using catalog::CyclicGrading;

namespace {

std::string failed_stage(const std::function<void()>& f) {
  try {
    f();
  } catch (const PipelineError& e) {
    return e.stage();
  }
  return "";
}

// ρ(x) = u x u⁻¹ on the point-mass basis.
LinearMap conjugation(const RingPresentation& p, const AlgebraElement& u, const AlgebraElement& uinv) {
  LinearMap rho;
  for (Groupoid::Id a = 0; a < p.dim(); ++a)
    rho.push_back(to_vector(p, u * AlgebraElement::point_mass(u.groupoid_ptr(), u.ring(), a) * uinv));
  return rho;
}

}  // namespace

TEST_CASE("spectrum of A(R2) has one character per object") {
  const auto p = presentation_of(catalog::pair_groupoid(2), Ring::prime_field(2), false);
  const auto atoms = stone_spectrum(p);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].name == "(1,1)");
  CHECK(atoms[1].name == "(2,2)");
  CHECK(evaluate(p, atoms[0], p.unit_vector(0)));
  CHECK_FALSE(evaluate(p, atoms[1], p.unit_vector(0)));
  // Over Q the diagonal basis is used directly.
  CHECK(stone_spectrum(presentation_of(catalog::pair_groupoid(3), Ring::rationals(), false)).size() == 3);
}

TEST_CASE("ring-only partner test matches the groupoid-side answer") {
  testgen::Rng rng(30);
  for (int k = 0; k < 60; ++k) {
    const auto base = testgen::random_principal_groupoid(rng, 8);
    auto g = std::make_shared<const Groupoid>(base);
    const Ring ring = k % 2 ? Ring::prime_field(3) : Ring::rationals();
    const auto p = presentation_of(base, ring, false);
    const auto atoms = stone_spectrum(p);
    const auto n = testgen::random_homogeneous(g, ring, rng);
    const auto partner = normaliser_partner(p, atoms, to_vector(p, n));
    const auto structural = is_normaliser(n);
    CHECK(partner.has_value() == structural.has_value());
    if (partner && structural) CHECK(*partner == to_vector(p, normaliser_star(n)));
  }
}

TEST_CASE("roundtrip on small examples in every search mode") {
  for (const auto mode : {SearchMode::Auto, SearchMode::BlackBox, SearchMode::WhiteBox}) {
    const auto g = catalog::graded_pair_groupoid(2);
    const auto rep = verify_roundtrip(g, Ring::prime_field(2), {mode});
    CHECK(rep.result.germs.groupoid.size() == 4);
    CHECK(oracle::preserves_tables(g, rep.result.germs.groupoid, rep.witness));
    CHECK(rep.stages.back().stage == "witness");
  }
  const auto z2 = catalog::cyclic_group(2, CyclicGrading::Identity);
  const auto rep = verify_roundtrip(z2, Ring::prime_field(3));
  CHECK(rep.result.search.classes.size() == 3);  // 0, 1_u, 1_t
  CHECK(rep.result.germs.groupoid.grade(rep.witness[z2.at("t")]).coords() == std::vector<std::int64_t>{1});
}

TEST_CASE("R2 reconstructs with seven classes and four germs") {
  const auto rep = verify_roundtrip(catalog::pair_groupoid(2), Ring::prime_field(2), {SearchMode::BlackBox});
  CHECK(rep.result.search.classes.size() == 7);
  CHECK(rep.result.germs.groupoid.size() == 4);
  CHECK(rep.result.search.mode == SearchMode::BlackBox);
}

TEST_CASE("reconstruction failures name their stage") {
  const auto z2 = catalog::cyclic_group(2, CyclicGrading::Trivial);
  PipelineError caught("", "", false);
  try {
    verify_roundtrip(z2, Ring::prime_field(2));
  } catch (const PipelineError& e) {
    caught = e;
  }
  CHECK(caught.stage() == "hypothesis");
  CHECK(caught.hypothesis());
  CHECK(caught.message() == "hypothesis violated: kernel not principal");

  CHECK(failed_stage([&] { reconstruct(presentation_of(z2, Ring::prime_field(2)), {}); }) == "masa");

  // Black-box search over Q is impossible and there is no provenance.
  const auto q = presentation_of(catalog::pair_groupoid(2), Ring::rationals(), false);
  CHECK(failed_stage([&] { reconstruct(q, {SearchMode::BlackBox}); }) == "normalisers");
  CHECK(failed_stage([&] { reconstruct(q, {SearchMode::Auto}); }) == "normalisers");

  auto broken = presentation_of(catalog::pair_groupoid(2), Ring::prime_field(2), false);
  broken.mult[0] = {};  // E11·E11 = 0 breaks associativity with the rest
  CHECK(failed_stage([&] { reconstruct(broken, {}); }) == "presentation");

  // Cap too small for black-box enumeration.
  const auto f2 = presentation_of(catalog::pair_groupoid(3), Ring::prime_field(2), false);
  CHECK(failed_stage([&] { reconstruct(f2, {SearchMode::BlackBox, 16}); }) == "normalisers");
}

TEST_CASE("presentation fixture reconstructs R2") {
  const auto p = io::presentation_from_json(io::load_json(corpus::fixture_path("m2-presentation-f3.json")));
  CHECK(p.ring == Ring::prime_field(3));
  CHECK(check_presentation(p).empty());
  const auto r = reconstruct(p, {});
  CHECK(r.spectrum.size() == 2);
  CHECK(oracle::isomorphic(r.germs.groupoid, catalog::pair_groupoid(2)));
}

TEST_CASE("scrambled presentations induce isomorphisms") {
  testgen::Rng rng(31);
  const auto entries = corpus::small_graded();
  for (int k = 0; k < 8; ++k) {
    const auto& e = entries[k % entries.size()];
    const auto s = corpus::scramble(e.groupoid, e.ring, rng);
    const auto iso = induced_groupoid_iso(s.source, s.target, s.rho);
    CHECK_FALSE(check_isomorphism(iso.source.germs.groupoid, iso.target.germs.groupoid, iso.map));
  }
}

TEST_CASE("induced isomorphism rejects bad maps at the right check") {
  const Ring q = Ring::rationals();
  const auto graded = presentation_of(catalog::graded_pair_groupoid(2), q);
  const auto plain_g = catalog::pair_groupoid(2);
  const auto plain = presentation_of(plain_g, q);
  auto id = [&](const char* n) { return plain_g.at(n); };

  // Transpose is an anti-automorphism.
  LinearMap transpose = identity_map(plain);
  std::swap(transpose[id("(1,2)")], transpose[id("(2,1)")]);
  CHECK(failed_stage([&] { induced_groupoid_iso(plain, plain, transpose); }) == "rho-multiplicative");

  // Swapping the objects is multiplicative but reverses the grading.
  LinearMap swap(4);
  swap[id("(1,1)")] = graded.unit_vector(id("(2,2)"));
  swap[id("(2,2)")] = graded.unit_vector(id("(1,1)"));
  swap[id("(1,2)")] = graded.unit_vector(id("(2,1)"));
  swap[id("(2,1)")] = graded.unit_vector(id("(1,2)"));
  CHECK(failed_stage([&] { induced_groupoid_iso(graded, graded, swap); }) == "rho-graded");
  CHECK_NOTHROW(induced_groupoid_iso(plain, plain, swap));

  CHECK(failed_stage([&] { induced_groupoid_iso(plain, plain, LinearMap(4, plain.zero())); }) == "rho-bijective");

  // Conjugation by 1 + E12 moves the diagonal.
  auto g = std::make_shared<const Groupoid>(plain_g);
  auto u = unit_indicator(g, q, g->units()), uinv = u;
  u.add_to(id("(1,2)"), RingElement(q, 1));
  uinv.add_to(id("(1,2)"), RingElement(q, -1));
  REQUIRE(u * uinv == unit_indicator(g, q, g->units()));
  CHECK(failed_stage([&] { induced_groupoid_iso(plain, plain, conjugation(plain, u, uinv)); }) == "rho-diagonal");
}

TEST_CASE("germ groupoid of a random principal groupoid is isomorphic to it") {
  testgen::Rng rng(32);
  for (int k = 0; k < 15; ++k) {
    const auto g = testgen::random_principal_groupoid(rng, 6);
    const auto rep = verify_roundtrip(g, Ring::rationals(), {SearchMode::WhiteBox});
    CHECK(oracle::isomorphic(g, rep.result.germs.groupoid));
    CHECK(rep.result.germs.checked_compositions > 0);
  }
}
