#include "generators.hpp"

#include "grpd/catalog.hpp"

namespace testgen {

using namespace grpd;

RingElement random_scalar(const Ring& ring, Rng& rng) {
  if (ring.kind() == Ring::Kind::Rationals && coin(rng)) {
    const auto num = static_cast<std::int64_t>(below(rng, 7)) - 3;
    const auto den = static_cast<std::int64_t>(below(rng, 3)) + 1;
    return RingElement(ring, Rational(num, den));
  }
  return RingElement(ring, static_cast<std::int64_t>(below(rng, 7)) - 3);
}

RingElement random_unit(const Ring& ring, Rng& rng) {
  switch (ring.kind()) {
    case Ring::Kind::Integers:
      return RingElement(ring, coin(rng) ? 1 : -1);
    case Ring::Kind::Rationals: {
      const auto num = static_cast<std::int64_t>(below(rng, 3)) + 1;
      const auto den = static_cast<std::int64_t>(below(rng, 3)) + 1;
      return RingElement(ring, Rational(coin(rng) ? num : -num, den));
    }
    case Ring::Kind::PrimeField:
      return RingElement(ring, static_cast<std::int64_t>(1 + below(rng, ring.characteristic() - 1)));
  }
  return RingElement::one(ring);
}

Groupoid height_graded_pair(int n, Rng& rng) {
  auto t = catalog::pair_groupoid(n).tables();
  std::vector<std::int64_t> h(n + 1);
  for (auto& x : h) x = static_cast<std::int64_t>(below(rng, 3)) - 1;
  t.group = GradeGroup{1, {}};
  t.grading.clear();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) t.grading["(" + std::to_string(i) + "," + std::to_string(j) + ")"] = {h[i] - h[j]};
  return Groupoid::from_tables(t);
}

namespace {

Groupoid random_block(Rng& rng, std::size_t budget) {
  for (;;) {
    switch (below(rng, 4)) {
      case 0: {
        int n = 1 + static_cast<int>(below(rng, 3));
        if (static_cast<std::size_t>(n * n) <= budget) return height_graded_pair(n, rng);
        break;
      }
      case 1: {
        int n = 2 + static_cast<int>(below(rng, 2));
        if (static_cast<std::size_t>(n) <= budget) return catalog::cyclic_group(n, catalog::CyclicGrading::Identity);
        break;
      }
      case 2: {
        int n = 1 + static_cast<int>(below(rng, 3));
        if (static_cast<std::size_t>(n) <= budget) return catalog::trivial_groupoid(n);
        break;
      }
      default: {
        int n = 1 + static_cast<int>(below(rng, 2));
        if (static_cast<std::size_t>(n * n) <= budget) return catalog::pair_groupoid(n);
        break;
      }
    }
    if (budget == 0) return catalog::trivial_groupoid(1);
  }
}

// Trivial grading in `target` when the groups differ.
Groupoid unify(const Groupoid& g, const GradeGroup& target) {
  if (g.grade_group() == target) return g;
  std::vector<Grade> grades(g.size(), Grade::zero(target));
  return g.with_grading(target, grades);
}

}  // namespace

Groupoid random_principal_groupoid(Rng& rng, std::size_t max_size) {
  Groupoid g = random_block(rng, max_size);
  // Identity-graded cyclic groups only stay principal with their own grading,
  // so they are combined by product, everything else by disjoint union.
  while (g.size() < max_size && coin(rng)) {
    Groupoid h = random_block(rng, max_size - g.size());
    const bool cyclic_g = g.grade_group().torsion.size() == 1 && g.grade_group().free_rank == 0;
    const bool cyclic_h = h.grade_group().torsion.size() == 1 && h.grade_group().free_rank == 0;
    if (cyclic_g || cyclic_h) {
      if (g.size() * h.size() > max_size) break;
      g = catalog::product(g, h);
    } else {
      if (g.size() + h.size() > max_size) break;
      const auto target = g.grade_group().is_trivial() ? h.grade_group() : g.grade_group();
      g = catalog::disjoint_union(unify(g, target), unify(h, target));
    }
  }
  return g;
}

AlgebraElement random_homogeneous(const GroupoidPtr& g, const Ring& ring, Rng& rng) {
  const auto target = g->grade(static_cast<Groupoid::Id>(below(rng, g->size())));
  AlgebraElement f(g, ring);
  for (Groupoid::Id a = 0; a < g->size(); ++a)
    if (g->grade(a) == target && coin(rng)) f.add_to(a, random_scalar(ring, rng));
  return f;
}

AlgebraElement random_element(const GroupoidPtr& g, const Ring& ring, Rng& rng) {
  AlgebraElement f(g, ring);
  for (Groupoid::Id a = 0; a < g->size(); ++a)
    if (coin(rng)) f.add_to(a, random_scalar(ring, rng));
  return f;
}

Graph random_acyclic_graph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const auto n = 1 + below(rng, max_vertices);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> es;
  if (n > 1) {
    const auto m = below(rng, max_edges + 1);
    for (std::size_t k = 0; k < m; ++k) {
      auto a = below(rng, n), b = below(rng, n);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      es.push_back({"e" + std::to_string(es.size()), vs[a], vs[b]});
    }
  }
  return Graph(vs, es);
}

Graph random_graph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const auto n = 1 + below(rng, max_vertices);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> es;
  const auto m = below(rng, max_edges + 1);
  for (std::size_t k = 0; k < m; ++k)
    es.push_back({"e" + std::to_string(k), vs[below(rng, n)], vs[below(rng, n)]});
  return Graph(vs, es);
}

namespace {

// Random path of length <= max_length ending at `end`, built backwards.
Path path_into(const Graph& g, Graph::Index end, Rng& rng, std::size_t max_length) {
  Path p{end, {}};
  const auto len = below(rng, max_length + 1);
  for (std::size_t k = 0; k < len; ++k) {
    const auto& in = g.in_edges(p.vertex);
    if (in.empty()) break;
    const auto e = in[below(rng, in.size())];
    p.edges.insert(p.edges.begin(), e);
    p.vertex = g.src(e);
  }
  return p;
}

}  // namespace

Monomial random_monomial(const Graph& g, Rng& rng, std::size_t max_length) {
  const auto end = static_cast<Graph::Index>(below(rng, g.vertex_count()));
  return {path_into(g, end, rng, max_length), path_into(g, end, rng, max_length)};
}

LpaElement random_raw_element(const GraphPtr& g, const Ring& ring, Rng& rng, std::size_t terms,
                              std::size_t max_length) {
  LpaElement a(g, ring);
  const auto k = 1 + below(rng, terms);
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = random_unit(ring, rng);
    a.add_term(random_monomial(*g, rng, max_length), c);
  }
  return a;
}

LpaElement random_homogeneous_lpa(const GraphPtr& g, const Ring& ring, Rng& rng, int grade,
                                  std::size_t max_length) {
  LpaElement a(g, ring);
  for (int tries = 0; tries < 12; ++tries) {
    const auto m = random_monomial(*g, rng, max_length);
    if (m.grade() == grade) a = a + LpaElement::raw(g, random_unit(ring, rng), m);
  }
  return normalize(a);
}

}  // namespace testgen
