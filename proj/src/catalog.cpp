#include "grpd/catalog.hpp"

#include <stdexcept>

namespace grpd::catalog {

namespace {

std::string pair_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

GroupoidTables pair_tables(int n) {
  if (n < 1) throw std::invalid_argument("pair groupoid needs n >= 1");
  GroupoidTables t;
  for (int i = 1; i <= n; ++i) {
    t.units.push_back(pair_name(i, i));
    for (int j = 1; j <= n; ++j) {
      const auto a = pair_name(i, j);
      t.morphisms.push_back(a);
      t.source[a] = pair_name(j, j);
      t.target[a] = pair_name(i, i);
      t.inverse[a] = pair_name(j, i);
      for (int k = 1; k <= n; ++k) t.compose.push_back({a, pair_name(j, k), pair_name(i, k)});
    }
  }
  return t;
}

std::string power_name(int k) {
  if (k == 0) return "u";
  if (k == 1) return "t";
  return "t^" + std::to_string(k);
}

}  // namespace

Groupoid pair_groupoid(int n) { return Groupoid::from_tables(pair_tables(n)); }

Groupoid graded_pair_groupoid(int n) {
  auto t = pair_tables(n);
  t.group = GradeGroup{1, {}};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) t.grading[pair_name(i, j)] = {i - j};
  return Groupoid::from_tables(t);
}

Groupoid trivial_groupoid(int n) {
  if (n < 1) throw std::invalid_argument("trivial groupoid needs n >= 1");
  GroupoidTables t;
  for (int i = 1; i <= n; ++i) {
    const auto u = "u" + std::to_string(i);
    t.morphisms.push_back(u);
    t.units.push_back(u);
    t.source[u] = t.target[u] = t.inverse[u] = u;
    t.compose.push_back({u, u, u});
  }
  return Groupoid::from_tables(t);
}

Groupoid cyclic_group(int n, CyclicGrading grading) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  GroupoidTables t;
  t.units = {"u"};
  for (int k = 0; k < n; ++k) {
    const auto a = power_name(k);
    t.morphisms.push_back(a);
    t.source[a] = t.target[a] = "u";
    t.inverse[a] = power_name((n - k) % n);
    for (int l = 0; l < n; ++l) t.compose.push_back({a, power_name(l), power_name((k + l) % n)});
    if (grading == CyclicGrading::Identity) t.grading[a] = {k};
  }
  if (grading == CyclicGrading::Identity) t.group = GradeGroup{0, {n}};
  return Groupoid::from_tables(t);
}

Groupoid disjoint_union(const Groupoid& g, const Groupoid& h) {
  const auto& group = g.has_explicit_grading() ? g.grade_group() : h.grade_group();
  for (const Groupoid* side : {&g, &h})
    if (side->has_explicit_grading() && !(side->grade_group() == group))
      throw std::invalid_argument("disjoint union of groupoids graded in different groups");
  GroupoidTables t;
  const bool graded = g.has_explicit_grading() || h.has_explicit_grading();
  if (graded) t.group = group;
  auto add = [&](const Groupoid& side, const std::string& prefix) {
    auto name = [&](Groupoid::Id a) { return prefix + side.name(a); };
    for (Groupoid::Id a = 0; a < side.size(); ++a) {
      t.morphisms.push_back(name(a));
      if (side.is_unit(a)) t.units.push_back(name(a));
      t.source[name(a)] = name(side.src(a));
      t.target[name(a)] = name(side.dst(a));
      t.inverse[name(a)] = name(side.inv(a));
      if (graded)
        t.grading[name(a)] = side.has_explicit_grading() ? side.grade(a).coords()
                                                         : Grade::zero(group).coords();
      for (Groupoid::Id b = 0; b < side.size(); ++b)
        if (side.composable(a, b)) t.compose.push_back({name(a), name(b), name(side.compose_unchecked(a, b))});
    }
  };
  add(g, "a.");
  add(h, "b.");
  return Groupoid::from_tables(t);
}

Groupoid product(const Groupoid& g, const Groupoid& h) {
  GroupoidTables t;
  const auto& gg = g.grade_group();
  const auto& hg = h.grade_group();
  const bool graded = g.has_explicit_grading() || h.has_explicit_grading();
  // Free coordinates first, then torsion, as GradeGroup requires.
  if (graded) {
    GradeGroup group{gg.free_rank + hg.free_rank, gg.torsion};
    group.torsion.insert(group.torsion.end(), hg.torsion.begin(), hg.torsion.end());
    t.group = group;
  }
  auto name = [&](Groupoid::Id a, Groupoid::Id b) { return g.name(a) + "|" + h.name(b); };
  for (Groupoid::Id a = 0; a < g.size(); ++a)
    for (Groupoid::Id b = 0; b < h.size(); ++b) {
      const auto n = name(a, b);
      t.morphisms.push_back(n);
      if (g.is_unit(a) && h.is_unit(b)) t.units.push_back(n);
      t.source[n] = name(g.src(a), h.src(b));
      t.target[n] = name(g.dst(a), h.dst(b));
      t.inverse[n] = name(g.inv(a), h.inv(b));
      if (graded) {
        const auto& ca = g.grade(a).coords();
        const auto& cb = h.grade(b).coords();
        std::vector<std::int64_t> c(ca.begin(), ca.begin() + gg.free_rank);
        c.insert(c.end(), cb.begin(), cb.begin() + hg.free_rank);
        c.insert(c.end(), ca.begin() + gg.free_rank, ca.end());
        c.insert(c.end(), cb.begin() + hg.free_rank, cb.end());
        t.grading[n] = c;
      }
      for (Groupoid::Id a2 = 0; a2 < g.size(); ++a2)
        for (Groupoid::Id b2 = 0; b2 < h.size(); ++b2)
          if (g.composable(a, a2) && h.composable(b, b2))
            t.compose.push_back({n, name(a2, b2), name(g.compose_unchecked(a, a2), h.compose_unchecked(b, b2))});
    }
  return Groupoid::from_tables(t);
}

Groupoid relabel(const Groupoid& g, const std::map<std::string, std::string>& names) {
  auto t = g.tables();
  auto r = [&](const std::string& s) {
    auto it = names.find(s);
    return it == names.end() ? s : it->second;
  };
  GroupoidTables out;
  out.group = t.group;
  for (const auto& m : t.morphisms) out.morphisms.push_back(r(m));
  for (const auto& u : t.units) out.units.push_back(r(u));
  for (const auto& [k, v] : t.source) out.source[r(k)] = r(v);
  for (const auto& [k, v] : t.target) out.target[r(k)] = r(v);
  for (const auto& [k, v] : t.inverse) out.inverse[r(k)] = r(v);
  for (const auto& [a, b, c] : t.compose) out.compose.push_back({r(a), r(b), r(c)});
  for (const auto& [k, v] : t.grading) out.grading[r(k)] = v;
  return Groupoid::from_tables(out);
}

}  // namespace grpd::catalog
