#include "grpd/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace grpd {

namespace {

std::string join(const ValidationReport& report) {
  std::string s = "invalid groupoid:";
  for (const auto& v : report) {
    s += " " + v.axiom;
    if (!v.witnesses.empty()) {
      s += "(";
      for (std::size_t i = 0; i < v.witnesses.size(); ++i) s += (i ? "," : "") + v.witnesses[i];
      s += ")";
    }
    s += ";";
  }
  return s;
}

}  // namespace

InvalidGroupoid::InvalidGroupoid(ValidationReport report)
    : std::runtime_error(join(report)), report_(std::move(report)) {}

ValidationReport validate(const GroupoidTables& t) {
  ValidationReport report;
  auto add = [&](std::string axiom, std::vector<std::string> w, std::string detail) {
    report.push_back({std::move(axiom), std::move(w), std::move(detail)});
  };

  std::set<std::string> ids;
  for (const auto& m : t.morphisms) {
    if (m.empty()) add("ids", {}, "empty morphism id");
    else if (!ids.insert(m).second) add("ids", {m}, "duplicate morphism id");
  }
  std::set<std::string> units;
  for (const auto& u : t.units) {
    if (!ids.count(u)) add("ids", {u}, "unit is not a declared morphism");
    else if (!units.insert(u).second) add("ids", {u}, "duplicate unit");
  }

  auto check_map = [&](const std::map<std::string, std::string>& m, const char* what,
                       bool into_units) {
    for (const auto& id : ids) {
      auto it = m.find(id);
      if (it == m.end()) {
        add("structure-map", {id}, std::string(what) + " undefined");
      } else if (!ids.count(it->second)) {
        add("structure-map", {id, it->second}, std::string(what) + " names an unknown morphism");
      } else if (into_units && !units.count(it->second)) {
        add("structure-map", {id, it->second}, std::string(what) + " is not a unit");
      }
    }
    for (const auto& [k, v] : m)
      if (!ids.count(k)) add("structure-map", {k}, std::string(what) + " given for unknown id");
  };
  check_map(t.source, "source", true);
  check_map(t.target, "target", true);
  check_map(t.inverse, "inverse", false);

  std::map<std::pair<std::string, std::string>, std::string> product;
  for (const auto& [a, b, ab] : t.compose) {
    if (!ids.count(a) || !ids.count(b) || !ids.count(ab)) {
      add("compose-reference", {a, b, ab}, "compose entry names an unknown morphism");
      continue;
    }
    auto [it, fresh] = product.emplace(std::make_pair(a, b), ab);
    if (!fresh) add("compose-duplicate", {a, b}, "pair composed more than once");
  }
  // Deeper axioms need total structure maps.
  if (!report.empty()) return report;

  auto src = [&](const std::string& a) -> const std::string& { return t.source.at(a); };
  auto dst = [&](const std::string& a) -> const std::string& { return t.target.at(a); };
  auto prod = [&](const std::string& a, const std::string& b) -> const std::string* {
    auto it = product.find({a, b});
    return it == product.end() ? nullptr : &it->second;
  };

  for (const auto& a : ids) {
    for (const auto& b : ids) {
      const bool should = src(a) == dst(b);
      const std::string* ab = prod(a, b);
      if (should && !ab) add("composability", {a, b}, "composable pair has no product");
      if (!should && ab) add("composability", {a, b}, "product given for a non-composable pair");
      if (ab && (dst(*ab) != dst(a) || src(*ab) != src(b)))
        add("compose-endpoints", {a, b, *ab}, "endpoints of the product are wrong");
    }
  }

  for (const auto& u : units) {
    if (src(u) != u || dst(u) != u) add("unit", {u}, "unit is not its own source and target");
    for (const auto& b : ids) {
      if (const auto* ub = prod(u, b); ub && *ub != b) add("unit", {u, b}, "u·b != b");
      if (const auto* bu = prod(b, u); bu && *bu != b) add("unit", {b, u}, "b·u != b");
    }
  }

  for (const auto& a : ids) {
    const auto& ai = t.inverse.at(a);
    const auto* l = prod(a, ai);
    const auto* r = prod(ai, a);
    if (!l || *l != dst(a) || !r || *r != src(a))
      add("inverse", {a}, "a·inv(a) must be dst(a) and inv(a)·a must be src(a)");
  }

  for (const auto& [ab_key, ab] : product) {
    const auto& [a, b] = ab_key;
    for (const auto& c : ids) {
      const auto* bc = prod(b, c);
      if (!bc) continue;
      const auto* ab_c = prod(ab, c);
      const auto* a_bc = prod(a, *bc);
      if (!ab_c || !a_bc || *ab_c != *a_bc)
        add("associativity", {a, b, c}, "(ab)c != a(bc)");
    }
  }

  if (t.group) {
    const auto& g = *t.group;
    bool group_ok = g.free_rank >= 0;
    for (auto m : g.torsion) group_ok = group_ok && m >= 1;
    if (!group_ok) {
      add("grading-group", {}, "free rank must be >= 0 and torsion moduli >= 1");
      return report;
    }
    std::map<std::string, Grade> grade;
    for (const auto& a : ids) {
      auto it = t.grading.find(a);
      if (it == t.grading.end()) {
        add("grading-map", {a}, "morphism has no grade");
      } else if (it->second.size() != g.rank()) {
        add("grading-map", {a}, "grade has the wrong number of coordinates");
      } else {
        grade.emplace(a, Grade::of(g, it->second));
      }
    }
    for (const auto& [k, v] : t.grading)
      if (!ids.count(k)) add("grading-map", {k}, "grade given for unknown id");
    if (grade.size() == ids.size()) {
      for (const auto& [ab_key, ab] : product) {
        const auto& [a, b] = ab_key;
        if (grade.at(a) + grade.at(b) != grade.at(ab))
          add("grading-cocycle", {a, b}, "c(ab) != c(a) + c(b)");
      }
    }
  } else if (!t.grading.empty()) {
    add("grading-map", {}, "grades given without a grading group");
  }
  return report;
}

Groupoid Groupoid::from_tables(const GroupoidTables& t) {
  auto report = validate(t);
  if (!report.empty()) throw InvalidGroupoid(std::move(report));

  Groupoid g;
  g.names_ = t.morphisms;
  std::sort(g.names_.begin(), g.names_.end());
  const auto n = g.names_.size();
  for (Id i = 0; i < n; ++i) g.index_.emplace(g.names_[i], i);

  g.unit_flag_.assign(n, false);
  for (const auto& u : t.units) g.unit_flag_[g.index_.at(u)] = true;
  for (Id i = 0; i < n; ++i)
    if (g.unit_flag_[i]) g.units_.push_back(i);

  g.src_.resize(n);
  g.dst_.resize(n);
  g.inv_.resize(n);
  for (Id i = 0; i < n; ++i) {
    g.src_[i] = g.index_.at(t.source.at(g.names_[i]));
    g.dst_[i] = g.index_.at(t.target.at(g.names_[i]));
    g.inv_[i] = g.index_.at(t.inverse.at(g.names_[i]));
  }
  g.table_.assign(n * n, kNone);
  for (const auto& [a, b, ab] : t.compose)
    g.table_[g.index_.at(a) * n + g.index_.at(b)] = g.index_.at(ab);

  g.explicit_grading_ = t.group.has_value();
  g.group_ = t.group.value_or(GradeGroup{});
  g.grades_.reserve(n);
  for (Id i = 0; i < n; ++i) {
    if (t.group) g.grades_.push_back(Grade::of(g.group_, t.grading.at(g.names_[i])));
    else g.grades_.push_back(Grade::zero(g.group_));
  }
  return g;
}

std::optional<Groupoid::Id> Groupoid::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Groupoid::Id Groupoid::at(const std::string& name) const {
  auto id = find(name);
  if (!id) throw std::out_of_range("unknown morphism id: " + name);
  return *id;
}

std::optional<Groupoid::Id> Groupoid::compose(Id a, Id b) const {
  if (!composable(a, b)) return std::nullopt;
  return table_[a * names_.size() + b];
}

Groupoid Groupoid::with_grading(const GradeGroup& group, const std::vector<Grade>& grades) const {
  auto t = tables();
  t.group = group;
  t.grading.clear();
  for (Id i = 0; i < size(); ++i) t.grading[names_[i]] = grades.at(i).coords();
  return from_tables(t);
}

Groupoid Groupoid::with_trivial_grading() const {
  Groupoid g = *this;
  g.group_ = GradeGroup{};
  g.explicit_grading_ = false;
  g.grades_.assign(size(), Grade{});
  return g;
}

GroupoidTables Groupoid::tables() const {
  GroupoidTables t;
  t.morphisms = names_;
  for (auto u : units_) t.units.push_back(names_[u]);
  const auto n = size();
  for (Id i = 0; i < n; ++i) {
    t.source[names_[i]] = names_[src_[i]];
    t.target[names_[i]] = names_[dst_[i]];
    t.inverse[names_[i]] = names_[inv_[i]];
    for (Id j = 0; j < n; ++j)
      if (composable(i, j)) t.compose.push_back({names_[i], names_[j], names_[table_[i * n + j]]});
  }
  if (explicit_grading_) {
    t.group = group_;
    for (Id i = 0; i < n; ++i) t.grading[names_[i]] = grades_[i].coords();
  }
  return t;
}

MorphSet make_set(std::vector<Groupoid::Id> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

MorphSet all_units(const Groupoid& g) { return g.units(); }

bool is_bisection(const Groupoid& g, const MorphSet& set) {
  std::set<Groupoid::Id> srcs, dsts;
  for (auto a : set) {
    if (!srcs.insert(g.src(a)).second) return false;
    if (!dsts.insert(g.dst(a)).second) return false;
  }
  return true;
}

Bisection::Bisection(const Groupoid& g, MorphSet elems) : elems_(make_set(std::move(elems))) {
  for (auto a : elems_)
    if (a >= g.size()) throw NotABisection("morphism index out of range");
  if (!is_bisection(g, elems_)) throw NotABisection("source or target is not injective on the set");
}

bool Bisection::contains(Groupoid::Id a) const {
  return std::binary_search(elems_.begin(), elems_.end(), a);
}

MorphSet set_product(const Groupoid& g, const MorphSet& u, const MorphSet& v) {
  std::vector<Groupoid::Id> out;
  for (auto a : u)
    for (auto b : v)
      if (g.composable(a, b)) out.push_back(g.compose_unchecked(a, b));
  return make_set(std::move(out));
}

Bisection compose_sets(const Groupoid& g, const MorphSet& u, const MorphSet& v) {
  auto uv = set_product(g, u, v);
  if (!is_bisection(g, uv)) throw NotABisection("set product is not a bisection");
  return Bisection(g, std::move(uv));
}

Bisection compose_sets(const Groupoid& g, const Bisection& u, const Bisection& v) {
  return compose_sets(g, u.elems(), v.elems());
}

MorphSet invert_set(const Groupoid& g, const MorphSet& u) {
  std::vector<Groupoid::Id> out;
  out.reserve(u.size());
  for (auto a : u) out.push_back(g.inv(a));
  return make_set(std::move(out));
}

Bisection invert_set(const Groupoid& g, const Bisection& u) {
  return Bisection(g, invert_set(g, u.elems()));
}

MorphSet src_set(const Groupoid& g, const MorphSet& u) {
  std::vector<Groupoid::Id> out;
  for (auto a : u) out.push_back(g.src(a));
  return make_set(std::move(out));
}

MorphSet dst_set(const Groupoid& g, const MorphSet& u) {
  std::vector<Groupoid::Id> out;
  for (auto a : u) out.push_back(g.dst(a));
  return make_set(std::move(out));
}

bool is_principal_kernel(const Groupoid& g) {
  for (Groupoid::Id a = 0; a < g.size(); ++a)
    if (!g.is_unit(a) && g.src(a) == g.dst(a) && g.grade(a).is_zero()) return false;
  return true;
}

std::optional<Grade> common_grade(const Groupoid& g, const MorphSet& set) {
  if (set.empty()) return std::nullopt;
  const Grade& first = g.grade(set.front());
  for (auto a : set)
    if (g.grade(a) != first) return std::nullopt;
  return first;
}

std::vector<HomogeneousBisection> homogeneous_bisections(const Groupoid& g, std::uint64_t cap) {
  std::map<Grade, std::vector<Groupoid::Id>> fibers;
  for (Groupoid::Id a = 0; a < g.size(); ++a) fibers[g.grade(a)].push_back(a);
  std::size_t widest = 0;
  for (const auto& [grade, fiber] : fibers) widest = std::max(widest, fiber.size());
  if (widest >= 64 || (std::uint64_t{1} << widest) > cap)
    throw EnumerationTooLarge("homogeneous bisection enumeration too large: fiber of size " +
                              std::to_string(widest));

  std::vector<HomogeneousBisection> out;
  out.push_back({Bisection{}, std::nullopt});
  std::vector<bool> src_used(g.size()), dst_used(g.size());
  for (const auto& [grade, fiber] : fibers) {
    std::vector<MorphSet> found;
    MorphSet current;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == fiber.size()) {
        if (!current.empty()) found.push_back(current);
        return;
      }
      walk(i + 1);
      const auto a = fiber[i];
      if (src_used[g.src(a)] || dst_used[g.dst(a)]) return;
      src_used[g.src(a)] = dst_used[g.dst(a)] = true;
      current.push_back(a);
      walk(i + 1);
      current.pop_back();
      src_used[g.src(a)] = dst_used[g.dst(a)] = false;
    };
    walk(0);
    std::sort(found.begin(), found.end());
    for (auto& s : found) out.push_back({Bisection(g, std::move(s)), grade});
  }
  return out;
}

std::optional<std::string> check_isomorphism(const Groupoid& g, const Groupoid& h,
                                             const GroupoidMap& map) {
  using Id = Groupoid::Id;
  if (g.size() != h.size()) return "morphism counts differ";
  if (map.size() != g.size()) return "map has the wrong length";
  if (g.grade_group() != h.grade_group()) return "grading groups differ";
  std::vector<bool> hit(h.size(), false);
  for (auto b : map) {
    if (b >= h.size()) return "map leaves the target groupoid";
    if (hit[b]) return "map is not injective at " + h.name(b);
    hit[b] = true;
  }
  for (Id a = 0; a < g.size(); ++a) {
    const Id b = map[a];
    if (g.is_unit(a) != h.is_unit(b)) return "unit mismatch at " + g.name(a);
    if (map[g.src(a)] != h.src(b)) return "source mismatch at " + g.name(a);
    if (map[g.dst(a)] != h.dst(b)) return "target mismatch at " + g.name(a);
    if (map[g.inv(a)] != h.inv(b)) return "inverse mismatch at " + g.name(a);
    if (g.grade(a) != h.grade(b)) return "grade mismatch at " + g.name(a);
  }
  for (Id a = 0; a < g.size(); ++a) {
    for (Id c = 0; c < g.size(); ++c) {
      const bool gc = g.composable(a, c);
      if (gc != h.composable(map[a], map[c]))
        return "composability mismatch at (" + g.name(a) + "," + g.name(c) + ")";
      if (gc && map[g.compose_unchecked(a, c)] != h.compose_unchecked(map[a], map[c]))
        return "product mismatch at (" + g.name(a) + "," + g.name(c) + ")";
    }
  }
  return std::nullopt;
}

namespace {

class IsoSearch {
 public:
  using Id = Groupoid::Id;

  IsoSearch(const Groupoid& g, const Groupoid& h, std::uint64_t budget)
      : g_(g), h_(h), budget_(budget), map_(g.size(), Groupoid::kNone),
        used_(h.size(), false) {
    for (Id a = 0; a < g.size(); ++a) g_sig_.push_back(signature(g, a));
    for (Id b = 0; b < h.size(); ++b) h_sig_.push_back(signature(h, b));
    for (auto u : g.units()) order_.push_back(u);
    for (Id a = 0; a < g.size(); ++a)
      if (!g.is_unit(a)) order_.push_back(a);
  }

  bool feasible() const {
    if (g_.size() != h_.size() || g_.units().size() != h_.units().size()) return false;
    if (g_.grade_group() != h_.grade_group()) return false;
    auto profile = [](const Groupoid& x) {
      std::multiset<std::pair<Grade, std::vector<std::size_t>>> p;
      for (Id a = 0; a < x.size(); ++a) p.insert({x.grade(a), signature(x, a)});
      return p;
    };
    return profile(g_) == profile(h_);
  }

  /// Runs the search; `on_found` returns true to stop.
  void run(const std::function<bool(const GroupoidMap&)>& on_found) {
    on_found_ = &on_found;
    stopped_ = false;
    descend(0);
  }

 private:
  // Counts that any isomorphism must preserve.
  static std::vector<std::size_t> signature(const Groupoid& x, Id a) {
    std::size_t out_deg = 0, in_deg = 0, loops = 0;
    const Id s = x.src(a), d = x.dst(a);
    for (Id b = 0; b < x.size(); ++b) {
      if (x.src(b) == s) ++out_deg;
      if (x.dst(b) == d) ++in_deg;
      if (x.src(b) == s && x.dst(b) == s) ++loops;
    }
    return {x.is_unit(a) ? 1u : 0u, s == d ? 1u : 0u, out_deg, in_deg, loops};
  }

  bool consistent(Id a, Id b) const {
    if (g_.is_unit(a) != h_.is_unit(b) || g_.grade(a) != h_.grade(b)) return false;
    if (g_sig_[a] != h_sig_[b]) return false;
    if (!g_.is_unit(a)) {
      if (map_[g_.src(a)] != h_.src(b) || map_[g_.dst(a)] != h_.dst(b)) return false;
      const Id ai = g_.inv(a);
      if (map_[ai] != Groupoid::kNone && map_[ai] != h_.inv(b)) return false;
      if (ai == a && h_.inv(b) != b) return false;
    }
    for (Id c = 0; c < g_.size(); ++c) {
      const Id mc = map_[c];
      if (mc == Groupoid::kNone) continue;
      if (g_.composable(a, c)) {
        const Id ac = map_[g_.compose_unchecked(a, c)];
        if (ac != Groupoid::kNone && ac != h_.compose_unchecked(b, mc)) return false;
      }
      if (g_.composable(c, a)) {
        const Id ca = map_[g_.compose_unchecked(c, a)];
        if (ca != Groupoid::kNone && ca != h_.compose_unchecked(mc, b)) return false;
      }
    }
    return true;
  }

  void descend(std::size_t depth) {
    if (stopped_) return;
    if (depth == order_.size()) {
      if (!check_isomorphism(g_, h_, map_)) stopped_ = (*on_found_)(map_);
      return;
    }
    const Id a = order_[depth];
    for (Id b = 0; b < h_.size() && !stopped_; ++b) {
      if (used_[b]) continue;
      if (++steps_ > budget_)
        throw SearchBudgetExceeded("isomorphism search exceeded its budget of " +
                                   std::to_string(budget_) + " steps");
      if (!consistent(a, b)) continue;
      map_[a] = b;
      used_[b] = true;
      descend(depth + 1);
      map_[a] = Groupoid::kNone;
      used_[b] = false;
    }
  }

  const Groupoid& g_;
  const Groupoid& h_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  GroupoidMap map_;
  std::vector<bool> used_;
  std::vector<Id> order_;
  std::vector<std::vector<std::size_t>> g_sig_, h_sig_;
  const std::function<bool(const GroupoidMap&)>* on_found_ = nullptr;
  bool stopped_ = false;
};

}  // namespace

std::optional<GroupoidMap> groupoid_isomorphic(const Groupoid& g, const Groupoid& h,
                                               std::uint64_t budget) {
  IsoSearch search(g, h, budget);
  if (!search.feasible()) return std::nullopt;
  std::optional<GroupoidMap> found;
  search.run([&](const GroupoidMap& m) {
    found = m;
    return true;
  });
  return found;
}

std::vector<GroupoidMap> groupoid_automorphisms(const Groupoid& g, std::size_t limit,
                                                std::uint64_t budget) {
  std::vector<GroupoidMap> out;
  if (limit == 0) return out;
  GroupoidMap identity(g.size());
  for (Groupoid::Id a = 0; a < g.size(); ++a) identity[a] = a;
  out.push_back(identity);
  if (limit == 1) return out;
  IsoSearch search(g, g, budget);
  search.run([&](const GroupoidMap& m) {
    if (m == identity) return false;
    out.push_back(m);
    return out.size() >= limit;
  });
  return out;
}

}  // namespace grpd
