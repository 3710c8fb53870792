#include "grpd/reconstruction.hpp"

#include <algorithm>
#include <set>

#include "grpd/linalg.hpp"

namespace grpd {

namespace {

std::string support_name(const RingPresentation& p, const Vec& x) {
  std::string s;
  for (auto i : p.support(x)) s += (s.empty() ? "" : "+") + p.basis[i];
  return s.empty() ? "0" : s;
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Calls `visit` on every nonzero vector supported in `coords` over F_p.
template <class Visit>
void for_each_vector(const RingPresentation& p, const std::vector<std::size_t>& coords, Visit visit) {
  const auto q = p.ring.characteristic();
  std::vector<std::int64_t> digits(coords.size(), 0);
  Vec v = p.zero();
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == q) {
      digits[i] = 0;
      v[coords[i]] = RingElement::zero(p.ring);
      ++i;
    }
    if (i == digits.size()) return;
    v[coords[i]] = RingElement(p.ring, digits[i]);
    visit(v);
  }
}

}  // namespace

std::vector<Character> stone_spectrum(const RingPresentation& p, std::uint64_t cap) {
  std::vector<Vec> atoms;
  const auto& d = p.diagonal;
  const bool enumerate =
      p.ring.is_finite() &&
      checked_power(static_cast<std::uint64_t>(p.ring.characteristic()), d.size(), cap) <= cap;
  if (enumerate) {
    std::vector<Vec> idempotents;
    for_each_vector(p, d, [&](const Vec& v) {
      if (p.multiply(v, v) == v) idempotents.push_back(v);
    });
    for (const auto& a : idempotents) {
      bool minimal = true;
      for (const auto& e : idempotents) {
        const auto ae = p.multiply(a, e);
        if (!p.is_zero(ae) && ae != a) {
          minimal = false;
          break;
        }
      }
      if (minimal) atoms.push_back(a);
    }
    if (checked_power(2, atoms.size(), cap) != idempotents.size() + 1)
      throw PresentationError("idempotents of the diagonal do not form a finite Boolean algebra");
  } else {
    for (auto i : d) {
      const auto bi = p.unit_vector(i);
      const auto sq = p.multiply(bi, bi);
      const auto s = sq[i];
      if (!ring_is_unit(s) || p.scale(bi, s) != sq)
        throw PresentationError("diagonal basis element " + p.basis[i] +
                                " is not an idempotent up to a unit; atoms over an infinite ring "
                                "need an orthogonal idempotent basis");
      for (auto j : d)
        if (j != i && !p.is_zero(p.multiply(bi, p.unit_vector(j))))
          throw PresentationError("diagonal basis elements " + p.basis[i] + ", " + p.basis[j] +
                                  " are not orthogonal");
      atoms.push_back(p.scale(bi, ring_unit_inverse(s)));
    }
  }
  std::sort(atoms.begin(), atoms.end(), [&](const Vec& a, const Vec& b) {
    return p.support(a) < p.support(b);
  });
  std::vector<Character> out;
  for (auto& a : atoms) out.push_back({a, support_name(p, a)});
  return out;
}

bool evaluate(const RingPresentation& p, const Character& x, const Vec& q) {
  return p.multiply(x.atom, q) == x.atom;
}

std::optional<Vec> normaliser_partner(const RingPresentation& p,
                                      const std::vector<Character>& atoms, const Vec& n) {
  if (p.is_zero(n)) return p.zero();
  const auto grade = p.grade_of(n);
  if (!grade) return std::nullopt;

  // Rows and columns of n: a bisection meets each atom at most once on each side.
  Vec e1 = p.zero(), e2 = p.zero();
  std::vector<Vec> left;
  for (const auto& a : atoms) {
    auto an = p.multiply(a.atom, n);
    if (!p.is_zero(an)) {
      e2 = p.add(e2, a.atom);
      left.push_back(std::move(an));
    }
    if (!p.is_zero(p.multiply(n, a.atom))) e1 = p.add(e1, a.atom);
  }
  for (const auto& an : left) {
    int hits = 0;
    for (const auto& b : atoms)
      if (!p.is_zero(p.multiply(an, b.atom)) && ++hits > 1) return std::nullopt;
  }

  std::vector<std::size_t> unknowns;
  for (std::size_t j = 0; j < p.dim(); ++j)
    if (p.grades[j] == -*grade) unknowns.push_back(j);
  const auto dim = p.dim();
  const auto field = linalg::field_of(p.ring);
  const auto zero = RingElement::zero(field);
  linalg::Matrix a(4 * dim, linalg::Vector(unknowns.size(), zero));
  linalg::Vector rhs(4 * dim, zero);
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    const auto j = unknowns[c];
    const auto bj = p.unit_vector(j);
    const Vec cols[4] = {p.multiply(n, bj), p.multiply(bj, n), p.multiply(e1, bj),
                         p.multiply(bj, e2)};
    for (int block = 0; block < 4; ++block)
      for (std::size_t k = 0; k < dim; ++k) {
        auto v = linalg::to_field(cols[block][k]);
        if (block >= 2 && k == j) v -= RingElement::one(field);
        a[block * dim + k][c] = v;
      }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    rhs[k] = linalg::to_field(e2[k]);
    rhs[dim + k] = linalg::to_field(e1[k]);
  }
  auto sol = linalg::solve(field, std::move(a), std::move(rhs), unknowns.size());
  if (!sol) return std::nullopt;
  if (sol->nullity != 0) throw std::logic_error("normaliser partner is not unique");

  Vec m = p.zero();
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    const auto& v = sol->particular[c];
    if (p.ring.kind() == Ring::Kind::Integers) {
      if (denominator(v.value()) != 1) return std::nullopt;
      m[unknowns[c]] = RingElement(p.ring, v.value());
    } else {
      m[unknowns[c]] = v;
    }
  }
  if (p.multiply(p.multiply(n, m), n) != n || p.multiply(p.multiply(m, n), m) != m)
    return std::nullopt;
  for (auto d : p.diagonal) {
    const auto dv = p.unit_vector(d);
    if (!p.in_diagonal(p.multiply(p.multiply(m, dv), n)) ||
        !p.in_diagonal(p.multiply(p.multiply(n, dv), m)))
      return std::nullopt;
  }
  return m;
}

std::string class_signature(const RingPresentation& p, const std::vector<Character>& atoms,
                            const Vec& n, const Vec& partner) {
  const auto grade = p.grade_of(n);
  std::string s = grade ? grade->to_string() : "none";
  for (const auto& a : atoms) {
    s += "|" + p.to_string(p.multiply(p.multiply(partner, a.atom), n));
    s += "|" + p.to_string(p.multiply(p.multiply(n, a.atom), partner));
  }
  return s;
}

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Auto: return "auto";
    case SearchMode::BlackBox: return "black-box";
    case SearchMode::WhiteBox: return "white-box";
  }
  return "?";
}

namespace {

bool all_ones(const Vec& x) {
  return std::all_of(x.begin(), x.end(), [](const RingElement& v) { return v.is_zero() || v.is_one(); });
}

std::uint64_t black_box_count(const RingPresentation& p, std::uint64_t cap) {
  if (!p.ring.is_finite()) return cap + 1;
  std::map<Grade, std::size_t> fibers;
  for (const auto& g : p.grades) ++fibers[g];
  std::uint64_t total = 0;
  for (const auto& [g, size] : fibers) {
    total += checked_power(static_cast<std::uint64_t>(p.ring.characteristic()), size, cap);
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

NormaliserSearch find_normalisers(const RingPresentation& p, const std::vector<Character>& atoms,
                                  SearchMode mode, std::uint64_t cap) {
  NormaliserSearch s;
  const bool feasible = black_box_count(p, cap) <= cap;
  if (mode == SearchMode::Auto) mode = feasible ? SearchMode::BlackBox : SearchMode::WhiteBox;
  s.mode = mode;

  struct Draft {
    Vec rep, partner;
    std::size_t members = 0;
  };
  std::map<std::string, Draft> drafts;
  auto record = [&](const Vec& n, const Vec& m) {
    ++s.normalisers_seen;
    auto [it, fresh] = drafts.try_emplace(class_signature(p, atoms, n, m));
    auto& d = it->second;
    if (fresh || (all_ones(n) && !all_ones(d.rep))) {
      d.rep = n;
      d.partner = m;
    }
    ++d.members;
  };

  if (mode == SearchMode::BlackBox) {
    if (!p.ring.is_finite()) throw EnumerationTooLarge("black-box normaliser search needs a prime field");
    if (!feasible)
      throw EnumerationTooLarge("black-box normaliser search exceeds the cap of " + std::to_string(cap));
    record(p.zero(), p.zero());
    std::map<Grade, std::vector<std::size_t>> fibers;
    for (std::size_t i = 0; i < p.dim(); ++i) fibers[p.grades[i]].push_back(i);
    for (const auto& [g, coords] : fibers)
      for_each_vector(p, coords, [&](const Vec& n) {
        if (auto m = normaliser_partner(p, atoms, n)) record(n, *m);
      });
  } else {
    if (p.provenance.empty())
      throw EnumerationTooLarge("no provenance for white-box search and black-box search is infeasible");
    for (const auto& n : p.provenance) {
      auto m = normaliser_partner(p, atoms, n);
      if (!m) throw PresentationError("provenance element is not a normaliser: " + p.to_string(n));
      record(n, *m);
    }
  }

  std::vector<std::pair<std::string, Draft*>> order;
  for (auto& [sig, d] : drafts) order.emplace_back(sig, &d);
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    auto key = [&](const Draft& d) {
      std::vector<std::string> ids;
      for (auto i : p.support(d.rep)) ids.push_back(p.basis[i]);
      return std::make_pair(ids, p.grade_of(d.rep));
    };
    return key(*a.second) < key(*b.second);
  });
  for (const auto& [sig, d] : order) {
    s.by_signature.emplace(sig, s.classes.size());
    s.classes.push_back({d->rep, d->partner, p.grade_of(d->rep), p.support(d->rep), d->members});
  }
  return s;
}

std::size_t class_of(const NormaliserSearch& s, const RingPresentation& p,
                     const std::vector<Character>& atoms, const Vec& n, const Vec& partner) {
  auto it = s.by_signature.find(class_signature(p, atoms, n, partner));
  if (it == s.by_signature.end())
    throw std::logic_error("normaliser class not found by the search: " + p.to_string(n));
  return it->second;
}

MasaReport diagonal_masa(const RingPresentation& p) {
  std::vector<std::size_t> zero_grade;
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (p.grades[i].is_zero()) zero_grade.push_back(i);
  const auto field = linalg::field_of(p.ring);
  linalg::Matrix a;
  for (auto d : p.diagonal) {
    const auto dv = p.unit_vector(d);
    std::vector<Vec> cols;
    for (auto j : zero_grade) {
      const auto bj = p.unit_vector(j);
      cols.push_back(p.add(p.multiply(bj, dv), p.scale(p.multiply(dv, bj), -RingElement::one(p.ring))));
    }
    for (std::size_t k = 0; k < p.dim(); ++k) {
      linalg::Vector row;
      for (const auto& c : cols) row.push_back(linalg::to_field(c[k]));
      a.push_back(std::move(row));
    }
  }
  MasaReport r;
  r.diagonal_dim = p.diagonal.size();
  r.commutant_dim = zero_grade.size() - linalg::rank(field, std::move(a), zero_grade.size());
  return r;
}

std::optional<std::size_t> act(const RingPresentation& p, const std::vector<Character>& atoms,
                               const PresentedClass& cls, std::size_t x) {
  if (!evaluate(p, atoms[x], p.multiply(cls.partner, cls.representative))) return std::nullopt;
  std::optional<std::size_t> image;
  for (std::size_t y = 0; y < atoms.size(); ++y) {
    const auto conj = p.multiply(p.multiply(cls.partner, atoms[y].atom), cls.representative);
    if (evaluate(p, atoms[x], conj)) {
      if (image) throw std::logic_error("action does not select a single character");
      image = y;
    }
  }
  if (!image) throw std::logic_error("action leaves the spectrum");
  return image;
}

GermGroupoid germ_groupoid(const RingPresentation& p, const std::vector<Character>& atoms,
                           const NormaliserSearch& search) {
  const auto& cls = search.classes;
  auto germ_key = [&](const Vec& f, const Vec& fs, std::size_t x) {
    return class_of(search, p, atoms, p.multiply(f, atoms[x].atom), p.multiply(atoms[x].atom, fs));
  };

  struct Info {
    std::size_t src, dst;
  };
  std::map<std::size_t, Info> germs;
  GermGroupoid out;
  std::vector<std::vector<std::optional<std::size_t>>> phi(cls.size());
  for (std::size_t c = 0; c < cls.size(); ++c) {
    for (std::size_t x = 0; x < atoms.size(); ++x) {
      phi[c].push_back(act(p, atoms, cls[c], x));
      if (!phi[c].back()) continue;
      ++out.germ_pairs;
      const auto k = germ_key(cls[c].representative, cls[c].partner, x);
      auto [it, fresh] = germs.try_emplace(k, Info{x, *phi[c].back()});
      if (!fresh && (it->second.src != x || it->second.dst != *phi[c].back()))
        throw std::logic_error("germ endpoints depend on the representative");
    }
  }

  // Names from the support of each germ's class representative.
  std::map<std::size_t, std::string> name;
  std::set<std::string> taken;
  for (const auto& [k, info] : germs) {
    auto base = support_name(p, cls[k].representative);
    auto n = base;
    for (int i = 2; taken.count(n); ++i) n = base + "#" + std::to_string(i);
    taken.insert(n);
    name[k] = n;
  }

  std::vector<std::size_t> unit_class(atoms.size());
  for (std::size_t x = 0; x < atoms.size(); ++x) {
    unit_class[x] = class_of(search, p, atoms, atoms[x].atom, atoms[x].atom);
    if (!germs.count(unit_class[x])) throw std::logic_error("atom is not a germ");
  }

  GroupoidTables t;
  for (const auto& [k, info] : germs) {
    const auto& n = name[k];
    t.morphisms.push_back(n);
    t.source[n] = name[unit_class[info.src]];
    t.target[n] = name[unit_class[info.dst]];
    const auto inv = class_of(search, p, atoms, cls[k].partner, cls[k].representative);
    if (!germs.count(inv)) throw std::logic_error("inverse of a germ is not a germ");
    t.inverse[n] = name[inv];
  }
  for (auto c : unit_class) t.units.push_back(name[c]);
  for (const auto& [k1, i1] : germs)
    for (const auto& [k2, i2] : germs) {
      if (i1.src != i2.dst) continue;
      const auto k = class_of(search, p, atoms, p.multiply(cls[k1].representative, cls[k2].representative),
                              p.multiply(cls[k2].partner, cls[k1].partner));
      if (!germs.count(k)) throw std::logic_error("product of germs is not a germ");
      t.compose.push_back({name[k1], name[k2], name[k]});
    }
  if (!p.group.is_trivial()) {
    t.group = p.group;
    for (const auto& [k, info] : germs) t.grading[name[k]] = cls[k].grade->coords();
  }

  // [f, φ_h(x)][h, x] = [fh, x] on every pair of representatives.
  const std::size_t limit = std::min<std::size_t>(cls.size(), 64);
  for (std::size_t c1 = 0; c1 < limit; ++c1)
    for (std::size_t c2 = 0; c2 < limit; ++c2)
      for (std::size_t x = 0; x < atoms.size(); ++x) {
        const auto y = phi[c2][x];
        if (!y || !phi[c1][*y]) continue;
        const auto left = germ_key(cls[c1].representative, cls[c1].partner, *y);
        const auto right = germ_key(cls[c2].representative, cls[c2].partner, x);
        const auto prod = germ_key(p.multiply(cls[c1].representative, cls[c2].representative),
                                   p.multiply(cls[c2].partner, cls[c1].partner), x);
        const auto via_table = class_of(
            search, p, atoms, p.multiply(cls[left].representative, cls[right].representative),
            p.multiply(cls[right].partner, cls[left].partner));
        if (prod != via_table) throw std::logic_error("germ composition depends on the representative");
        const auto inv = germ_key(cls[c2].partner, cls[c2].representative, *phi[c2][x]);
        if (inv != class_of(search, p, atoms, cls[right].partner, cls[right].representative))
          throw std::logic_error("germ inverse depends on the representative");
        ++out.checked_compositions;
      }

  out.groupoid = Groupoid::from_tables(t);
  out.germ_class.resize(out.groupoid.size());
  for (const auto& [k, info] : germs) {
    const auto id = out.groupoid.at(name[k]);
    out.germ_class[id] = k;
    out.germ_of_class[k] = id;
  }
  for (auto c : unit_class) out.unit_character.push_back(out.germ_of_class.at(c));
  return out;
}

PipelineError::PipelineError(std::string stage, const std::string& message, bool hypothesis,
                             std::vector<StageResult> completed)
    : std::runtime_error(stage + ": " + message),
      stage_(std::move(stage)),
      message_(message),
      hypothesis_(hypothesis),
      completed_(std::move(completed)) {}

namespace {

class StageRunner {
 public:
  explicit StageRunner(std::vector<StageResult>* log) : log_(log ? log : &own_) {}

  template <class F>
  auto run(const std::string& stage, F f) {
    try {
      return f();
    } catch (const PipelineError&) {
      throw;
    } catch (const HypothesisViolated& e) {
      throw PipelineError(stage, e.what(), true, *log_);
    } catch (const std::exception& e) {
      throw PipelineError(stage, e.what(), false, *log_);
    }
  }

  void done(const std::string& stage, std::string detail) { log_->push_back({stage, std::move(detail)}); }
  void fail(const std::string& stage, const std::string& message, bool hypothesis = false) {
    throw PipelineError(stage, message, hypothesis, *log_);
  }
  const std::vector<StageResult>& log() const { return *log_; }

 private:
  std::vector<StageResult> own_;
  std::vector<StageResult>* log_;
};

}  // namespace

Reconstruction reconstruct(const RingPresentation& p, const ReconstructOptions& opts,
                           std::vector<StageResult>* log) {
  StageRunner r(log);
  Reconstruction out;

  auto problems = check_presentation(p);
  if (!problems.empty()) r.fail("presentation", problems.front());
  r.done("presentation", "dimension " + std::to_string(p.dim()));

  out.spectrum = r.run("spectrum", [&] { return stone_spectrum(p, opts.cap); });
  r.done("spectrum", std::to_string(out.spectrum.size()) + " characters");

  Vec total = p.zero();
  for (const auto& x : out.spectrum) total = p.add(total, x.atom);
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const auto b = p.unit_vector(i);
    if (p.multiply(total, b) != b || p.multiply(b, total) != b)
      r.fail("local-units", "the atoms of E(D) do not sum to a unit for " + p.basis[i], true);
  }
  r.done("local-units", "atoms sum to the identity");

  out.masa = r.run("masa", [&] { return diagonal_masa(p); });
  if (!out.masa.holds())
    r.fail("masa",
           "hypothesis violated: diagonal is not maximal abelian in the grade-zero component "
           "(commutant dimension " + std::to_string(out.masa.commutant_dim) + " > " +
               std::to_string(out.masa.diagonal_dim) + ")",
           true);
  r.done("masa", "commutant dimension " + std::to_string(out.masa.commutant_dim));

  out.search = r.run("normalisers", [&] { return find_normalisers(p, out.spectrum, opts.mode, opts.cap); });
  r.done("normalisers", std::to_string(out.search.classes.size()) + " classes from " +
                            std::to_string(out.search.normalisers_seen) + " normalisers (" +
                            to_string(out.search.mode) + ")");

  out.germs = r.run("germ-groupoid", [&] { return germ_groupoid(p, out.spectrum, out.search); });
  r.done("germ-groupoid", std::to_string(out.germs.groupoid.size()) + " germs");
  return out;
}

RoundtripReport verify_roundtrip(const Groupoid& g, const Ring& ring, const ReconstructOptions& opts) {
  RoundtripReport rep;
  StageRunner r(&rep.stages);
  if (!is_principal_kernel(g)) r.fail("hypothesis", "hypothesis violated: kernel not principal", true);
  r.done("hypothesis", "kernel principal");

  rep.presentation = presentation_of(g, ring, opts.mode != SearchMode::BlackBox);
  const auto& p = rep.presentation;
  rep.result = reconstruct(p, opts, &rep.stages);
  const auto& atoms = rep.result.spectrum;
  const auto& search = rep.result.search;
  const auto& germs = rep.result.germs;

  // ε_u(q) = q(u) selects the atom whose coordinate at u is nonzero.
  std::vector<std::size_t> unit_to_char(g.size(), atoms.size());
  std::set<std::size_t> hit;
  for (auto u : g.units()) {
    for (std::size_t x = 0; x < atoms.size(); ++x)
      if (!atoms[x].atom[u].is_zero()) {
        if (unit_to_char[u] != atoms.size()) r.fail("epsilon", "unit " + g.name(u) + " meets two atoms");
        unit_to_char[u] = x;
      }
    if (unit_to_char[u] == atoms.size()) r.fail("epsilon", "unit " + g.name(u) + " meets no atom");
    hit.insert(unit_to_char[u]);
    rep.epsilon.push_back(unit_to_char[u]);
  }
  if (hit.size() != atoms.size()) r.fail("epsilon", "ε is not onto the spectrum");
  r.done("epsilon", "bijection onto " + std::to_string(atoms.size()) + " characters");

  // θ_{q̃[f]}(s(α)) = r(α) is carried to φ_[f].
  for (const auto& c : search.classes) {
    for (auto a : c.support) {
      const auto x = unit_to_char[g.src(a)];
      const auto y = act(p, atoms, c, x);
      if (!y || *y != unit_to_char[g.dst(a)])
        r.fail("intertwining", "φ disagrees with the bisection action at " + g.name(a));
    }
  }
  r.done("intertwining", "φ matches θ on every class");

  auto germ_at = [&](const Vec& v, Groupoid::Id a) {
    const auto x = unit_to_char[g.src(a)];
    const auto k = class_of(search, p, atoms, p.multiply(v, atoms[x].atom),
                            p.multiply(atoms[x].atom, *normaliser_partner(p, atoms, v)));
    return germs.germ_of_class.at(k);
  };
  r.run("witness", [&] {
    for (Groupoid::Id a = 0; a < g.size(); ++a) {
      Vec delta = p.unit_vector(a);
      rep.witness.push_back(germ_at(delta, a));
      // Any other homogeneous bisection through α names the same germ.
      for (const auto& v : p.provenance)
        if (!v[a].is_zero() && p.support(v).size() > 1) {
          if (germ_at(v, a) != rep.witness.back())
            throw std::logic_error("germ of " + g.name(a) + " depends on the bisection");
          break;
        }
    }
    return 0;
  });
  if (auto err = check_isomorphism(g, germs.groupoid, rep.witness)) r.fail("witness", *err);
  r.done("witness", "α ↦ [[1_V], ε_s(α)] is an isomorphism");
  return rep;
}

InducedIso induced_groupoid_iso(const RingPresentation& p, const RingPresentation& q,
                                const LinearMap& rho, const ReconstructOptions& opts) {
  std::vector<StageResult> log;
  StageRunner r(&log);
  if (rho.size() != p.dim()) r.fail("rho-multiplicative", "map does not cover the source basis");
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) {
      const auto lhs = apply(q, rho, p.multiply(p.unit_vector(i), p.unit_vector(j)));
      if (lhs != q.multiply(rho[i], rho[j]))
        r.fail("rho-multiplicative", "ρ(" + p.basis[i] + "·" + p.basis[j] + ") != ρ(" + p.basis[i] +
                                         ")ρ(" + p.basis[j] + ")");
    }
  r.done("rho-multiplicative", "checked on basis products");

  if (!(p.group == q.group)) r.fail("rho-graded", "grading groups differ");
  for (std::size_t i = 0; i < p.dim(); ++i) {
    auto g = q.grade_of(rho[i]);
    if (!q.is_zero(rho[i]) && (!g || *g != p.grades[i]))
      r.fail("rho-graded", "ρ(" + p.basis[i] + ") is not homogeneous of grade " + p.grades[i].to_string());
  }
  r.done("rho-graded", "basis images homogeneous");

  const auto field = linalg::field_of(q.ring);
  linalg::Matrix m(q.dim(), linalg::Vector(p.dim(), RingElement::zero(field)));
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t k = 0; k < q.dim(); ++k) m[k][i] = linalg::to_field(rho[i][k]);
  if (p.dim() != q.dim() || linalg::rank(field, m, p.dim()) != p.dim())
    r.fail("rho-bijective", "ρ is not a linear bijection");
  r.done("rho-bijective", "rank " + std::to_string(p.dim()));

  for (auto d : p.diagonal)
    for (auto e : q.diagonal) {
      const auto ev = q.unit_vector(e);
      if (q.multiply(rho[d], ev) != q.multiply(ev, rho[d]))
        r.fail("rho-diagonal", "ρ(" + p.basis[d] + ") does not commute with " + q.basis[e]);
    }
  // ρ(D_P) is maximal abelian in Q_e because D_P is in P_e; D_Q commutes with
  // it, hence D_Q ⊆ ρ(D_P), and D_Q masa gives equality.
  const auto mp = diagonal_masa(p), mq = diagonal_masa(q);
  if (!mp.holds() || !mq.holds())
    r.fail("rho-diagonal", "hypothesis violated: a diagonal is not maximal abelian", true);
  for (auto d : p.diagonal)
    if (!q.in_diagonal(rho[d])) r.fail("rho-diagonal", "ρ(" + p.basis[d] + ") lies outside D");
  if (p.diagonal.size() != q.diagonal.size()) r.fail("rho-diagonal", "ρ(D) != D");
  r.done("rho-diagonal", "ρ(D) = D");

  InducedIso out;
  out.source = reconstruct(p, opts, &log);
  out.target = reconstruct(q, opts, &log);
  const auto& gp = out.source.germs;
  const auto& gq = out.target.germs;
  r.run("induced-map", [&] {
    for (Groupoid::Id a = 0; a < gp.groupoid.size(); ++a) {
      const auto& c = out.source.search.classes[gp.germ_class[a]];
      const auto n = apply(q, rho, c.representative);
      const auto partner = normaliser_partner(q, out.target.spectrum, n);
      if (!partner) throw std::logic_error("ρ sends a normaliser to a non-normaliser");
      const auto k = class_of(out.target.search, q, out.target.spectrum, n, *partner);
      auto it = gq.germ_of_class.find(k);
      if (it == gq.germ_of_class.end()) throw std::logic_error("ρ sends a germ outside the germs");
      out.map.push_back(it->second);
    }
    return 0;
  });
  if (auto err = check_isomorphism(gp.groupoid, gq.groupoid, out.map)) r.fail("induced-map", *err);
  r.done("induced-map", "ρ̄ is a graded isomorphism");
  return out;
}

}  // namespace grpd
