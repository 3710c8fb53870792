#include "grpd/normaliser.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace grpd {

Bisection StandardForm::support(const Groupoid& g) const {
  MorphSet all;
  for (const auto& [a, v] : pieces) all.insert(all.end(), v.elems().begin(), v.elems().end());
  return Bisection(g, std::move(all));
}

AlgebraElement StandardForm::normaliser(GroupoidPtr g, Ring ring) const {
  AlgebraElement n(g, ring);
  for (const auto& [a, v] : pieces)
    for (auto x : v.elems()) n.set(x, a);
  return n;
}

AlgebraElement StandardForm::partner(GroupoidPtr g, Ring ring) const {
  AlgebraElement m(g, ring);
  for (const auto& [a, v] : pieces) {
    const auto inv = ring_unit_inverse(a);
    for (auto x : v.elems()) m.set(g->inv(x), inv);
  }
  return m;
}

std::optional<StandardForm> is_normaliser(const AlgebraElement& n) {
  const Groupoid& g = n.groupoid();
  if (!is_principal_kernel(g))
    throw HypothesisViolated("hypothesis violated: kernel not principal");
  const auto supp = n.support();
  if (!is_bisection(g, supp)) return std::nullopt;
  StandardForm form;
  if (supp.empty()) return form;
  form.grade = common_grade(g, supp);
  if (!form.grade) return std::nullopt;

  std::map<std::string, std::size_t> piece_of;
  std::vector<MorphSet> sets;
  for (const auto& [a, v] : n.terms()) {
    if (!ring_is_unit(v)) return std::nullopt;
    auto [it, fresh] = piece_of.emplace(v.to_string(), sets.size());
    if (fresh) {
      sets.emplace_back();
      form.pieces.emplace_back(v, Bisection{});
    }
    sets[it->second].push_back(a);
  }
  for (std::size_t i = 0; i < sets.size(); ++i)
    form.pieces[i].second = Bisection(g, std::move(sets[i]));
  return form;
}

namespace {

/// Dense arithmetic in F_p[G] for the definitional search.
class DenseFp {
 public:
  using Vec = std::vector<std::int64_t>;

  explicit DenseFp(const Groupoid& g, std::int64_t p) : g_(g), p_(p) {
    for (Groupoid::Id a = 0; a < g.size(); ++a)
      for (Groupoid::Id b = 0; b < g.size(); ++b)
        if (g.composable(a, b)) pairs_.push_back({a, b, g.compose_unchecked(a, b)});
  }

  Vec conv(const Vec& x, const Vec& y) const {
    Vec out(x.size(), 0);
    for (const auto& [a, b, ab] : pairs_)
      if (x[a] && y[b]) out[ab] = (out[ab] + x[a] * y[b]) % p_;
    return out;
  }

  bool in_diagonal(const Vec& x) const {
    for (Groupoid::Id a = 0; a < x.size(); ++a)
      if (x[a] && !g_.is_unit(a)) return false;
    return true;
  }

  // x·1_K keeps the terms whose source lies in K; 1_K·x those whose target does.
  Vec right_cut(const Vec& x, const std::vector<bool>& k) const {
    Vec out = x;
    for (Groupoid::Id a = 0; a < x.size(); ++a)
      if (!k[g_.src(a)]) out[a] = 0;
    return out;
  }

 private:
  struct Triple {
    Groupoid::Id a, b, ab;
  };
  const Groupoid& g_;
  std::int64_t p_;
  std::vector<Triple> pairs_;
};

/// Calls `visit` for every m satisfying the definition; stops when it returns true.
void search_partners(const AlgebraElement& n, std::uint64_t cap,
                     const std::function<bool(const DenseFp::Vec&)>& visit) {
  const Ring& ring = n.ring();
  if (!ring.is_finite())
    throw std::invalid_argument("definitional normaliser search needs a prime field");
  const Groupoid& g = n.groupoid();
  const auto p = ring.characteristic();
  const auto size = g.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < size; ++i) {
    if (total > cap / static_cast<std::uint64_t>(p))
      throw EnumerationTooLarge("definitional search needs p^|G| <= " + std::to_string(cap));
    total *= static_cast<std::uint64_t>(p);
  }

  DenseFp alg(g, p);
  DenseFp::Vec nv(size, 0);
  for (const auto& [a, v] : n.terms()) nv[a] = v.residue();

  const auto& units = g.units();
  if (units.size() > 24) throw EnumerationTooLarge("too many units for the idempotent sweep");
  std::vector<std::vector<bool>> subsets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << units.size()); ++mask) {
    std::vector<bool> k(size, false);
    for (std::size_t i = 0; i < units.size(); ++i)
      if (mask >> i & 1) k[units[i]] = true;
    subsets.push_back(std::move(k));
  }

  DenseFp::Vec m(size, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    if (step) {
      for (std::size_t i = 0; i < size; ++i) {
        if (++m[i] < p) break;
        m[i] = 0;
      }
    }
    if (alg.conv(alg.conv(nv, m), nv) != nv) continue;
    if (alg.conv(alg.conv(m, nv), m) != m) continue;
    bool ok = true;
    for (const auto& k : subsets) {
      if (!alg.in_diagonal(alg.conv(alg.right_cut(m, k), nv)) ||
          !alg.in_diagonal(alg.conv(alg.right_cut(nv, k), m))) {
        ok = false;
        break;
      }
    }
    if (ok && visit(m)) return;
  }
}

}  // namespace

bool bf_is_normaliser(const AlgebraElement& n, std::uint64_t cap) {
  if (!n.ring().is_finite())
    throw std::invalid_argument("definitional normaliser search needs a prime field");
  if (!n.is_zero() && !common_grade(n.groupoid(), n.support())) return false;
  bool found = false;
  search_partners(n, cap, [&](const DenseFp::Vec&) { return found = true; });
  return found;
}

std::vector<AlgebraElement> bf_normaliser_partners(const AlgebraElement& n, std::uint64_t cap) {
  std::vector<AlgebraElement> out;
  search_partners(n, cap, [&](const DenseFp::Vec& m) {
    AlgebraElement e(n.groupoid_ptr(), n.ring());
    for (Groupoid::Id a = 0; a < m.size(); ++a) e.set(a, RingElement(n.ring(), m[a]));
    out.push_back(std::move(e));
    return false;
  });
  return out;
}

AlgebraElement normaliser_star(const AlgebraElement& n) {
  if (!is_normaliser(n)) throw std::invalid_argument("normaliser_star of a non-normaliser");
  AlgebraElement out(n.groupoid_ptr(), n.ring());
  for (const auto& [a, v] : n.terms()) out.set(n.groupoid().inv(a), ring_unit_inverse(v));
  return out;
}

namespace {

std::vector<AlgebraElement> diagonal_idempotents(const AlgebraElement& like,
                                                 IdempotentScope scope) {
  const auto& g = like.groupoid_ptr();
  const auto& units = g->units();
  std::vector<AlgebraElement> out;
  if (scope == IdempotentScope::Atoms) {
    for (auto u : units) out.push_back(AlgebraElement::point_mass(g, like.ring(), u));
    return out;
  }
  if (units.size() > 20) throw EnumerationTooLarge("too many units to list every idempotent");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << units.size()); ++mask) {
    MorphSet k;
    for (std::size_t i = 0; i < units.size(); ++i)
      if (mask >> i & 1) k.push_back(units[i]);
    out.push_back(unit_indicator(g, like.ring(), k));
  }
  return out;
}

}  // namespace

bool equiv(const AlgebraElement& f, const AlgebraElement& h, IdempotentScope scope) {
  auto ff = is_normaliser(f);
  auto hf = is_normaliser(h);
  if (!ff || !hf) throw std::invalid_argument("equiv needs two normalisers");
  if (ff->grade && hf->grade && *ff->grade != *hf->grade) return false;
  const auto fs = normaliser_star(f);
  const auto hs = normaliser_star(h);
  for (const auto& p : diagonal_idempotents(f, scope)) {
    if (fs * p * f != hs * p * h) return false;
    if (f * p * fs != h * p * hs) return false;
  }
  return true;
}

namespace {

// Ring-level invariant of a class used to bucket candidates before `equiv`.
std::string bucket_key(const AlgebraElement& n) {
  const auto s = normaliser_star(n);
  auto grade = common_grade(n.groupoid(), n.support());
  return (grade ? grade->to_string() : "none") + "|" + (s * n).to_string() + "|" +
         (n * s).to_string();
}

class ClassIndex {
 public:
  /// Class of n, creating one if needed.
  std::size_t classify(const AlgebraElement& n) {
    auto& bucket = buckets_[bucket_key(n)];
    for (auto c : bucket)
      if (equiv(reps_[c], n)) return c;
    bucket.push_back(reps_.size());
    reps_.push_back(n);
    return reps_.size() - 1;
  }

  std::optional<std::size_t> lookup(const AlgebraElement& n) const {
    auto it = buckets_.find(bucket_key(n));
    if (it == buckets_.end()) return std::nullopt;
    for (auto c : it->second)
      if (equiv(reps_[c], n)) return c;
    return std::nullopt;
  }

  const std::vector<AlgebraElement>& reps() const { return reps_; }

 private:
  std::map<std::string, std::vector<std::size_t>> buckets_;
  std::vector<AlgebraElement> reps_;
};

std::vector<AlgebraElement> enumerate_normalisers(const GroupoidPtr& g, const Ring& ring,
                                                  EnumerationMode mode, std::uint64_t cap) {
  std::vector<AlgebraElement> out;
  if (mode == EnumerationMode::WhiteBox) {
    for (const auto& hb : homogeneous_bisections(*g, cap)) out.push_back(indicator(g, ring, hb.set));
    return out;
  }
  if (!ring.is_finite()) throw std::invalid_argument("brute-force enumeration needs a prime field");
  const auto p = static_cast<std::uint64_t>(ring.characteristic());
  std::map<Grade, std::vector<Groupoid::Id>> fibers;
  for (Groupoid::Id a = 0; a < g->size(); ++a) fibers[g->grade(a)].push_back(a);
  std::uint64_t total = 0;
  for (const auto& [grade, fiber] : fibers) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      if (count > cap / p) throw EnumerationTooLarge("homogeneous elements exceed the cap");
      count *= p;
    }
    total += count;
    if (total > cap) throw EnumerationTooLarge("homogeneous elements exceed the cap");
  }
  out.emplace_back(g, ring);  // zero, once
  for (const auto& [grade, fiber] : fibers) {
    std::vector<std::int64_t> digits(fiber.size(), 0);
    while (true) {
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == static_cast<std::int64_t>(p)) digits[i++] = 0;
      if (i == digits.size()) break;
      AlgebraElement n(g, ring);
      for (std::size_t j = 0; j < fiber.size(); ++j) n.set(fiber[j], RingElement(ring, digits[j]));
      if (is_normaliser(n)) out.push_back(std::move(n));
    }
  }
  return out;
}

bool all_ones(const AlgebraElement& n) {
  for (const auto& [a, v] : n.terms())
    if (!v.is_one()) return false;
  return true;
}

}  // namespace

NormaliserQuotient normaliser_semigroup(GroupoidPtr g, Ring ring, EnumerationMode mode,
                                        std::uint64_t cap) {
  if (!is_principal_kernel(*g)) throw HypothesisViolated("hypothesis violated: kernel not principal");
  const auto normalisers = enumerate_normalisers(g, ring, mode, cap);

  ClassIndex index;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < normalisers.size(); ++i) {
    const auto c = index.classify(normalisers[i]);
    if (c == members.size()) members.emplace_back();
    members[c].push_back(i);
  }

  // Canonical order and representative choice.
  struct Draft {
    std::size_t raw;
    AlgebraElement rep;
    Bisection support;
    std::optional<Grade> grade;
  };
  std::vector<Draft> drafts;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const AlgebraElement* rep = &normalisers[members[c].front()];
    for (auto i : members[c])
      if (all_ones(normalisers[i])) {
        rep = &normalisers[i];
        break;
      }
    drafts.push_back({c, *rep, Bisection(*g, rep->support()), common_grade(*g, rep->support())});
  }
  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    return std::tie(a.support, a.grade) < std::tie(b.support, b.grade);
  });
  std::vector<std::size_t> canonical(drafts.size());
  NormaliserQuotient q;
  q.normalisers_seen = normalisers.size();
  for (std::size_t k = 0; k < drafts.size(); ++k) {
    canonical[drafts[k].raw] = k;
    q.classes.push_back({drafts[k].rep, drafts[k].support, drafts[k].grade,
                         members[drafts[k].raw].size()});
  }

  auto class_of = [&](const AlgebraElement& n) -> std::size_t {
    auto c = index.lookup(n);
    if (!c) throw std::logic_error("product of normalisers left N_*(D): " + n.to_string());
    return canonical[*c];
  };

  const auto k = q.classes.size();
  q.product.assign(k, std::vector<std::size_t>(k));
  q.star.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    q.star[i] = class_of(normaliser_star(q.classes[i].representative));
    for (std::size_t j = 0; j < k; ++j)
      q.product[i][j] = class_of(q.classes[i].representative * q.classes[j].representative);
  }

  // [f][h] = [fh] must not depend on the chosen representatives. Exhaustive for
  // small quotients, otherwise the first few members of each class.
  const std::size_t per_class = normalisers.size() <= 400 ? normalisers.size() : 3;
  for (std::size_t ri = 0; ri < k; ++ri) {
    const auto& mi = members[drafts[ri].raw];
    for (std::size_t rj = 0; rj < k; ++rj) {
      const auto& mj = members[drafts[rj].raw];
      for (std::size_t x = 0; x < std::min(per_class, mi.size()); ++x) {
        for (std::size_t y = 0; y < std::min(per_class, mj.size()); ++y) {
          const auto& f = normalisers[mi[x]];
          const auto& h = normalisers[mj[y]];
          if (class_of(f * h) != q.product[ri][rj])
            throw std::logic_error("class product is not well defined");
          ++q.checked_pairs;
        }
      }
    }
    for (std::size_t x = 0; x < std::min(per_class, mi.size()); ++x)
      if (class_of(normaliser_star(normalisers[mi[x]])) != q.star[ri])
        throw std::logic_error("class star is not well defined");
  }
  return q;
}

std::optional<std::string> check_q_tilde(const Groupoid& g, const NormaliserQuotient& q) {
  const auto expected = homogeneous_bisections(g);
  std::map<Bisection, std::optional<Grade>> want;
  for (const auto& hb : expected) want.emplace(hb.set, hb.grade);
  if (want.size() != q.classes.size())
    return "class count " + std::to_string(q.classes.size()) + " != homogeneous bisections " +
           std::to_string(want.size());
  std::map<Bisection, std::size_t> seen;
  for (std::size_t i = 0; i < q.classes.size(); ++i) {
    const auto& s = q.q_tilde(i);
    auto it = want.find(s);
    if (it == want.end()) return "class support is not a homogeneous bisection";
    if (!s.empty() && it->second != q.classes[i].grade) return "class grade differs from support grade";
    if (!seen.emplace(s, i).second) return "two classes share one support";
  }
  for (std::size_t i = 0; i < q.classes.size(); ++i) {
    if (q.q_tilde(q.star[i]) != invert_set(g, q.q_tilde(i))) return "star not carried to inversion";
    for (std::size_t j = 0; j < q.classes.size(); ++j)
      if (q.q_tilde(q.product[i][j]) != compose_sets(g, q.q_tilde(i), q.q_tilde(j)))
        return "product not carried to set product";
  }
  return std::nullopt;
}

}  // namespace grpd
