#include "grpd/presentation.hpp"

#include <algorithm>
#include <set>

namespace grpd {

using Vec = RingPresentation::Vec;

std::optional<std::size_t> RingPresentation::find(const std::string& id) const {
  auto it = std::find(basis.begin(), basis.end(), id);
  if (it == basis.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis.begin());
}

Vec RingPresentation::unit_vector(std::size_t i) const {
  Vec v = zero();
  v[i] = RingElement::one(ring);
  return v;
}

Vec RingPresentation::multiply(const Vec& x, const Vec& y) const {
  const auto n = dim();
  Vec out = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const auto& terms = mult[i * n + j];
      if (terms.empty()) continue;
      const auto xy = x[i] * y[j];
      for (const auto& [k, c] : terms) out[k] += xy * c;
    }
  }
  return out;
}

Vec RingPresentation::add(const Vec& x, const Vec& y) const {
  Vec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

Vec RingPresentation::scale(const Vec& x, const RingElement& s) const {
  Vec out = x;
  for (auto& v : out) v *= s;
  return out;
}

bool RingPresentation::is_zero(const Vec& x) const {
  return std::all_of(x.begin(), x.end(), [](const RingElement& v) { return v.is_zero(); });
}

bool RingPresentation::in_diagonal(const Vec& x) const {
  std::vector<bool> diag(dim(), false);
  for (auto d : diagonal) diag[d] = true;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!diag[i] && !x[i].is_zero()) return false;
  return true;
}

std::optional<Grade> RingPresentation::grade_of(const Vec& x) const {
  std::optional<Grade> g;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (!g) g = grades[i];
    else if (*g != grades[i]) return std::nullopt;
  }
  return g;
}

std::vector<std::size_t> RingPresentation::support(const Vec& x) const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) s.push_back(i);
  return s;
}

std::string RingPresentation::to_string(const Vec& x) const {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += x[i].to_string() + "*" + basis[i];
  }
  return s.empty() ? "0" : s;
}

std::vector<std::string> check_presentation(const RingPresentation& p) {
  std::vector<std::string> problems;
  const auto n = p.dim();
  if (p.mult.size() != n * n) return {"structure constants do not cover basis pairs"};
  if (p.grades.size() != n) return {"grading does not cover the basis"};
  if (std::set<std::string>(p.basis.begin(), p.basis.end()).size() != n)
    problems.push_back("duplicate basis ids");
  for (const auto& g : p.grades)
    if (g.moduli() != p.group.moduli()) return {"grade outside the grading group"};
  for (auto d : p.diagonal)
    if (d >= n) return {"diagonal index out of range"};

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : p.mult[i * n + j])
        if (!c.is_zero() && p.grades[k] != p.grades[i] + p.grades[j])
          problems.push_back("grading: " + p.basis[i] + "*" + p.basis[j] + " has a term " +
                             p.basis[k] + " outside grade " +
                             (p.grades[i] + p.grades[j]).to_string());

  std::vector<Vec> units(n);
  for (std::size_t i = 0; i < n; ++i) units[i] = p.unit_vector(i);
  std::vector<Vec> products(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) products[i * n + j] = p.multiply(units[i], units[j]);
  for (std::size_t i = 0; i < n && problems.size() < 20; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (p.multiply(products[i * n + j], units[k]) != p.multiply(units[i], products[j * n + k]))
          problems.push_back("associativity fails on (" + p.basis[i] + ", " + p.basis[j] + ", " +
                             p.basis[k] + ")");

  for (auto d : p.diagonal) {
    if (!p.grades[d].is_zero()) problems.push_back("diagonal element " + p.basis[d] + " not in grade zero");
    for (auto e : p.diagonal) {
      const auto& de = products[d * n + e];
      if (!p.in_diagonal(de))
        problems.push_back("diagonal not closed: " + p.basis[d] + "*" + p.basis[e]);
      if (de != products[e * n + d])
        problems.push_back("diagonal not commutative: " + p.basis[d] + ", " + p.basis[e]);
    }
  }
  for (const auto& v : p.provenance)
    if (v.size() != n) problems.push_back("provenance vector of the wrong length");
  return problems;
}

RingPresentation presentation_of(const Groupoid& g, const Ring& ring, bool with_provenance) {
  RingPresentation p;
  p.ring = ring;
  const auto n = g.size();
  for (Groupoid::Id a = 0; a < n; ++a) {
    p.basis.push_back(g.name(a));
    p.grades.push_back(g.grade(a));
  }
  p.group = g.grade_group();
  p.mult.assign(n * n, {});
  for (Groupoid::Id a = 0; a < n; ++a)
    for (Groupoid::Id b = 0; b < n; ++b)
      if (g.composable(a, b)) p.mult[a * n + b].emplace_back(g.compose_unchecked(a, b), RingElement::one(ring));
  p.diagonal.assign(g.units().begin(), g.units().end());
  if (with_provenance) {
    try {
      for (const auto& hb : homogeneous_bisections(g)) {
        Vec v = p.zero();
        for (auto a : hb.set.elems()) v[a] = RingElement::one(ring);
        p.provenance.push_back(std::move(v));
      }
    } catch (const EnumerationTooLarge&) {
      p.provenance.clear();
    }
  }
  return p;
}

Vec to_vector(const RingPresentation& p, const AlgebraElement& f) {
  Vec v = p.zero();
  for (const auto& [a, c] : f.terms()) v.at(a) = c;
  return v;
}

LinearMap identity_map(const RingPresentation& p) {
  LinearMap rho;
  for (std::size_t i = 0; i < p.dim(); ++i) rho.push_back(p.unit_vector(i));
  return rho;
}

Vec apply(const RingPresentation& target, const LinearMap& rho, const Vec& x) {
  Vec out = target.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out = target.add(out, target.scale(rho[i], x[i]));
  return out;
}

std::pair<RingPresentation, LinearMap> rebase(const RingPresentation& p,
                                              const std::vector<std::size_t>& order,
                                              const std::vector<RingElement>& scale,
                                              const std::vector<std::string>& names) {
  const auto n = p.dim();
  if (order.size() != n || scale.size() != n || names.size() != n)
    throw std::invalid_argument("rebase needs one entry per basis element");
  std::vector<std::size_t> pos(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (order[j] >= n || pos[order[j]] != n) throw std::invalid_argument("rebase order is not a permutation");
    if (!ring_is_unit(scale[j])) throw std::invalid_argument("rebase scale is not a unit");
    pos[order[j]] = j;
  }
  std::vector<RingElement> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[j] = ring_unit_inverse(scale[j]);

  RingPresentation q;
  q.ring = p.ring;
  q.basis = names;
  q.group = p.group;
  q.mult.assign(n * n, {});
  for (std::size_t j = 0; j < n; ++j) q.grades.push_back(p.grades[order[j]]);

  // b'_i b'_j = s_i s_j b_a b_b = Σ s_i s_j c_k / s'_k b'_k.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : p.mult[order[i] * n + order[j]]) {
        const auto k2 = pos[k];
        q.mult[i * n + j].emplace_back(k2, scale[i] * scale[j] * c * inv[k2]);
      }
  for (auto& terms : q.mult) std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
                               return a.first < b.first;
                             });
  for (auto d : p.diagonal) q.diagonal.push_back(pos[d]);
  std::sort(q.diagonal.begin(), q.diagonal.end());

  // Old b_a = s'^{-1} b'_{pos[a]}.
  LinearMap to_new;
  for (std::size_t a = 0; a < n; ++a) {
    Vec v = q.zero();
    v[pos[a]] = inv[pos[a]];
    to_new.push_back(std::move(v));
  }
  for (const auto& v : p.provenance) q.provenance.push_back(apply(q, to_new, v));
  return {std::move(q), std::move(to_new)};
}

}  // namespace grpd
