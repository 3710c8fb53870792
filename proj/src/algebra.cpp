#include "grpd/algebra.hpp"

#include <set>

namespace grpd {

AlgebraElement AlgebraElement::point_mass(GroupoidPtr g, Ring ring, Id a) {
  return point_mass(std::move(g), RingElement::one(ring), a);
}

AlgebraElement AlgebraElement::point_mass(GroupoidPtr g, const RingElement& coef, Id a) {
  AlgebraElement f(std::move(g), coef.ring());
  f.set(a, coef);
  return f;
}

RingElement AlgebraElement::coeff(Id a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? RingElement::zero(ring_) : it->second;
}

void AlgebraElement::set(Id a, const RingElement& value) {
  if (!(value.ring() == ring_)) throw RingMismatch("coefficient from " + value.ring().tag());
  if (a >= g_->size()) throw std::out_of_range("morphism index out of range");
  if (value.is_zero()) terms_.erase(a);
  else terms_[a] = value;
}

void AlgebraElement::add_to(Id a, const RingElement& value) { set(a, coeff(a) + value); }

MorphSet AlgebraElement::support() const {
  MorphSet s;
  s.reserve(terms_.size());
  for (const auto& [a, _] : terms_) s.push_back(a);
  return s;
}

void AlgebraElement::check_compatible(const AlgebraElement& o) const {
  if (g_ != o.g_) throw std::invalid_argument("algebra elements over different groupoids");
  if (!(ring_ == o.ring_)) throw RingMismatch("algebra elements over different rings");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  check_compatible(o);
  AlgebraElement r = *this;
  for (const auto& [a, v] : o.terms_) r.add_to(a, v);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& [a, v] : r.terms_) v = -v;
  return r;
}

AlgebraElement AlgebraElement::scaled(const RingElement& s) const {
  AlgebraElement r(g_, ring_);
  for (const auto& [a, v] : terms_) r.set(a, v * s);
  return r;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [a, v] : terms_) {
    if (!s.empty()) s += " + ";
    s += v.to_string() + "*" + g_->name(a);
  }
  return s;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h) {
  if (f.groupoid_ptr() != h.groupoid_ptr())
    throw std::invalid_argument("convolution of elements over different groupoids");
  if (!(f.ring() == h.ring())) throw RingMismatch("convolution over different rings");
  const Groupoid& g = f.groupoid();
  AlgebraElement out(f.groupoid_ptr(), f.ring());
  for (const auto& [a, x] : f.terms())
    for (const auto& [b, y] : h.terms())
      if (g.composable(a, b)) out.add_to(g.compose_unchecked(a, b), x * y);
  return out;
}

AlgebraElement star_algebra(const AlgebraElement& f) {
  AlgebraElement out(f.groupoid_ptr(), f.ring());
  for (const auto& [a, v] : f.terms()) out.set(f.groupoid().inv(a), v);
  return out;
}

AlgebraElement indicator(GroupoidPtr g, Ring ring, const Bisection& u) {
  AlgebraElement f(g, ring);
  for (auto a : u.elems()) f.set(a, RingElement::one(ring));
  return f;
}

AlgebraElement indicator(GroupoidPtr g, Ring ring, const MorphSet& u) {
  Bisection b(*g, u);
  return indicator(std::move(g), ring, b);
}

AlgebraElement unit_indicator(GroupoidPtr g, Ring ring, const MorphSet& units) {
  for (auto u : units)
    if (!g->is_unit(u)) throw std::invalid_argument(g->name(u) + " is not a unit");
  return indicator(std::move(g), ring, units);
}

std::vector<DisjointPiece> decompose_disjoint(const AlgebraElement& f) {
  const Groupoid& g = f.groupoid();
  // Level sets keyed by (grade, coefficient text); the text is canonical per ring.
  std::map<std::pair<Grade, std::string>, std::vector<Groupoid::Id>> levels;
  std::map<std::pair<Grade, std::string>, RingElement> level_value;
  for (const auto& [a, v] : f.terms()) {
    auto key = std::make_pair(g.grade(a), v.to_string());
    levels[key].push_back(a);
    level_value.emplace(key, v);
  }
  struct Open {
    std::vector<Groupoid::Id> elems;
    std::set<Groupoid::Id> srcs, dsts;
  };
  std::vector<DisjointPiece> out;
  for (const auto& [key, members] : levels) {
    std::vector<Open> open;
    for (auto a : members) {
      bool placed = false;
      for (auto& piece : open) {
        if (piece.srcs.count(g.src(a)) || piece.dsts.count(g.dst(a))) continue;
        piece.elems.push_back(a);
        piece.srcs.insert(g.src(a));
        piece.dsts.insert(g.dst(a));
        placed = true;
        break;
      }
      if (!placed) open.push_back({{a}, {g.src(a)}, {g.dst(a)}});
    }
    for (auto& piece : open)
      out.push_back({level_value.at(key), Bisection(g, std::move(piece.elems)), key.first});
  }
  return out;
}

AlgebraElement graded_component(const AlgebraElement& f, const Grade& grade) {
  AlgebraElement out(f.groupoid_ptr(), f.ring());
  for (const auto& [a, v] : f.terms())
    if (f.groupoid().grade(a) == grade) out.set(a, v);
  return out;
}

std::vector<Grade> occupied_grades(const AlgebraElement& f) {
  std::set<Grade> grades;
  for (const auto& [a, v] : f.terms()) grades.insert(f.groupoid().grade(a));
  return {grades.begin(), grades.end()};
}

bool is_diagonal(const AlgebraElement& f) {
  for (const auto& [a, v] : f.terms())
    if (!f.groupoid().is_unit(a)) return false;
  return true;
}

AlgebraElement local_unit_for(std::span<const AlgebraElement> fs) {
  if (fs.empty()) throw std::invalid_argument("local_unit_for needs at least one element");
  const Groupoid& g = fs.front().groupoid();
  std::vector<Groupoid::Id> k;
  for (const auto& f : fs) {
    if (f.groupoid_ptr() != fs.front().groupoid_ptr() || !(f.ring() == fs.front().ring()))
      throw std::invalid_argument("local_unit_for over mixed algebras");
    for (const auto& [a, v] : f.terms()) {
      k.push_back(g.src(a));
      k.push_back(g.dst(a));
    }
  }
  return unit_indicator(fs.front().groupoid_ptr(), fs.front().ring(), make_set(std::move(k)));
}

MorphSet diagonal_commutant_basis(const Groupoid& g) {
  MorphSet out;
  for (Groupoid::Id a = 0; a < g.size(); ++a)
    if (g.src(a) == g.dst(a) && g.grade(a).is_zero()) out.push_back(a);
  return out;
}

}  // namespace grpd
