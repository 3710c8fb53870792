#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/ring.hpp"

namespace grpd {

using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// Element of the Steinberg algebra A_R(G) of a finite discrete groupoid: a
/// finitely supported function G -> R, stored sparsely. Zero coefficients are
/// never stored, so equality is structural.
class AlgebraElement {
 public:
  using Id = Groupoid::Id;
  using Terms = std::map<Id, RingElement>;

  AlgebraElement(GroupoidPtr g, Ring ring) : g_(std::move(g)), ring_(ring) {}

  static AlgebraElement point_mass(GroupoidPtr g, Ring ring, Id a);
  static AlgebraElement point_mass(GroupoidPtr g, const RingElement& coef, Id a);

  const GroupoidPtr& groupoid_ptr() const { return g_; }
  const Groupoid& groupoid() const { return *g_; }
  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }

  RingElement coeff(Id a) const;
  void set(Id a, const RingElement& value);
  void add_to(Id a, const RingElement& value);

  bool is_zero() const { return terms_.empty(); }
  MorphSet support() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(const RingElement& r) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.g_ == b.g_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// "1*(1,2) + -3*(2,2)" in canonical morphism order; "0" for zero.
  std::string to_string() const;

 private:
  void check_compatible(const AlgebraElement& o) const;

  GroupoidPtr g_;
  Ring ring_;
  Terms terms_;
};

/// Convolution f*g(γ) = Σ_{αβ=γ} f(α) g(β). Throws RingMismatch or
/// std::invalid_argument when the operands live in different algebras.
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g);
inline AlgebraElement operator*(const AlgebraElement& f, const AlgebraElement& g) {
  return convolve(f, g);
}

/// f*(γ) = f(γ⁻¹) with the trivial involution on R.
AlgebraElement star_algebra(const AlgebraElement& f);

/// 1_U for a bisection U. The MorphSet overload throws NotABisection.
AlgebraElement indicator(GroupoidPtr g, Ring ring, const Bisection& u);
AlgebraElement indicator(GroupoidPtr g, Ring ring, const MorphSet& u);
/// 1_K for an arbitrary set of units.
AlgebraElement unit_indicator(GroupoidPtr g, Ring ring, const MorphSet& units);

struct DisjointPiece {
  RingElement coef;
  Bisection set;
  Grade grade;
};

/// Writes f as Σ r·1_V over pairwise-disjoint homogeneous bisections V. Each
/// level set f⁻¹(r) ∩ c⁻¹(g) is split greedily in canonical order.
std::vector<DisjointPiece> decompose_disjoint(const AlgebraElement& f);

/// Restriction of f to c⁻¹(g).
AlgebraElement graded_component(const AlgebraElement& f, const Grade& g);

/// Grades carrying part of the support of f, ascending.
std::vector<Grade> occupied_grades(const AlgebraElement& f);

bool is_diagonal(const AlgebraElement& f);

/// 1_K with K = src ∪ dst of all supports; 1_K*f = f = f*1_K for each input.
AlgebraElement local_unit_for(std::span<const AlgebraElement> fs);

/// Grade-e morphisms with src = dst: their point masses span the commutant of
/// D inside A_R(G)_e. D is maximal abelian there iff this is exactly the units.
MorphSet diagonal_commutant_basis(const Groupoid& g);

}  // namespace grpd
