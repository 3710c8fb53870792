#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grpd/algebra.hpp"
#include "grpd/grade.hpp"
#include "grpd/ring.hpp"

namespace grpd {

/// A finite-rank algebra given abstractly: a basis, structure constants, a
/// marked diagonal subalgebra and a grading of the basis. Nothing about a
/// groupoid is assumed; `provenance` optionally lists known normalisers for
/// white-box reconstruction.
struct RingPresentation {
  using Vec = std::vector<RingElement>;
  using Sparse = std::vector<std::pair<std::size_t, RingElement>>;

  Ring ring;
  std::vector<std::string> basis;
  std::vector<Sparse> mult;  // mult[i * n + j] = b_i b_j
  std::vector<std::size_t> diagonal;
  GradeGroup group;
  std::vector<Grade> grades;
  std::vector<Vec> provenance;

  std::size_t dim() const { return basis.size(); }
  std::optional<std::size_t> find(const std::string& id) const;

  Vec zero() const { return Vec(dim(), RingElement::zero(ring)); }
  Vec unit_vector(std::size_t i) const;
  Vec multiply(const Vec& x, const Vec& y) const;
  Vec add(const Vec& x, const Vec& y) const;
  Vec scale(const Vec& x, const RingElement& s) const;
  bool is_zero(const Vec& x) const;
  /// Every coordinate outside the diagonal basis vanishes.
  bool in_diagonal(const Vec& x) const;
  /// The common grade of the nonzero coordinates; nullopt for zero or mixed.
  std::optional<Grade> grade_of(const Vec& x) const;
  std::vector<std::size_t> support(const Vec& x) const;
  /// "1*b + -1*c" over nonzero coordinates in basis order; "0" for zero.
  std::string to_string(const Vec& x) const;
};

class PresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with associativity, grading, or the diagonal subalgebra (closed
/// under products, commutative, grade zero). Empty when the data is usable.
std::vector<std::string> check_presentation(const RingPresentation& p);

/// A_R(G) on the point-mass basis, with D spanned by the units. When
/// `with_provenance` is set every 1_V (V a homogeneous bisection) is attached,
/// as far as the bisection cap allows.
RingPresentation presentation_of(const Groupoid& g, const Ring& ring, bool with_provenance = true);

/// Coordinates of an algebra element in the point-mass basis.
RingPresentation::Vec to_vector(const RingPresentation& p, const AlgebraElement& f);

/// A linear map between presentations: column i is the image of basis element i.
using LinearMap = std::vector<RingPresentation::Vec>;

LinearMap identity_map(const RingPresentation& p);
RingPresentation::Vec apply(const RingPresentation& target, const LinearMap& rho,
                            const RingPresentation::Vec& x);

/// New presentation of the same algebra: b'_j = scale[j] · b_{order[j]}, named
/// `names[j]`. Structure constants, grading, diagonal and provenance are
/// rewritten accordingly. Returns the presentation and the identity of the
/// underlying algebra expressed as a map old -> new.
std::pair<RingPresentation, LinearMap> rebase(const RingPresentation& p,
                                              const std::vector<std::size_t>& order,
                                              const std::vector<RingElement>& scale,
                                              const std::vector<std::string>& names);

}  // namespace grpd
