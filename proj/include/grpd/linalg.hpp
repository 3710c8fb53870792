#pragma once

#include <optional>
#include <vector>

#include "grpd/ring.hpp"

namespace grpd::linalg {

using Vector = std::vector<RingElement>;
using Matrix = std::vector<Vector>;  // row-major

/// Fraction field used for elimination: Z maps to Q, fields map to themselves.
Ring field_of(const Ring& ring);
RingElement to_field(const RingElement& r);

struct Solution {
  Vector particular;      // one solution, free variables set to zero
  std::size_t nullity = 0;
};

/// Gauss-Jordan elimination over `field` (Q or F_p). Entries of other rings are
/// promoted with `to_field`. Returns nullopt when the system is inconsistent.
std::optional<Solution> solve(const Ring& field, Matrix a, Vector b, std::size_t columns);

std::size_t rank(const Ring& field, Matrix a, std::size_t columns);

/// Basis of {x : a x = 0}.
std::vector<Vector> nullspace(const Ring& field, Matrix a, std::size_t columns);

}  // namespace grpd::linalg
