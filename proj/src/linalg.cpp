#include "grpd/linalg.hpp"

namespace grpd::linalg {

Ring field_of(const Ring& ring) {
  return ring.kind() == Ring::Kind::Integers ? Ring::rationals() : ring;
}

RingElement to_field(const RingElement& r) {
  if (r.ring().kind() != Ring::Kind::Integers) return r;
  return RingElement(Ring::rationals(), r.value());
}

namespace {

struct Echelon {
  Matrix rows;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form; the last column is treated as part of the matrix.
Echelon reduce(const Ring& field, Matrix a, std::size_t columns) {
  for (auto& row : a) {
    row.resize(columns, RingElement::zero(field));
    for (auto& x : row) x = to_field(x);
  }
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < a.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.size() && a[pivot][c].is_zero()) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[r], a[pivot]);
    const auto inv = ring_unit_inverse(a[r][c]);
    for (auto& x : a[r]) x = x * inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const auto f = a[i][c];
      for (std::size_t j = c; j < columns; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

}  // namespace

std::optional<Solution> solve(const Ring& field, Matrix a, Vector b, std::size_t columns) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i].resize(columns, RingElement::zero(field));
    a[i].push_back(to_field(b[i]));
  }
  auto e = reduce(field, std::move(a), columns + 1);
  Solution s;
  s.particular.assign(columns, RingElement::zero(field));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const auto c = e.pivot_cols[i];
    if (c == columns) return std::nullopt;
    s.particular[c] = e.rows[i][columns];
  }
  s.nullity = columns - e.pivot_cols.size();
  return s;
}

std::size_t rank(const Ring& field, Matrix a, std::size_t columns) {
  return reduce(field, std::move(a), columns).pivot_cols.size();
}

std::vector<Vector> nullspace(const Ring& field, Matrix a, std::size_t columns) {
  auto e = reduce(field, std::move(a), columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v(columns, RingElement::zero(field));
    v[free] = RingElement::one(field);
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivot_cols[i]] = -e.rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace grpd::linalg
