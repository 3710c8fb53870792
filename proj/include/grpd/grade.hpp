#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace grpd {

/// Shape of a finitely generated abelian group Z^free_rank x Z/m1 x ... x Z/mk.
struct GradeGroup {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;

  /// Per-coordinate moduli; 0 marks a free coordinate.
  std::vector<std::int64_t> moduli() const;
  std::size_t rank() const { return static_cast<std::size_t>(free_rank) + torsion.size(); }
  bool is_trivial() const;

  friend bool operator==(const GradeGroup&, const GradeGroup&) = default;
};

/// Element of a GradeGroup. Coordinates of torsion components are kept in [0, m).
class Grade {
 public:
  Grade() = default;
  Grade(std::vector<std::int64_t> coords, std::vector<std::int64_t> moduli);

  static Grade zero(const GradeGroup& group);
  static Grade of(const GradeGroup& group, std::vector<std::int64_t> coords);

  const std::vector<std::int64_t>& coords() const { return coords_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  bool is_zero() const;

  Grade operator+(const Grade& other) const;
  Grade operator-() const;
  Grade operator-(const Grade& other) const { return *this + (-other); }

  /// "[1,0]"; the neutral element of the trivial group prints as "[]".
  std::string to_string() const;

  friend bool operator==(const Grade&, const Grade&) = default;
  friend auto operator<=>(const Grade&, const Grade&) = default;

 private:
  void reduce();

  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> moduli_;
};

}  // namespace grpd
