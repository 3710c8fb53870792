#include "grpd/grade.hpp"

#include <stdexcept>

namespace grpd {

std::vector<std::int64_t> GradeGroup::moduli() const {
  std::vector<std::int64_t> m(static_cast<std::size_t>(free_rank), 0);
  m.insert(m.end(), torsion.begin(), torsion.end());
  return m;
}

bool GradeGroup::is_trivial() const {
  if (free_rank != 0) return false;
  for (auto m : torsion)
    if (m != 1) return false;
  return true;
}

Grade::Grade(std::vector<std::int64_t> coords, std::vector<std::int64_t> moduli)
    : coords_(std::move(coords)), moduli_(std::move(moduli)) {
  if (coords_.size() != moduli_.size())
    throw std::invalid_argument("grade has " + std::to_string(coords_.size()) +
                                " coordinates but the group has rank " +
                                std::to_string(moduli_.size()));
  for (auto m : moduli_)
    if (m < 0) throw std::invalid_argument("negative modulus in grading group");
  reduce();
}

Grade Grade::zero(const GradeGroup& group) {
  auto m = group.moduli();
  return Grade(std::vector<std::int64_t>(m.size(), 0), m);
}

Grade Grade::of(const GradeGroup& group, std::vector<std::int64_t> coords) {
  return Grade(std::move(coords), group.moduli());
}

void Grade::reduce() {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    auto m = moduli_[i];
    if (m > 0) coords_[i] = ((coords_[i] % m) + m) % m;
  }
}

bool Grade::is_zero() const {
  for (auto c : coords_)
    if (c != 0) return false;
  return true;
}

Grade Grade::operator+(const Grade& other) const {
  if (moduli_ != other.moduli_) throw std::invalid_argument("grades from different groups");
  Grade out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += other.coords_[i];
  out.reduce();
  return out;
}

Grade Grade::operator-() const {
  Grade out = *this;
  for (auto& c : out.coords_) c = -c;
  out.reduce();
  return out;
}

std::string Grade::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + "]";
}

}  // namespace grpd
