#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grpd/grade.hpp"

namespace grpd {

/// Raw groupoid data as it appears in an input file. Nothing is assumed about
/// consistency; `validate` reports what is wrong with it.
struct GroupoidTables {
  std::vector<std::string> morphisms;
  std::vector<std::string> units;
  std::map<std::string, std::string> source;
  std::map<std::string, std::string> target;
  std::map<std::string, std::string> inverse;
  std::vector<std::array<std::string, 3>> compose;
  std::optional<GradeGroup> group;
  std::map<std::string, std::vector<std::int64_t>> grading;
  friend bool operator==(const GroupoidTables&, const GroupoidTables&) = default;
};

struct Violation {
  std::string axiom;
  std::vector<std::string> witnesses;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

/// Checks every groupoid axiom on raw tables. The report is empty iff the
/// tables describe a groupoid (with a cocycle grading, when one is given).
ValidationReport validate(const GroupoidTables& tables);

class InvalidGroupoid : public std::runtime_error {
 public:
  explicit InvalidGroupoid(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

class NotABisection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite discrete groupoid with an abelian grading. Morphisms are indexed
/// 0..size()-1 in lexicographic order of their ids; every "first found" and
/// every report in the library follows that order.
class Groupoid {
 public:
  using Id = std::uint32_t;
  static constexpr Id kNone = static_cast<Id>(-1);

  /// Throws InvalidGroupoid when `validate` finds anything.
  static Groupoid from_tables(const GroupoidTables& tables);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Id a) const { return names_[a]; }
  std::optional<Id> find(const std::string& name) const;
  Id at(const std::string& name) const;

  bool is_unit(Id a) const { return unit_flag_[a]; }
  const std::vector<Id>& units() const { return units_; }
  Id src(Id a) const { return src_[a]; }
  Id dst(Id a) const { return dst_[a]; }
  Id inv(Id a) const { return inv_[a]; }
  bool composable(Id a, Id b) const { return src_[a] == dst_[b]; }
  /// a·b, defined exactly when src(a) == dst(b).
  std::optional<Id> compose(Id a, Id b) const;
  Id compose_unchecked(Id a, Id b) const { return table_[a * names_.size() + b]; }

  const GradeGroup& grade_group() const { return group_; }
  const Grade& grade(Id a) const { return grades_[a]; }
  Grade neutral_grade() const { return Grade::zero(group_); }
  bool has_explicit_grading() const { return explicit_grading_; }

  /// Same groupoid regraded; throws InvalidGroupoid if `grades` is not a cocycle.
  Groupoid with_grading(const GradeGroup& group, const std::vector<Grade>& grades) const;
  Groupoid with_trivial_grading() const;

  GroupoidTables tables() const;

  /// The empty groupoid.
  Groupoid() = default;

 private:

  std::vector<std::string> names_;
  std::map<std::string, Id> index_;
  std::vector<bool> unit_flag_;
  std::vector<Id> units_;
  std::vector<Id> src_, dst_, inv_;
  std::vector<Id> table_;
  GradeGroup group_;
  std::vector<Grade> grades_;
  bool explicit_grading_ = false;
};

/// Sorted, duplicate-free set of morphisms.
using MorphSet = std::vector<Groupoid::Id>;

MorphSet make_set(std::vector<Groupoid::Id> elems);
MorphSet all_units(const Groupoid& g);

/// A subset on which src and dst are both injective.
class Bisection {
 public:
  Bisection() = default;
  /// Throws NotABisection.
  Bisection(const Groupoid& g, MorphSet elems);

  const MorphSet& elems() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  bool contains(Groupoid::Id a) const;

  friend bool operator==(const Bisection&, const Bisection&) = default;
  friend auto operator<=>(const Bisection&, const Bisection&) = default;

 private:
  MorphSet elems_;
};

bool is_bisection(const Groupoid& g, const MorphSet& set);

/// {ab : a in u, b in v, src(a) = dst(b)} without any bisection check.
MorphSet set_product(const Groupoid& g, const MorphSet& u, const MorphSet& v);
/// Set product that must land in S_G; throws NotABisection when it does not.
Bisection compose_sets(const Groupoid& g, const MorphSet& u, const MorphSet& v);
Bisection compose_sets(const Groupoid& g, const Bisection& u, const Bisection& v);
MorphSet invert_set(const Groupoid& g, const MorphSet& u);
Bisection invert_set(const Groupoid& g, const Bisection& u);
MorphSet src_set(const Groupoid& g, const MorphSet& u);
MorphSet dst_set(const Groupoid& g, const MorphSet& u);

/// Every unit has trivial isotropy inside the kernel of the grading.
bool is_principal_kernel(const Groupoid& g);

/// The common grade of a nonempty set, or nullopt when grades differ.
std::optional<Grade> common_grade(const Groupoid& g, const MorphSet& set);

struct HomogeneousBisection {
  Bisection set;
  std::optional<Grade> grade;  // absent for the empty bisection
};

inline constexpr std::uint64_t kDefaultBisectionCap = std::uint64_t{1} << 22;

/// All homogeneous bisections, the empty one first, then ordered by grade and
/// element list. Throws EnumerationTooLarge when 2^(largest fiber) > cap.
std::vector<HomogeneousBisection> homogeneous_bisections(
    const Groupoid& g, std::uint64_t cap = kDefaultBisectionCap);

/// Image of every morphism of g, indexed by g's ids.
using GroupoidMap = std::vector<Groupoid::Id>;

/// First failing property, or nullopt when `map` is a grading-preserving
/// isomorphism of groupoids.
std::optional<std::string> check_isomorphism(const Groupoid& g, const Groupoid& h,
                                             const GroupoidMap& map);

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 5'000'000;

/// Backtracking search for a grading-preserving isomorphism. Deterministic:
/// the witness returned is the first under canonical order of g and h.
std::optional<GroupoidMap> groupoid_isomorphic(const Groupoid& g, const Groupoid& h,
                                               std::uint64_t budget = kDefaultSearchBudget);

/// Up to `limit` grading-preserving automorphisms, identity first.
std::vector<GroupoidMap> groupoid_automorphisms(const Groupoid& g, std::size_t limit,
                                                std::uint64_t budget = kDefaultSearchBudget);

}  // namespace grpd
