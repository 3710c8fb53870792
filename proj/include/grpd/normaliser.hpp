#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grpd/algebra.hpp"

namespace grpd {

/// The ambient groupoid does not satisfy a hypothesis of the characterisation
/// (its graded kernel has nontrivial isotropy). Distinct from "not a normaliser".
class HypothesisViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n = Σ a_V 1_V over pairwise-disjoint bisections V with unit coefficients a_V,
/// whose union is a homogeneous bisection. The zero normaliser has no pieces
/// and no grade.
struct StandardForm {
  std::optional<Grade> grade;
  std::vector<std::pair<RingElement, Bisection>> pieces;

  Bisection support(const Groupoid& g) const;
  AlgebraElement normaliser(GroupoidPtr g, Ring ring) const;
  /// Σ a_V⁻¹ 1_{V⁻¹}.
  AlgebraElement partner(GroupoidPtr g, Ring ring) const;
};

/// Structural test: supp(n) is a homogeneous bisection and every coefficient is
/// a unit. Pieces are the maximal constant-coefficient parts, ordered by their
/// first morphism. Throws HypothesisViolated unless the kernel is principal.
std::optional<StandardForm> is_normaliser(const AlgebraElement& n);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Definitional oracle over a prime field: n is homogeneous and some m in the
/// whole algebra has mnm = m, nmn = n and m 1_K n, n 1_K m ∈ D for every K ⊆ G⁽⁰⁾.
/// Throws EnumerationTooLarge when p^|G| exceeds `cap`, std::invalid_argument
/// outside prime fields.
bool bf_is_normaliser(const AlgebraElement& n, std::uint64_t cap = kDefaultEnumerationCap);

/// Every generalised inverse m of n meeting the normaliser condition, found by
/// exhaustive search. Same preconditions as bf_is_normaliser.
std::vector<AlgebraElement> bf_normaliser_partners(const AlgebraElement& n,
                                                   std::uint64_t cap = kDefaultEnumerationCap);

/// n*(γ) = n(γ⁻¹)⁻¹ on the support. Throws std::invalid_argument for non-normalisers.
AlgebraElement normaliser_star(const AlgebraElement& n);

enum class IdempotentScope { Atoms, AllIdempotents };

/// The class relation on normalisers: equal grades, f*pf = h*ph and
/// fpf* = hph* for every idempotent p of D. Atoms suffice because both sides
/// are additive over disjoint unions; AllIdempotents checks every 1_K.
bool equiv(const AlgebraElement& f, const AlgebraElement& h,
           IdempotentScope scope = IdempotentScope::Atoms);

struct NormaliserClass {
  AlgebraElement representative;
  Bisection support;
  std::optional<Grade> grade;
  std::size_t members = 0;
};

enum class EnumerationMode {
  BruteForce,  // every homogeneous element over F_p, filtered by is_normaliser
  WhiteBox,    // one representative 1_V per homogeneous bisection V
};

struct NormaliserQuotient {
  std::vector<NormaliserClass> classes;  // ordered by (support, grade)
  std::vector<std::vector<std::size_t>> product;
  std::vector<std::size_t> star;
  std::size_t normalisers_seen = 0;
  std::size_t checked_pairs = 0;  // representative pairs used to confirm well-definedness

  /// q̃([f]) = supp(f).
  const Bisection& q_tilde(std::size_t cls) const { return classes[cls].support; }
};

/// Builds N_⋆(D)/∼ with its product and star tables. Throws HypothesisViolated
/// for a non-principal kernel, EnumerationTooLarge past `cap`, and
/// std::logic_error if [f][h] = [fh] turns out not to be well defined.
NormaliserQuotient normaliser_semigroup(GroupoidPtr g, Ring ring, EnumerationMode mode,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// Checks that q̃ is a bijection onto the homogeneous bisections that carries
/// the product and star tables to set product and inversion. Returns the first
/// failure, if any.
std::optional<std::string> check_q_tilde(const Groupoid& g, const NormaliserQuotient& quotient);

}  // namespace grpd
