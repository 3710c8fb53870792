#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grpd/normaliser.hpp"
#include "grpd/presentation.hpp"

namespace grpd {

using Vec = RingPresentation::Vec;

/// A point of the Stone spectrum of E(D): the atom it selects.
struct Character {
  Vec atom;
  std::string name;  // basis ids in the atom's support, joined by '+'
};

/// Atoms of E(D), ordered by support. Over F_p with p^dim(D) <= cap the
/// idempotents are enumerated; otherwise the diagonal basis must consist of
/// orthogonal idempotents up to units. Throws PresentationError.
std::vector<Character> stone_spectrum(const RingPresentation& p,
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// π_x(q) for an idempotent q of D: 1 iff the atom lies below q.
bool evaluate(const RingPresentation& p, const Character& x, const Vec& q);

/// Ring-only normaliser test. Returns the partner n* when n is a homogeneous
/// normaliser of D; it is the unique m with nm = 1_r, mn = 1_s, 1_s m = m = m 1_r,
/// where 1_r, 1_s are the sums of atoms not annihilating n on the left/right.
/// Needs the atoms to sum to a unit for the algebra.
std::optional<Vec> normaliser_partner(const RingPresentation& p,
                                      const std::vector<Character>& atoms, const Vec& n);

/// Idempotent-free part of the class relation: two normalisers are ∼ iff their
/// signatures coincide.
std::string class_signature(const RingPresentation& p, const std::vector<Character>& atoms,
                            const Vec& n, const Vec& partner);

enum class SearchMode {
  Auto,      // black-box when feasible, else white-box
  BlackBox,  // every homogeneous element over F_p
  WhiteBox,  // the provenance vectors
};

std::string to_string(SearchMode m);

struct PresentedClass {
  Vec representative;
  Vec partner;
  std::optional<Grade> grade;
  std::vector<std::size_t> support;
  std::size_t members = 0;
};

struct NormaliserSearch {
  std::vector<PresentedClass> classes;  // ordered by (support ids, grade)
  std::map<std::string, std::size_t> by_signature;
  SearchMode mode = SearchMode::Auto;
  std::size_t normalisers_seen = 0;
};

/// One representative per class of homogeneous normalisers. Throws
/// EnumerationTooLarge when black-box search is infeasible and no provenance
/// is available, PresentationError when provenance is not a normaliser.
NormaliserSearch find_normalisers(const RingPresentation& p, const std::vector<Character>& atoms,
                                  SearchMode mode, std::uint64_t cap = kDefaultEnumerationCap);

/// Class of a normaliser with a known partner; throws std::logic_error when the
/// search never met that class.
std::size_t class_of(const NormaliserSearch& s, const RingPresentation& p,
                     const std::vector<Character>& atoms, const Vec& n, const Vec& partner);

struct MasaReport {
  std::size_t diagonal_dim = 0;
  std::size_t commutant_dim = 0;  // commutant of D in the grade-zero component
  bool holds() const { return diagonal_dim == commutant_dim; }
};

/// Solves x d = d x over the grade-zero basis for all diagonal d.
MasaReport diagonal_masa(const RingPresentation& p);

struct GermGroupoid {
  Groupoid groupoid;
  std::vector<std::size_t> germ_class;      // morphism -> class of f·1_x
  std::map<std::size_t, Groupoid::Id> germ_of_class;
  std::vector<std::size_t> unit_character;  // character -> unit morphism
  std::size_t germ_pairs = 0;               // (class, point) pairs in the action domain
  std::size_t checked_compositions = 0;
};

/// φ_[f](π_x)(q) = π_x(f* q f): the character index it selects, or nullopt when
/// x is outside the domain of [f].
std::optional<std::size_t> act(const RingPresentation& p, const std::vector<Character>& atoms,
                               const PresentedClass& cls, std::size_t x);

/// Germs [[f], x] with composition [f, φ_h(x)][h, x] = [fh, x], inverse
/// [f*, φ_f(x)] and grade of [f]. Well-definedness is checked on every pair of
/// representatives when there are at most 64 classes, and on the first 64
/// otherwise. Throws std::logic_error if it fails.
GermGroupoid germ_groupoid(const RingPresentation& p, const std::vector<Character>& atoms,
                           const NormaliserSearch& search);

/// The whole pipeline; stages in order.
struct Reconstruction {
  std::vector<Character> spectrum;
  MasaReport masa;
  NormaliserSearch search;
  GermGroupoid germs;
};

struct StageResult {
  std::string stage;
  std::string detail;
};

/// A stage failed. `hypothesis` marks failures of the theorem's assumptions
/// rather than of the computation.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message, bool hypothesis,
                std::vector<StageResult> completed = {});
  const std::string& stage() const { return stage_; }
  const std::string& message() const { return message_; }
  bool hypothesis() const { return hypothesis_; }
  const std::vector<StageResult>& completed() const { return completed_; }

 private:
  std::string stage_;
  std::string message_;
  bool hypothesis_;
  std::vector<StageResult> completed_;
};

struct ReconstructOptions {
  SearchMode mode = SearchMode::Auto;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Stages: presentation, spectrum, local-units, masa, normalisers, germ-groupoid.
Reconstruction reconstruct(const RingPresentation& p, const ReconstructOptions& opts,
                           std::vector<StageResult>* log = nullptr);

struct RoundtripReport {
  std::vector<StageResult> stages;
  RingPresentation presentation;     // of A_R(g), point-mass basis
  Reconstruction result;
  std::vector<std::size_t> epsilon;  // unit index in g.units() -> character
  GroupoidMap witness;               // α -> [[1_V], ε_src(α)]
};

/// Reconstructs g from the presentation of A_R(g) and checks that
/// α ↦ [[1_V], ε_src(α)] is a grading-preserving isomorphism. Throws PipelineError.
RoundtripReport verify_roundtrip(const Groupoid& g, const Ring& ring,
                                 const ReconstructOptions& opts = {});

struct InducedIso {
  Reconstruction source, target;
  GroupoidMap map;  // source germs -> target germs
};

/// ρ̄ for a graded ring isomorphism ρ with ρ(D_P) inside the commutant of D_Q.
/// Checks multiplicativity, grading, bijectivity and the diagonal condition in
/// that order, upgrades the inclusion to ρ(D_P) = D_Q, then maps germ classes.
/// Throws PipelineError naming the failed check.
InducedIso induced_groupoid_iso(const RingPresentation& p, const RingPresentation& q,
                                const LinearMap& rho, const ReconstructOptions& opts = {});

}  // namespace grpd
