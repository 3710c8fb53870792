#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grpd/algebra.hpp"
#include "grpd/lpa.hpp"

namespace grpd {

/// Raised for graphs with a cycle; the message names one.
class CyclicGraph : public std::invalid_argument {
 public:
  CyclicGraph(const Graph& g, const std::vector<Graph::Index>& cycle);
  const std::string& cycle() const { return cycle_; }

 private:
  std::string cycle_;
};

/// Paths ending at a sink, canonical order; includes the empty path at each sink.
std::vector<Path> boundary_paths(const Graph& g);

inline constexpr std::size_t kMaxGraphGroupoid = 4096;

/// Graph groupoid of a finite acyclic graph: units are boundary paths x,
/// named "(x,x)"; morphisms are pairs "(α,β)" of boundary paths ending at the
/// same sink, with src = β, dst = α and c(α,β) = |α| - |β| in Z. Throws
/// CyclicGraph, or EnumerationTooLarge past `max_morphisms`.
Groupoid acyclic_graph_groupoid(const Graph& g, std::size_t max_morphisms = kMaxGraphGroupoid);

/// α_E(μν*) = Σ_x δ_(μx, νx) over boundary paths x from target(μ).
AlgebraElement alpha(const GroupoidPtr& groupoid, const LpaElement& a);

struct BridgeCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string failure;  // first offending case
};

struct BridgeReport {
  std::vector<BridgeCheck> checks;
  std::size_t morphisms = 0, units = 0, normal_basis = 0;
  bool passed() const;
};

/// Checks that α_E respects CK1/CK2, vertex idempotents, diagonals, grading,
/// star, `samples` random products, and is injective on the normal basis.
/// Throws CyclicGraph for graphs with a cycle.
BridgeReport alpha_bridge_check(const GraphPtr& g, const Ring& ring, std::size_t samples,
                                std::uint64_t seed);

/// A random normal-form element: up to `terms` monomials from `basis` with
/// small nonzero coefficients.
LpaElement random_element(const GraphPtr& g, const Ring& ring, const std::vector<Monomial>& basis,
                          std::size_t terms, std::mt19937_64& rng);

}  // namespace grpd
