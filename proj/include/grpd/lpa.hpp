#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "grpd/graph.hpp"
#include "grpd/ring.hpp"

namespace grpd {

using GraphPtr = std::shared_ptr<const Graph>;

/// A path e1...en with dst(ei) = src(ei+1), or the empty path at `vertex`.
/// For nonempty paths `vertex` is the source.
struct Path {
  Graph::Index vertex = 0;
  std::vector<Graph::Index> edges;

  std::size_t length() const { return edges.size(); }
  Graph::Index source() const { return vertex; }
  Graph::Index target(const Graph& g) const { return edges.empty() ? vertex : g.dst(edges.back()); }
  /// Edges joined by '.', or the vertex id.
  std::string to_string(const Graph& g) const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// μν* with target(μ) = target(ν).
struct Monomial {
  Path mu, nu;

  int grade() const { return static_cast<int>(mu.length()) - static_cast<int>(nu.length()); }
  bool is_diagonal() const { return mu == nu; }
  /// Both components end in the distinguished edge of its source.
  bool reducible(const Graph& g) const;
  /// "v", "e.f", "(f)^*", "e.(f)^*".
  std::string to_string(const Graph& g) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Total order: total length, then |μ|, then edge and vertex indices.
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_less(a, b); }
};

/// Element of L_R(E): finitely many monomials with nonzero coefficients. Values
/// built with `raw` may hold reducible monomials; every operation below
/// returns normal forms.
class LpaElement {
 public:
  using Terms = std::map<Monomial, RingElement, MonomialLess>;

  LpaElement(GraphPtr g, Ring ring) : g_(std::move(g)), ring_(ring) {}

  static LpaElement vertex(GraphPtr g, Ring ring, Graph::Index v);
  static LpaElement edge(GraphPtr g, Ring ring, Graph::Index e);   // s_e
  static LpaElement ghost(GraphPtr g, Ring ring, Graph::Index e);  // s_e*
  /// One monomial, not normalised. Throws std::invalid_argument if target(μ) != target(ν).
  static LpaElement raw(GraphPtr g, const RingElement& coef, Monomial m);

  const GraphPtr& graph_ptr() const { return g_; }
  const Graph& graph() const { return *g_; }
  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_normal() const;

  void add_term(const Monomial& m, const RingElement& c);

  LpaElement operator+(const LpaElement& o) const;
  LpaElement operator-(const LpaElement& o) const;
  LpaElement scaled(const RingElement& s) const;

  /// Grades of the stored monomials, ascending.
  std::vector<int> grades() const;
  LpaElement graded_component(int grade) const;

  /// "1 * v + -1 * f.(f)^*" in monomial order; "0" for zero.
  std::string to_string() const;

  friend bool operator==(const LpaElement& a, const LpaElement& b) {
    return a.g_ == b.g_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const LpaElement& o) const;

  GraphPtr g_;
  Ring ring_;
  Terms terms_;
};

/// Product of two monomials before normalisation; nullopt when it vanishes.
std::optional<Monomial> multiply_monomials(const Graph& g, const Monomial& a, const Monomial& b);

/// Rewrites μ'ê(ν'ê)* -> μ'ν'* - Σ_{e != ê, src(e) = src(ê)} μ'e(ν'e)* until
/// no reducible monomial is left. With `rng`, the site rewritten at each step
/// is chosen at random; otherwise the smallest reducible monomial goes first.
LpaElement normalize(const LpaElement& a, std::mt19937_64* rng = nullptr);

/// Normalised product. Throws std::invalid_argument on graph or ring mismatch.
LpaElement multiply(const LpaElement& a, const LpaElement& b);
inline LpaElement operator*(const LpaElement& a, const LpaElement& b) { return multiply(a, b); }

/// (μν*)* = νμ*.
LpaElement star(const LpaElement& a);

/// Every normal-form monomial has μ = ν.
bool is_lpa_diagonal(const LpaElement& a);
/// a·μμ* - μμ*·a == 0.
bool commutes_with_diagonal(const LpaElement& a, const Path& mu);

/// All paths of length <= max_length in canonical order.
std::vector<Path> paths_up_to(const Graph& g, std::size_t max_length);

/// Normal-form monomials μν* with |μ|, |ν| <= max_length.
std::vector<Monomial> normal_monomials(const Graph& g, std::size_t max_length);

}  // namespace grpd
