#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grpd/ring.hpp"

namespace grpd {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EdgeSpec {
  std::string id, src, dst;
};

/// Finite directed graph. Vertices and edges are indexed in lexicographic
/// order of their ids; vertex and edge ids must be disjoint so that bare ids
/// in expressions are unambiguous.
class Graph {
 public:
  using Index = std::uint32_t;

  Graph() = default;
  /// Throws GraphError on duplicate or dangling ids.
  Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex(Index v) const { return vertices_[v]; }
  const std::string& edge(Index e) const { return edges_[e].id; }
  Index src(Index e) const { return src_[e]; }
  Index dst(Index e) const { return dst_[e]; }
  /// Out-edges in id order; the first one is the distinguished edge.
  const std::vector<Index>& out_edges(Index v) const { return out_[v]; }
  const std::vector<Index>& in_edges(Index v) const { return in_[v]; }
  bool is_sink(Index v) const { return out_[v].empty(); }

  std::optional<Index> find_vertex(const std::string& id) const;
  std::optional<Index> find_edge(const std::string& id) const;

  /// (A)_{uv} = number of edges u -> v.
  std::vector<std::vector<std::int64_t>> adjacency() const;

  std::vector<EdgeSpec> edge_specs() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<EdgeSpec> edges_;
  std::map<std::string, Index> vindex_, eindex_;
  std::vector<Index> src_, dst_;
  std::vector<std::vector<Index>> out_, in_;
};

bool strongly_connected(const Graph& g);
/// No sinks and no sources.
bool essential(const Graph& g);
/// The graph is one cycle and nothing else.
bool trivial(const Graph& g);

/// Simple cycles as edge lists, each rotated to start at its smallest vertex,
/// in discovery order. Stops after `limit` cycles; `complete` says whether it
/// finished.
struct CycleEnumeration {
  std::vector<std::vector<Graph::Index>> cycles;
  bool complete = true;
};
CycleEnumeration simple_cycles(const Graph& g, std::size_t limit);

struct CycleExit {
  bool every_cycle_has_exit = true;
  std::string method;  // "cycles" or "components"
  std::vector<Graph::Index> witness;  // edges of a cycle without exit
};

/// Enumerates simple cycles up to `limit`; past that it falls back to the
/// strongly connected components: a cycle without exit is exactly a cyclic
/// component whose vertices all have out-degree one.
CycleExit cycle_exit(const Graph& g, std::size_t limit = 10000);

/// First cycle met by depth-first search in canonical order, as edges.
std::optional<std::vector<Graph::Index>> find_cycle(const Graph& g);

struct GraphPredicates {
  bool strongly_connected, essential, trivial;
  CycleExit exits;
};
GraphPredicates graph_predicates(const Graph& g, std::size_t cycle_limit = 10000);

/// Fraction-free (Bareiss) determinant.
BigInt determinant(std::vector<std::vector<BigInt>> m);

struct DetSign {
  BigInt det;
  int sign;
};
/// det(I - A) for the adjacency matrix A.
DetSign det_sign(const Graph& g);

}  // namespace grpd
