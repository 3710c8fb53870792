#include "grpd/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace grpd {

Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(edges_.begin(), edges_.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (Index v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].empty()) throw GraphError("empty vertex id");
    if (!vindex_.emplace(vertices_[v], v).second) throw GraphError("duplicate vertex id: " + vertices_[v]);
  }
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  for (Index e = 0; e < edges_.size(); ++e) {
    const auto& s = edges_[e];
    if (s.id.empty()) throw GraphError("empty edge id");
    if (vindex_.count(s.id)) throw GraphError("id used for both a vertex and an edge: " + s.id);
    if (!eindex_.emplace(s.id, e).second) throw GraphError("duplicate edge id: " + s.id);
    auto sv = vindex_.find(s.src), dv = vindex_.find(s.dst);
    if (sv == vindex_.end()) throw GraphError("edge " + s.id + " starts at unknown vertex " + s.src);
    if (dv == vindex_.end()) throw GraphError("edge " + s.id + " ends at unknown vertex " + s.dst);
    src_.push_back(sv->second);
    dst_.push_back(dv->second);
    out_[sv->second].push_back(e);
    in_[dv->second].push_back(e);
  }
}

std::optional<Graph::Index> Graph::find_vertex(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) return std::nullopt;
  return it->second;
}

std::optional<Graph::Index> Graph::find_edge(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::int64_t>> Graph::adjacency() const {
  std::vector<std::vector<std::int64_t>> a(vertex_count(), std::vector<std::int64_t>(vertex_count(), 0));
  for (Index e = 0; e < edge_count(); ++e) ++a[src_[e]][dst_[e]];
  return a;
}

std::vector<EdgeSpec> Graph::edge_specs() const { return edges_; }

namespace {

std::vector<bool> reach(const Graph& g, Graph::Index start, bool forward) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Graph::Index> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : forward ? g.out_edges(v) : g.in_edges(v)) {
      auto w = forward ? g.dst(e) : g.src(e);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Tarjan; components in reverse topological order.
std::vector<std::vector<Graph::Index>> components(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Graph::Index> stack;
  std::vector<std::vector<Graph::Index>> out;
  int counter = 0;
  std::function<void(Graph::Index)> visit = [&](Graph::Index v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto e : g.out_edges(v)) {
      auto w = g.dst(e);
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<Graph::Index> comp;
      Graph::Index w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (Graph::Index v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return out;
}

}  // namespace

bool strongly_connected(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  auto f = reach(g, 0, true), b = reach(g, 0, false);
  return std::all_of(f.begin(), f.end(), [](bool x) { return x; }) &&
         std::all_of(b.begin(), b.end(), [](bool x) { return x; });
}

bool essential(const Graph& g) {
  for (Graph::Index v = 0; v < g.vertex_count(); ++v)
    if (g.out_edges(v).empty() || g.in_edges(v).empty()) return false;
  return true;
}

bool trivial(const Graph& g) {
  if (g.edge_count() == 0 || !strongly_connected(g)) return false;
  for (Graph::Index v = 0; v < g.vertex_count(); ++v)
    if (g.out_edges(v).size() != 1 || g.in_edges(v).size() != 1) return false;
  return true;
}

CycleEnumeration simple_cycles(const Graph& g, std::size_t limit) {
  // Johnson's algorithm on the subgraph of vertices >= s, one start at a time.
  CycleEnumeration out;
  const auto n = g.vertex_count();
  std::vector<bool> blocked(n);
  std::vector<std::set<Graph::Index>> b(n);
  std::vector<Graph::Index> path;
  struct Stop {};

  std::function<void(Graph::Index)> unblock = [&](Graph::Index v) {
    blocked[v] = false;
    auto pending = std::move(b[v]);
    b[v].clear();
    for (auto w : pending)
      if (blocked[w]) unblock(w);
  };
  for (Graph::Index s = 0; s < n; ++s) {
    std::fill(blocked.begin(), blocked.end(), false);
    for (auto& x : b) x.clear();
    std::function<bool(Graph::Index)> circuit = [&](Graph::Index v) {
      bool found = false;
      blocked[v] = true;
      for (auto e : g.out_edges(v)) {
        auto w = g.dst(e);
        if (w < s) continue;
        if (w == s) {
          if (out.cycles.size() >= limit) throw Stop{};
          path.push_back(e);
          out.cycles.push_back(path);
          path.pop_back();
          found = true;
        } else if (!blocked[w]) {
          path.push_back(e);
          if (circuit(w)) found = true;
          path.pop_back();
        }
      }
      if (found) {
        unblock(v);
      } else {
        for (auto e : g.out_edges(v))
          if (g.dst(e) >= s) b[g.dst(e)].insert(v);
      }
      return found;
    };
    try {
      circuit(s);
    } catch (Stop) {
      out.complete = false;
      return out;
    }
  }
  return out;
}

CycleExit cycle_exit(const Graph& g, std::size_t limit) {
  CycleExit r;
  auto cycles = simple_cycles(g, limit);
  if (cycles.complete) {
    r.method = "cycles";
    for (const auto& c : cycles.cycles) {
      bool exits = std::any_of(c.begin(), c.end(), [&](Graph::Index e) { return g.out_edges(g.src(e)).size() > 1; });
      if (!exits) {
        r.every_cycle_has_exit = false;
        r.witness = c;
        return r;
      }
    }
    return r;
  }
  r.method = "components";
  auto comps = components(g);
  std::sort(comps.begin(), comps.end());
  for (const auto& comp : comps) {
    const auto v0 = comp.front();
    bool cyclic = comp.size() > 1 ||
                  std::any_of(g.out_edges(v0).begin(), g.out_edges(v0).end(), [&](auto e) { return g.dst(e) == v0; });
    if (!cyclic) continue;
    if (std::all_of(comp.begin(), comp.end(), [&](auto v) { return g.out_edges(v).size() == 1; })) {
      r.every_cycle_has_exit = false;
      auto v = v0;
      do {
        auto e = g.out_edges(v).front();
        r.witness.push_back(e);
        v = g.dst(e);
      } while (v != v0);
      return r;
    }
  }
  return r;
}

std::optional<std::vector<Graph::Index>> find_cycle(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<int> colour(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Graph::Index> edges;
  std::optional<std::vector<Graph::Index>> found;
  std::function<bool(Graph::Index)> dfs = [&](Graph::Index v) {
    colour[v] = 1;
    for (auto e : g.out_edges(v)) {
      auto w = g.dst(e);
      if (colour[w] == 1) {
        std::vector<Graph::Index> cycle;
        auto it = std::find_if(edges.begin(), edges.end(), [&](auto x) { return g.src(x) == w; });
        cycle.assign(it, edges.end());
        cycle.push_back(e);
        found = cycle;
        return true;
      }
      if (colour[w] == 0) {
        edges.push_back(e);
        if (dfs(w)) return true;
        edges.pop_back();
      }
    }
    colour[v] = 2;
    return false;
  };
  for (Graph::Index v = 0; v < n; ++v)
    if (colour[v] == 0 && dfs(v)) break;
  return found;
}

GraphPredicates graph_predicates(const Graph& g, std::size_t cycle_limit) {
  return {strongly_connected(g), essential(g), trivial(g), cycle_exit(g, cycle_limit)};
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const auto n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

DetSign det_sign(const Graph& g) {
  const auto a = g.adjacency();
  const auto n = a.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = BigInt((i == j ? 1 : 0) - a[i][j]);
  DetSign r{determinant(std::move(m)), 0};
  r.sign = r.det > 0 ? 1 : (r.det < 0 ? -1 : 0);
  return r;
}

}  // namespace grpd
