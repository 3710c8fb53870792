#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

using namespace grpd;

std::map<std::string, RingElement> convolve_by_names(const AlgebraElement& f, const AlgebraElement& h) {
  const auto& g = f.groupoid();
  const auto t = g.tables();
  std::map<std::string, RingElement> fv, hv, out;
  for (const auto& [a, c] : f.terms()) fv.emplace(g.name(a), c);
  for (const auto& [a, c] : h.terms()) hv.emplace(g.name(a), c);
  for (const auto& [a, b, ab] : t.compose) {
    auto i = fv.find(a), j = hv.find(b);
    if (i == fv.end() || j == hv.end()) continue;
    auto [it, fresh] = out.emplace(ab, i->second * j->second);
    if (!fresh) it->second += i->second * j->second;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::vector<std::vector<Groupoid::Id>> homogeneous_bisections(const Groupoid& g) {
  std::vector<std::vector<Groupoid::Id>> out;
  const auto n = g.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Groupoid::Id> s;
    for (Groupoid::Id a = 0; a < n; ++a)
      if (mask >> a & 1) s.push_back(a);
    bool ok = true;
    std::set<Groupoid::Id> srcs, dsts;
    for (auto a : s) {
      ok = ok && srcs.insert(g.src(a)).second && dsts.insert(g.dst(a)).second && g.grade(a) == g.grade(s.front());
    }
    if (ok) out.push_back(s);
  }
  return out;
}

bool preserves_tables(const Groupoid& g, const Groupoid& h, const std::vector<Groupoid::Id>& map) {
  if (g.size() != h.size() || map.size() != g.size()) return false;
  std::set<Groupoid::Id> image(map.begin(), map.end());
  if (image.size() != map.size() || *image.rbegin() >= h.size()) return false;
  for (Groupoid::Id a = 0; a < g.size(); ++a) {
    const auto x = map[a];
    if (g.is_unit(a) != h.is_unit(x) || map[g.src(a)] != h.src(x) || map[g.dst(a)] != h.dst(x) ||
        map[g.inv(a)] != h.inv(x) || g.grade(a).coords() != h.grade(x).coords())
      return false;
    for (Groupoid::Id b = 0; b < g.size(); ++b) {
      const auto ab = g.compose(a, b);
      const auto xy = h.compose(x, map[b]);
      if (ab.has_value() != xy.has_value()) return false;
      if (ab && map[*ab] != *xy) return false;
    }
  }
  return true;
}

bool isomorphic(const Groupoid& g, const Groupoid& h) {
  const auto n = g.size();
  if (n != h.size()) return false;
  std::vector<Groupoid::Id> map(n, Groupoid::kNone);
  std::vector<bool> used(n, false);
  std::function<bool(Groupoid::Id)> go = [&](Groupoid::Id a) -> bool {
    if (a == n) return preserves_tables(g, h, map);
    for (Groupoid::Id x = 0; x < n; ++x) {
      if (used[x] || g.is_unit(a) != h.is_unit(x) || g.grade(a).coords() != h.grade(x).coords()) continue;
      map[a] = x;
      bool ok = true;
      for (Groupoid::Id b = 0; b <= a && ok; ++b) {
        const auto y = map[b];
        for (auto [p, q, px, qy] : {std::tuple{a, b, x, y}, std::tuple{b, a, y, x}}) {
          const auto pq = g.compose(p, q);
          const auto xy = h.compose(px, qy);
          if (pq.has_value() != xy.has_value()) ok = false;
          else if (pq && map[*pq] != Groupoid::kNone && map[*pq] != *xy) ok = false;
        }
      }
      if (ok) {
        used[x] = true;
        if (go(a + 1)) return true;
        used[x] = false;
      }
      map[a] = Groupoid::kNone;
    }
    return false;
  };
  return go(0);
}

bool kernel_has_isotropy(const Groupoid& g) {
  for (Groupoid::Id a = 0; a < g.size(); ++a)
    if (!g.is_unit(a) && g.src(a) == g.dst(a) && g.grade(a).is_zero()) return true;
  return false;
}

std::int64_t laplace_det(const std::vector<std::vector<std::int64_t>>& m) {
  const auto n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    det += (j % 2 ? -1 : 1) * m[0][j] * laplace_det(minor);
  }
  return det;
}

std::int64_t det_i_minus_a(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  for (Graph::Index e = 0; e < g.edge_count(); ++e) m[g.src(e)][g.dst(e)] -= 1;
  for (std::size_t i = 0; i < n; ++i) m[i][i] += 1;
  return laplace_det(m);
}

namespace {

std::vector<std::vector<bool>> closure(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (Graph::Index e = 0; e < g.edge_count(); ++e) r[g.src(e)][g.dst(e)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

bool strongly_connected(const Graph& g) {
  const auto r = closure(g);
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    for (std::size_t j = 0; j < g.vertex_count(); ++j)
      if (i != j && !r[i][j]) return false;
  return g.vertex_count() > 0;
}

bool has_cycle(const Graph& g) {
  const auto r = closure(g);
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (r[i][i]) return true;
  return false;
}

bool some_cycle_without_exit(const Graph& g) {
  for (Graph::Index v = 0; v < g.vertex_count(); ++v) {
    auto w = v;
    for (std::size_t step = 0; step < g.vertex_count(); ++step) {
      if (g.out_edges(w).size() != 1) break;
      w = g.dst(g.out_edges(w).front());
      if (w == v) return true;
    }
  }
  return false;
}

std::size_t graph_groupoid_size(const Graph& g) {
  const auto n = g.vertex_count();
  // count[v][s]: paths from v to sink s, memoised over an acyclic graph.
  std::vector<std::vector<std::size_t>> count(n);
  std::function<const std::vector<std::size_t>&(Graph::Index)> from = [&](Graph::Index v) -> const std::vector<std::size_t>& {
    if (!count[v].empty()) return count[v];
    std::vector<std::size_t> c(n, 0);
    if (g.is_sink(v)) c[v] = 1;
    for (auto e : g.out_edges(v)) {
      const auto& d = from(g.dst(e));
      for (std::size_t s = 0; s < n; ++s) c[s] += d[s];
    }
    return count[v] = c;
  };
  std::size_t total = 0;
  for (Graph::Index s = 0; s < n; ++s) {
    if (!g.is_sink(s)) continue;
    std::size_t into = 0;
    for (Graph::Index v = 0; v < n; ++v) into += from(v)[s];
    total += into * into;
  }
  return total;
}

PathRep::PathRep(const Graph& g) : g_(g) {
  std::function<void(Graph::Index, std::vector<std::string>&, Graph::Index)> walk =
      [&](Graph::Index start, std::vector<std::string>& p, Graph::Index v) {
        if (g.is_sink(v)) {
          auto q = p;
          q.insert(q.begin(), "@" + g.vertex(start));
          paths_.push_back(q);
        }
        for (auto e : g.out_edges(v)) {
          p.push_back(g.edge(e));
          walk(start, p, g.dst(e));
          p.pop_back();
        }
      };
  for (Graph::Index v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::string> p;
    walk(v, p, v);
  }
}

PathRep::Matrix PathRep::of(const LpaElement& a) const {
  // A path is "@start e1 e2 ..."; μν* sends νy to μy.
  auto key = [](const std::vector<std::string>& p) {
    std::string s;
    for (const auto& x : p) s += x + " ";
    return s;
  };
  Matrix out;
  for (const auto& [m, c] : a.terms()) {
    std::vector<std::string> mu, nu;
    for (auto e : m.mu.edges) mu.push_back(g_.edge(e));
    for (auto e : m.nu.edges) nu.push_back(g_.edge(e));
    for (const auto& p : paths_) {
      if (p.front() != "@" + g_.vertex(m.nu.source())) continue;
      if (p.size() - 1 < nu.size() || !std::equal(nu.begin(), nu.end(), p.begin() + 1)) continue;
      std::vector<std::string> image{"@" + g_.vertex(m.mu.source())};
      image.insert(image.end(), mu.begin(), mu.end());
      image.insert(image.end(), p.begin() + 1 + static_cast<std::ptrdiff_t>(nu.size()), p.end());
      auto [it, fresh] = out.emplace(std::pair{key(image), key(p)}, c);
      if (!fresh) it->second += c;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

PathRep::Matrix PathRep::multiply(const Matrix& a, const Matrix& b) {
  Matrix out;
  for (const auto& [ij, x] : a)
    for (const auto& [jk, y] : b) {
      if (ij.second != jk.first) continue;
      auto [it, fresh] = out.emplace(std::pair{ij.first, jk.second}, x * y);
      if (!fresh) it->second += x * y;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace oracle
