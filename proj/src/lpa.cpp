#include "grpd/lpa.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace grpd {

std::string Path::to_string(const Graph& g) const {
  if (edges.empty()) return g.vertex(vertex);
  std::string s;
  for (auto e : edges) s += (s.empty() ? "" : ".") + g.edge(e);
  return s;
}

bool Monomial::reducible(const Graph& g) const {
  if (mu.edges.empty() || nu.edges.empty()) return false;
  const auto e = mu.edges.back();
  return e == nu.edges.back() && g.out_edges(g.src(e)).front() == e;
}

std::string Monomial::to_string(const Graph& g) const {
  if (nu.edges.empty()) return mu.to_string(g);
  const auto ghost = "(" + nu.to_string(g) + ")^*";
  return mu.edges.empty() ? ghost : mu.to_string(g) + "." + ghost;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
  auto key = [](const Monomial& m) {
    return std::make_tuple(m.mu.length() + m.nu.length(), m.mu.length(), m.mu.vertex, std::cref(m.mu.edges),
                           m.nu.vertex, std::cref(m.nu.edges));
  };
  return key(a) < key(b);
}

LpaElement LpaElement::vertex(GraphPtr g, Ring ring, Graph::Index v) {
  return raw(std::move(g), RingElement::one(ring), {{v, {}}, {v, {}}});
}

LpaElement LpaElement::edge(GraphPtr g, Ring ring, Graph::Index e) {
  Monomial m{{g->src(e), {e}}, {g->dst(e), {}}};
  return raw(std::move(g), RingElement::one(ring), std::move(m));
}

LpaElement LpaElement::ghost(GraphPtr g, Ring ring, Graph::Index e) {
  Monomial m{{g->dst(e), {}}, {g->src(e), {e}}};
  return raw(std::move(g), RingElement::one(ring), std::move(m));
}

LpaElement LpaElement::raw(GraphPtr g, const RingElement& coef, Monomial m) {
  for (const Path* p : {&m.mu, &m.nu})
    for (std::size_t i = 0; i < p->edges.size(); ++i) {
      if (i == 0 && g->src(p->edges[0]) != p->vertex) throw std::invalid_argument("path does not start at its vertex");
      if (i > 0 && g->dst(p->edges[i - 1]) != g->src(p->edges[i])) throw std::invalid_argument("edges do not form a path");
    }
  if (m.mu.target(*g) != m.nu.target(*g)) throw std::invalid_argument("monomial paths end at different vertices");
  LpaElement a(std::move(g), coef.ring());
  a.add_term(m, coef);
  return a;
}

bool LpaElement::is_normal() const {
  return std::none_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.reducible(*g_); });
}

void LpaElement::add_term(const Monomial& m, const RingElement& c) {
  if (!(c.ring() == ring_)) throw RingMismatch("coefficient from " + c.ring().tag());
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void LpaElement::check_compatible(const LpaElement& o) const {
  if (g_ != o.g_) throw std::invalid_argument("path algebra elements over different graphs");
  if (!(ring_ == o.ring_)) throw RingMismatch("path algebra elements over different rings");
}

LpaElement LpaElement::operator+(const LpaElement& o) const {
  check_compatible(o);
  LpaElement r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return normalize(r);
}

LpaElement LpaElement::operator-(const LpaElement& o) const { return *this + o.scaled(-RingElement::one(ring_)); }

LpaElement LpaElement::scaled(const RingElement& s) const {
  LpaElement r(g_, ring_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * s);
  return r;
}

std::vector<int> LpaElement::grades() const {
  std::set<int> s;
  for (const auto& [m, c] : terms_) s.insert(m.grade());
  return {s.begin(), s.end()};
}

LpaElement LpaElement::graded_component(int grade) const {
  LpaElement r(g_, ring_);
  for (const auto& [m, c] : terms_)
    if (m.grade() == grade) r.add_term(m, c);
  return r;
}

std::string LpaElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.to_string() + " * " + m.to_string(*g_);
  }
  return s;
}

std::optional<Monomial> multiply_monomials(const Graph&, const Monomial& a, const Monomial& b) {
  const auto& nu = a.nu;
  const auto& alpha = b.mu;
  auto is_prefix = [](const Path& p, const Path& q) {
    return p.vertex == q.vertex && p.edges.size() <= q.edges.size() &&
           std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
  };
  if (is_prefix(nu, alpha)) {
    // α = νκ: (μν*)(νκβ*) = μκβ*.
    Monomial m{a.mu, b.nu};
    m.mu.edges.insert(m.mu.edges.end(), alpha.edges.begin() + nu.edges.size(), alpha.edges.end());
    return m;
  }
  if (is_prefix(alpha, nu)) {
    // ν = ακ': (μκ'*α*)(αβ*) = μ(βκ')*.
    Monomial m{a.mu, b.nu};
    m.nu.edges.insert(m.nu.edges.end(), nu.edges.begin() + alpha.edges.size(), nu.edges.end());
    return m;
  }
  return std::nullopt;
}

LpaElement normalize(const LpaElement& a, std::mt19937_64* rng) {
  const Graph& g = a.graph();
  LpaElement r = a;
  while (true) {
    std::vector<Monomial> sites;
    for (const auto& [m, c] : r.terms())
      if (m.reducible(g)) {
        sites.push_back(m);
        if (!rng) break;
      }
    if (sites.empty()) return r;
    const auto m = rng ? sites[(*rng)() % sites.size()] : sites.front();
    const auto c = r.terms().at(m);
    r.add_term(m, -c);
    const auto hat = m.mu.edges.back();
    Monomial head = m;
    head.mu.edges.pop_back();
    head.nu.edges.pop_back();
    if (head.mu.edges.empty()) head.mu.vertex = g.src(hat);
    if (head.nu.edges.empty()) head.nu.vertex = g.src(hat);
    r.add_term(head, c);
    for (auto e : g.out_edges(g.src(hat))) {
      if (e == hat) continue;
      Monomial sib = head;
      sib.mu.edges.push_back(e);
      sib.nu.edges.push_back(e);
      r.add_term(sib, -c);
    }
  }
}

LpaElement multiply(const LpaElement& a, const LpaElement& b) {
  if (a.graph_ptr() != b.graph_ptr()) throw std::invalid_argument("product over different graphs");
  if (!(a.ring() == b.ring())) throw RingMismatch("product over different rings");
  LpaElement r(a.graph_ptr(), a.ring());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto m = multiply_monomials(a.graph(), ma, mb)) r.add_term(*m, ca * cb);
  return normalize(r);
}

LpaElement star(const LpaElement& a) {
  LpaElement r(a.graph_ptr(), a.ring());
  for (const auto& [m, c] : a.terms()) r.add_term({m.nu, m.mu}, c);
  return normalize(r);
}

bool is_lpa_diagonal(const LpaElement& a) {
  const auto n = normalize(a);
  return std::all_of(n.terms().begin(), n.terms().end(), [](const auto& t) { return t.first.is_diagonal(); });
}

bool commutes_with_diagonal(const LpaElement& a, const Path& mu) {
  const auto p = LpaElement::raw(a.graph_ptr(), RingElement::one(a.ring()), {mu, mu});
  return (a * p - p * a).is_zero();
}

std::vector<Path> paths_up_to(const Graph& g, std::size_t max_length) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (Graph::Index v = 0; v < g.vertex_count(); ++v) layer.push_back({v, {}});
  for (std::size_t len = 0; !layer.empty(); ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (len == max_length) break;
    std::vector<Path> next;
    for (const auto& p : layer)
      for (auto e : g.out_edges(p.target(g))) {
        Path q = p;
        if (q.edges.empty()) q.vertex = g.src(e);
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    layer = std::move(next);
  }
  return out;
}

std::vector<Monomial> normal_monomials(const Graph& g, std::size_t max_length) {
  const auto paths = paths_up_to(g, max_length);
  std::vector<Monomial> out;
  for (const auto& mu : paths)
    for (const auto& nu : paths) {
      if (mu.target(g) != nu.target(g)) continue;
      Monomial m{mu, nu};
      if (!m.reducible(g)) out.push_back(std::move(m));
    }
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

}  // namespace grpd
