#include "grpd/io.hpp"

#include <fstream>
#include <set>

namespace grpd::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string str(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(str(x, what + " entry"));
  return out;
}

std::map<std::string, std::string> str_map(const Json& j, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = str(v, what + " value");
  return out;
}

std::vector<std::int64_t> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(what + " must be an array of integers");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

GradeGroup group_from_json(const Json& j) {
  GradeGroup g;
  const auto& fr = field(j, "free_rank");
  if (!fr.is_number_integer() || fr.get<int>() < 0) throw InputError("free_rank must be a nonnegative integer");
  g.free_rank = fr.get<int>();
  if (j.contains("torsion")) g.torsion = int_list(j["torsion"], "torsion");
  for (auto m : g.torsion)
    if (m < 1) throw InputError("torsion moduli must be positive");
  return g;
}

Json group_to_json(const GradeGroup& g) {
  return Json{{"free_rank", g.free_rank}, {"torsion", g.torsion}};
}

RingPresentation::Sparse sparse_from_json(const Json& j, const RingPresentation& p,
                                          const std::map<std::string, std::size_t>& index,
                                          const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of [id, coef] pairs");
  RingPresentation::Sparse out;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw InputError(what + " terms must be [id, coef]");
    const auto id = str(term[0], what + " id");
    auto it = index.find(id);
    if (it == index.end()) throw InputError(what + " names unknown basis id " + id);
    std::string coef = term[1].is_number_integer() ? std::to_string(term[1].get<std::int64_t>())
                                                   : str(term[1], what + " coefficient");
    try {
      out.emplace_back(it->second, RingElement::parse(p.ring, coef));
    } catch (const std::exception& e) {
      throw InputError(what + ": " + e.what());
    }
  }
  return out;
}

Json sparse_to_json(const RingPresentation& p, const RingPresentation::Vec& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back(Json::array({p.basis[i], v[i].to_string()}));
  return out;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

GroupoidTables groupoid_tables_from_json(const Json& j) {
  GroupoidTables t;
  t.morphisms = str_list(field(j, "morphisms"), "morphisms");
  t.units = str_list(field(j, "units"), "units");
  t.source = str_map(field(j, "source"), "source");
  t.target = str_map(field(j, "target"), "target");
  t.inverse = str_map(field(j, "inverse"), "inverse");
  const auto& compose = field(j, "compose");
  if (!compose.is_array()) throw InputError("compose must be an array");
  for (const auto& triple : compose) {
    auto ids = str_list(triple, "compose entry");
    if (ids.size() != 3) throw InputError("compose entries must be [a, b, ab]");
    t.compose.push_back({ids[0], ids[1], ids[2]});
  }
  if (j.contains("grading") && !j["grading"].is_null()) {
    const auto& g = j["grading"];
    t.group = group_from_json(field(g, "group"));
    const auto& map = field(g, "map");
    if (!map.is_object()) throw InputError("grading map must be an object");
    for (const auto& [k, v] : map.items()) t.grading[k] = int_list(v, "grade of " + k);
  }
  return t;
}

Json groupoid_to_json(const Groupoid& g) {
  const auto t = g.tables();
  Json j;
  j["morphisms"] = t.morphisms;
  j["units"] = t.units;
  j["source"] = t.source;
  j["target"] = t.target;
  j["inverse"] = t.inverse;
  Json compose = Json::array();
  for (const auto& [a, b, c] : t.compose) compose.push_back(Json::array({a, b, c}));
  j["compose"] = compose;
  if (t.group) {
    Json map = Json::object();
    for (const auto& [k, v] : t.grading) map[k] = v;
    j["grading"] = Json{{"group", group_to_json(*t.group)}, {"map", map}};
  }
  return j;
}

Graph graph_from_json(const Json& j) {
  auto vertices = str_list(field(j, "vertices"), "vertices");
  const auto& edges = field(j, "edges");
  if (!edges.is_array()) throw InputError("edges must be an array");
  std::vector<EdgeSpec> specs;
  for (const auto& e : edges)
    specs.push_back({str(field(e, "id"), "edge id"), str(field(e, "src"), "edge src"), str(field(e, "dst"), "edge dst")});
  try {
    return Graph(std::move(vertices), std::move(specs));
  } catch (const GraphError& e) {
    throw InputError(e.what());
  }
}

Json graph_to_json(const Graph& g) {
  Json j;
  Json vs = Json::array();
  for (Graph::Index v = 0; v < g.vertex_count(); ++v) vs.push_back(g.vertex(v));
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : g.edge_specs()) es.push_back(Json{{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  j["edges"] = es;
  return j;
}

RingPresentation presentation_from_json(const Json& j) {
  RingPresentation p;
  try {
    p.ring = Ring::parse(str(field(j, "ring"), "ring"));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  p.basis = str_list(field(j, "basis"), "basis");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.basis.size(); ++i)
    if (!index.emplace(p.basis[i], i).second) throw InputError("duplicate basis id " + p.basis[i]);
  const auto n = p.dim();
  p.mult.assign(n * n, {});
  const auto& mult = field(j, "mult");
  if (!mult.is_array()) throw InputError("mult must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& entry : mult) {
    if (!entry.is_array() || entry.size() != 3) throw InputError("mult entries must be [bi, bj, terms]");
    const auto bi = str(entry[0], "mult id"), bj = str(entry[1], "mult id");
    if (!index.count(bi) || !index.count(bj)) throw InputError("mult names unknown basis id");
    const auto i = index[bi], k = index[bj];
    if (!seen.emplace(i, k).second) throw InputError("mult gives " + bi + "*" + bj + " twice");
    p.mult[i * n + k] = sparse_from_json(entry[2], p, index, "mult");
  }
  for (const auto& d : str_list(field(j, "diagonal_basis"), "diagonal_basis")) {
    if (!index.count(d)) throw InputError("diagonal_basis names unknown id " + d);
    p.diagonal.push_back(index[d]);
  }
  std::sort(p.diagonal.begin(), p.diagonal.end());
  if (j.contains("grading") && !j["grading"].is_null()) {
    const auto& g = j["grading"];
    p.group = group_from_json(field(g, "group"));
    const auto& map = field(g, "map");
    for (const auto& b : p.basis) {
      if (!map.contains(b)) throw InputError("grading misses basis id " + b);
      try {
        p.grades.push_back(Grade::of(p.group, int_list(map[b], "grade of " + b)));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }
  } else {
    p.grades.assign(n, Grade::zero(p.group));
  }
  if (j.contains("provenance")) {
    const auto& prov = j["provenance"];
    if (!prov.is_array()) throw InputError("provenance must be an array");
    for (const auto& v : prov) {
      auto vec = p.zero();
      for (const auto& [i, c] : sparse_from_json(v, p, index, "provenance")) vec[i] += c;
      p.provenance.push_back(std::move(vec));
    }
  }
  return p;
}

Json presentation_to_json(const RingPresentation& p) {
  Json j;
  j["ring"] = p.ring.tag();
  j["basis"] = p.basis;
  const auto n = p.dim();
  Json mult = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& terms = p.mult[i * n + k];
      if (terms.empty()) continue;
      Json ts = Json::array();
      for (const auto& [idx, c] : terms) ts.push_back(Json::array({p.basis[idx], c.to_string()}));
      mult.push_back(Json::array({p.basis[i], p.basis[k], ts}));
    }
  j["mult"] = mult;
  Json diag = Json::array();
  for (auto d : p.diagonal) diag.push_back(p.basis[d]);
  j["diagonal_basis"] = diag;
  Json map = Json::object();
  for (std::size_t i = 0; i < n; ++i) map[p.basis[i]] = p.grades[i].coords();
  j["grading"] = Json{{"group", group_to_json(p.group)}, {"map", map}};
  if (!p.provenance.empty()) {
    Json prov = Json::array();
    for (const auto& v : p.provenance) prov.push_back(sparse_to_json(p, v));
    j["provenance"] = prov;
  }
  return j;
}

}  // namespace grpd::io
