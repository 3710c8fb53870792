#include "grpd/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "grpd/bridge.hpp"
#include "grpd/io.hpp"
#include "grpd/lpa_parser.hpp"
#include "grpd/reconstruction.hpp"

namespace grpd {

namespace {

using io::Json;

struct Options {
  std::string ring = "q";
  std::string mode = "auto";
  std::string format = "json";
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;
  bool timing = false;
  std::vector<std::string> paths;
  std::string graph;
  std::string expression;
};

// Usage and input errors; always exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : sep) + x;
  return s;
}

Ring ring_of(const std::string& tag) {
  try {
    return Ring::parse(tag);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SearchMode mode_of(const std::string& m) {
  if (m == "auto") return SearchMode::Auto;
  if (m == "black-box") return SearchMode::BlackBox;
  if (m == "white-box") return SearchMode::WhiteBox;
  throw UsageError("unknown mode " + m + " (auto, black-box, white-box)");
}

// --cap wins over GRPD_RECON_CAP, which wins over the built-in default.
std::uint64_t cap_of(const Options& o) {
  if (o.cap) return o.cap;
  if (const char* env = std::getenv("GRPD_RECON_CAP")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("GRPD_RECON_CAP must be a positive integer, got ") + env);
    }
  }
  return kDefaultEnumerationCap;
}

GraphPtr load_graph(const std::string& path) {
  return std::make_shared<const Graph>(io::graph_from_json(io::load_json(path)));
}

std::string tsv_line(const std::vector<std::string>& cells) { return join(cells, "\t") + "\n"; }

void emit(std::ostream& out, const Options& o, Json report, const std::string& tsv,
          std::chrono::steady_clock::time_point start) {
  if (o.format == "tsv") {
    out << tsv;
    return;
  }
  if (o.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["elapsed_ms"] = ms.count();
  }
  out << report.dump(2) << "\n";
}

// ---- groupoid validate ------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto tables = io::groupoid_tables_from_json(io::load_json(o.paths[0]));
  const auto report = validate(tables);
  Json j;
  j["command"] = "groupoid validate";
  j["valid"] = report.empty();
  Json vs = Json::array();
  std::string tsv = tsv_line({"axiom", "witnesses", "detail"});
  for (const auto& v : report) {
    vs.push_back(Json{{"axiom", v.axiom}, {"witnesses", v.witnesses}, {"detail", v.detail}});
    tsv += tsv_line({v.axiom, join(v.witnesses, ","), v.detail});
  }
  j["violations"] = vs;
  emit(out, o, j, tsv, start);
  return report.empty() ? kExitOk : kExitCheckFailed;
}

// ---- groupoid reconstruct ---------------------------------------------------

std::string support_name(const RingPresentation& p, const PresentedClass& c) {
  std::vector<std::string> ids;
  for (auto i : c.support) ids.push_back(p.basis[i]);
  return ids.empty() ? "0" : join(ids, "+");
}

// Class table: id, grade, support, star, then the product with every class.
std::string class_table(const RingPresentation& p, const Reconstruction& r) {
  const auto& cs = r.search.classes;
  auto id = [](std::size_t k) { return "c" + std::to_string(k); };
  std::vector<std::string> head{"class", "grade", "support", "star"};
  for (std::size_t k = 0; k < cs.size(); ++k) head.push_back(id(k));
  std::string tsv = tsv_line(head);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    std::vector<std::string> row{id(i), c.grade ? c.grade->to_string() : "-", support_name(p, c),
                                 id(class_of(r.search, p, r.spectrum, c.partner, c.representative))};
    for (const auto& d : cs) {
      const auto n = p.multiply(c.representative, d.representative);
      const auto m = p.multiply(d.partner, c.partner);
      row.push_back(id(class_of(r.search, p, r.spectrum, n, m)));
    }
    tsv += tsv_line(row);
  }
  return tsv;
}

Json stages_json(const std::vector<StageResult>& stages) {
  Json out = Json::array();
  for (const auto& s : stages) out.push_back(Json{{"stage", s.stage}, {"status", "ok"}, {"detail", s.detail}});
  return out;
}

Json germs_json(const Reconstruction& r) {
  const auto& g = r.germs.groupoid;
  Json germs = Json::array();
  for (Groupoid::Id a = 0; a < g.size(); ++a)
    germs.push_back(Json{{"germ", g.name(a)},
                         {"src", g.name(g.src(a))},
                         {"dst", g.name(g.dst(a))},
                         {"grade", g.grade(a).coords()}});
  return germs;
}

int cmd_reconstruct(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err,
                    std::chrono::steady_clock::time_point start) {
  const auto doc = io::load_json(o.paths[0]);
  ReconstructOptions ro{mode_of(o.mode), cap_of(o)};
  Json j;
  j["command"] = "groupoid reconstruct";

  const bool presented = doc.is_object() && doc.contains("basis");
  RingPresentation p;
  Groupoid g;
  if (presented) {
    p = io::presentation_from_json(doc);
    if (sub.count("--ring") && !(ring_of(o.ring) == p.ring))
      throw UsageError("--ring " + o.ring + " disagrees with the presentation's ring " + p.ring.tag());
  } else {
    try {
      g = Groupoid::from_tables(io::groupoid_tables_from_json(doc));
    } catch (const InvalidGroupoid& e) {
      throw UsageError(e.what());
    }
    p.ring = ring_of(o.ring);
  }
  j["input"] = presented ? "presentation" : "groupoid";
  j["ring"] = p.ring.tag();
  j["mode"] = to_string(ro.mode);

  try {
    Reconstruction r;
    std::vector<StageResult> stages;
    RoundtripReport rt;
    if (presented) {
      r = reconstruct(p, ro, &stages);
    } else {
      rt = verify_roundtrip(g, p.ring, ro);
      p = rt.presentation;
      r = rt.result;
      stages = rt.stages;
    }
    j["status"] = presented ? "reconstructed" : "iso found";
    j["search"] = to_string(r.search.mode);
    j["stages"] = stages_json(stages);
    j["classes"] = r.search.classes.size();
    j["characters"] = r.spectrum.size();
    Json chars = Json::array();
    for (const auto& x : r.spectrum) chars.push_back(x.name);
    j["character_names"] = chars;
    j["germ_count"] = r.germs.groupoid.size();
    j["germs"] = germs_json(r);
    if (!presented) {
      Json w = Json::object();
      for (Groupoid::Id a = 0; a < g.size(); ++a) w[g.name(a)] = r.germs.groupoid.name(rt.witness[a]);
      j["witness"] = w;
    }
    emit(out, o, j, class_table(p, r), start);
    return kExitOk;
  } catch (const PipelineError& e) {
    j["status"] = e.hypothesis() ? "hypothesis violated" : "failed";
    j["stages"] = stages_json(e.completed());
    j["stages"].push_back(Json{{"stage", e.stage()}, {"status", "failed"}, {"detail", e.message()}});
    j["failed_stage"] = e.stage();
    j["hypothesis_violation"] = e.hypothesis();
    j["message"] = e.message();
    if (o.format == "tsv") {
      out << tsv_line({"stage", "status", "detail"});
      for (const auto& s : e.completed()) out << tsv_line({s.stage, "ok", s.detail});
      out << tsv_line({e.stage(), "failed", e.message()});
    } else {
      emit(out, o, j, "", start);
    }
    err << "grpd: " << e.stage() << ": " << e.message() << "\n";
    return kExitCheckFailed;
  }
}

// ---- graph invariants / compare ----------------------------------------------

struct Invariants {
  GraphPredicates pred;
  DetSign det;
};

Invariants invariants_of(const Graph& g) { return {graph_predicates(g), det_sign(g)}; }

Json invariants_json(const Graph& g, const Invariants& inv) {
  Json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["strongly_connected"] = inv.pred.strongly_connected;
  j["essential"] = inv.pred.essential;
  j["trivial"] = inv.pred.trivial;
  j["every_cycle_has_exit"] = inv.pred.exits.every_cycle_has_exit;
  j["cycle_check"] = inv.pred.exits.method;
  if (!inv.pred.exits.witness.empty()) {
    Json w = Json::array();
    for (auto e : inv.pred.exits.witness) w.push_back(g.edge(e));
    j["cycle_without_exit"] = w;
  }
  j["det_I_minus_A"] = inv.det.det.str();
  j["det_sign"] = inv.det.sign;
  return j;
}

std::string invariants_tsv(const Json& j, const std::string& prefix = "") {
  std::string tsv;
  for (const auto& [k, v] : j.items())
    tsv += tsv_line({prefix + k, v.is_string() ? v.get<std::string>() : v.dump()});
  return tsv;
}

int cmd_invariants(const Options& o, std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto g = load_graph(o.paths[0]);
  Json j;
  j["command"] = "graph invariants";
  const auto inv = invariants_json(*g, invariants_of(*g));
  for (const auto& [k, v] : inv.items()) j[k] = v;
  emit(out, o, j, invariants_tsv(inv), start);
  return kExitOk;
}

bool sign_applies(const GraphPredicates& p) { return p.strongly_connected && p.essential && !p.trivial; }

int cmd_compare(const Options& o, std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto a = load_graph(o.paths[0]);
  const auto b = load_graph(o.paths[1]);
  const auto ia = invariants_of(*a), ib = invariants_of(*b);
  const bool applies = sign_applies(ia.pred) && sign_applies(ib.pred);
  const bool obstructed = applies && ia.det.sign != ib.det.sign;
  Json j;
  j["command"] = "graph compare";
  j["a"] = invariants_json(*a, ia);
  j["b"] = invariants_json(*b, ib);
  j["sign_invariant_applies"] = applies;
  j["verdict"] = obstructed ? "OBSTRUCTED" : "NO OBSTRUCTION FOUND";
  if (obstructed)
    j["meaning"] = "no diagonal-preserving ring isomorphism between the Leavitt path algebras";
  std::string tsv = invariants_tsv(j["a"], "a.") + invariants_tsv(j["b"], "b.");
  tsv += tsv_line({"sign_invariant_applies", applies ? "true" : "false"});
  tsv += tsv_line({"verdict", j["verdict"].get<std::string>()});
  emit(out, o, j, tsv, start);
  return kExitOk;
}

// ---- lpa eval / bridge-check ----------------------------------------------------

int cmd_eval(const Options& o, std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto g = load_graph(o.graph);
  const auto a = parse_lpa(g, ring_of(o.ring), o.expression);
  Json j;
  j["command"] = "lpa eval";
  j["ring"] = a.ring().tag();
  j["normal_form"] = a.to_string();
  Json comps = Json::array();
  std::string tsv = tsv_line({"grade", "normal_form"});
  for (int d : a.grades()) {
    const auto c = a.graded_component(d).to_string();
    comps.push_back(Json{{"grade", d}, {"normal_form", c}});
    tsv += tsv_line({std::to_string(d), c});
  }
  j["components"] = comps;
  emit(out, o, j, tsv, start);
  return kExitOk;
}

int cmd_bridge(const Options& o, std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto g = load_graph(o.paths[0]);
  const auto ring = ring_of(o.ring);
  const auto rep = alpha_bridge_check(g, ring, o.samples, o.seed);
  Json j;
  j["command"] = "lpa bridge-check";
  j["ring"] = ring.tag();
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  j["morphisms"] = rep.morphisms;
  j["units"] = rep.units;
  j["normal_basis"] = rep.normal_basis;
  Json checks = Json::array();
  std::string tsv = tsv_line({"check", "status", "cases", "failure"});
  for (const auto& c : rep.checks) {
    Json cj{{"check", c.name}, {"passed", c.passed}, {"cases", c.cases}};
    if (!c.passed) cj["failure"] = c.failure;
    checks.push_back(cj);
    tsv += tsv_line({c.name, c.passed ? "pass" : "FAIL", std::to_string(c.cases), c.failure});
  }
  j["checks"] = checks;
  j["passed"] = rep.passed();
  emit(out, o, j, tsv, start);
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite graded groupoids, their Steinberg algebras, and Leavitt path algebras", "grpd"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    s->add_flag("--timing", o.timing, "Add wall-clock time to JSON reports (breaks byte-identity)");
  };
  auto ring_opt = [&](CLI::App* s) { s->add_option("--ring", o.ring, "Coefficients: z, q, fp:<p> or f<p>"); };

  auto* groupoid = app.add_subcommand("groupoid", "Groupoid files")->require_subcommand(1);
  auto* validate_cmd = groupoid->add_subcommand("validate", "Check the groupoid axioms");
  validate_cmd->add_option("path", o.paths, "Groupoid JSON")->required()->expected(1);
  common(validate_cmd);
  auto* recon_cmd = groupoid->add_subcommand("reconstruct", "Rebuild the groupoid from its algebra");
  recon_cmd->add_option("path", o.paths, "Groupoid or ring presentation JSON")->required()->expected(1);
  ring_opt(recon_cmd);
  recon_cmd->add_option("--mode", o.mode, "Normaliser search: auto, black-box, white-box");
  recon_cmd->add_option("--cap", o.cap, "Enumeration cap (default: GRPD_RECON_CAP or 2^24)");
  common(recon_cmd);

  auto* graph = app.add_subcommand("graph", "Directed graphs")->require_subcommand(1);
  auto* inv_cmd = graph->add_subcommand("invariants", "Predicates and det(I - A)");
  inv_cmd->add_option("path", o.paths, "Graph JSON")->required()->expected(1);
  common(inv_cmd);
  auto* cmp_cmd = graph->add_subcommand("compare", "Determinant-sign obstruction");
  cmp_cmd->add_option("paths", o.paths, "Two graph JSON files")->required()->expected(2);
  common(cmp_cmd);

  auto* lpa = app.add_subcommand("lpa", "Leavitt path algebras")->require_subcommand(1);
  auto* eval_cmd = lpa->add_subcommand("eval", "Normal form of an expression");
  eval_cmd->add_option("graph", o.graph, "Graph JSON")->required();
  eval_cmd->add_option("expression", o.expression, "Expression, e.g. \"s(e) t(e)\"")->required();
  ring_opt(eval_cmd);
  common(eval_cmd);
  auto* bridge_cmd = lpa->add_subcommand("bridge-check", "Check α_E against the graph groupoid");
  bridge_cmd->add_option("graph", o.paths, "Acyclic graph JSON")->required()->expected(1);
  ring_opt(bridge_cmd);
  bridge_cmd->add_option("--samples", o.samples, "Random products to compare");
  bridge_cmd->add_option("--seed", o.seed, "Seed for the random products");
  common(bridge_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "grpd: " << e.what() << "\n";
    return kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*validate_cmd) return cmd_validate(o, out, start);
    if (*recon_cmd) return cmd_reconstruct(o, *recon_cmd, out, err, start);
    if (*inv_cmd) return cmd_invariants(o, out, start);
    if (*cmp_cmd) return cmd_compare(o, out, start);
    if (*eval_cmd) return cmd_eval(o, out, start);
    if (*bridge_cmd) return cmd_bridge(o, out, start);
  } catch (const std::exception& e) {
    // Everything left is bad input: unreadable files, malformed JSON, parse
    // errors, unknown ids, cyclic graphs, oversized enumerations.
    err << "grpd: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace grpd
