// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Every command prints a JSON report on stdout:
//   {"command", "args", "inputs_digest", "verdict", "payload", "timings_ms"?}
// Exit codes: 0 success / indistinguishable / all agree, 10 distinguished,
// 11 compiled model disagrees with the model checker, 2 any error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgnn/tgnn.hpp"

namespace fs = std::filesystem;
using tgnn::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitDistinguished = 10;
constexpr int kExitDisagreement = 11;

class Report {
 public:
  Report(std::string command, const std::vector<std::string>& args) : command_(std::move(command)) {
    args_ = args;
    absorb(command_);
    for (const auto& a : args) absorb(a);
  }

  void absorb(const std::string& bytes) {
    for (unsigned char c : bytes) {
      digest_ ^= c;
      digest_ *= 0x100000001b3ull;
    }
    // Separator so ("ab","c") and ("a","bc") differ.
    digest_ ^= 0xff;
    digest_ *= 0x100000001b3ull;
  }

  std::string read_file(const fs::path& path) {
    std::string text = tgnn::read_text_file(path);
    absorb(text);
    return text;
  }

  Json read_json(const fs::path& path) {
    std::string text = read_file(path);
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw tgnn::InvalidArgument("'" + path.string() + "' is not valid JSON: " + e.what());
    }
  }

  tgnn::LabelledGraph read_graph(const fs::path& path) {
    try {
      return tgnn::graph_from_json(read_json(path));
    } catch (const tgnn::InvalidArgument& e) {
      throw tgnn::InvalidArgument(path.string() + ": " + e.what());
    }
  }

  void time(const std::string& phase, double ms) { timings_[phase] += ms; }

  void emit(const std::string& verdict, Json payload, bool with_timings) const {
    Json out;
    out["command"] = command_;
    out["args"] = args_;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest_));
    out["inputs_digest"] = std::string("fnv1a64:") + hex;
    out["verdict"] = verdict;
    out["payload"] = std::move(payload);
    if (with_timings) out["timings_ms"] = timings_;
    std::cout << out.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::uint64_t digest_ = 0xcbf29ce484222325ull;
  std::map<std::string, double> timings_;
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::string> default_propositions(std::size_t n) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(i < std::size(names) ? names[i] : "p" + std::to_string(i));
  return out;
}

struct Context {
  tgnn::TemplateRegistry registry;
  std::string registry_path;

  void load(Report& report) {
    if (registry_path.empty())
      if (const char* env = std::getenv("TGNN_REGISTRY"); env && *env) registry_path = env;
    if (registry_path.empty()) {
      registry = tgnn::builtin_registry();
      return;
    }
    try {
      registry = tgnn::registry_from_json(report.read_json(registry_path));
    } catch (const tgnn::InvalidArgument& e) {
      throw tgnn::InvalidArgument(registry_path + ": " + e.what());
    }
  }

  /// Registry propositions, or p, q, r, ... when the registry names none.
  std::vector<std::string> propositions(std::size_t fallback) const {
    if (!registry.propositions().empty()) return registry.propositions();
    return default_propositions(fallback);
  }

  std::vector<tgnn::TemplatePtr> templates(const std::string& list) const {
    if (list.empty()) return registry.templates();
    std::vector<tgnn::TemplatePtr> out;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) out.push_back(registry.at(name));
    if (out.empty()) throw tgnn::InvalidArgument("empty template list");
    return out;
  }
};

tgnn::CountBound parse_bound(const std::string& text) {
  if (text == "inf" || text == "unbounded") return std::nullopt;
  std::size_t pos = 0;
  unsigned long c = 0;
  try {
    c = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || c == 0)
    throw tgnn::InvalidArgument("bound must be a positive integer or 'inf', got '" + text + "'");
  return static_cast<std::size_t>(c);
}

Json bound_json(const tgnn::CountBound& c) { return c ? Json(*c) : Json("inf"); }

std::vector<fs::path> graph_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw tgnn::NotFound("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_formula_text(Report& report, const std::string& inline_text,
                              const std::string& file) {
  if (!file.empty()) {
    std::string text = report.read_file(file);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
  }
  if (inline_text.empty()) throw tgnn::InvalidArgument("no formula given");
  return inline_text;
}

Json formula_summary(const tgnn::Formula& f, const std::vector<std::string>& props) {
  return {{"text", tgnn::to_string(f, props)},
          {"modal_depth", f.modal_depth()},
          {"syntactic_depth", f.syntactic_depth()},
          {"counting_bound", f.counting_bound()}};
}

// distinguish

struct DistinguishArgs {
  std::string graph_a, graph_b, node_a, node_b, templates, bound = "inf";
  std::size_t rounds = 1;
  bool oracle = false;
};

int cmd_distinguish(Report& report, Context& ctx, const DistinguishArgs& a, bool timings) {
  ctx.load(report);
  Stopwatch load;
  const auto g = report.read_graph(a.graph_a);
  const auto h = report.read_graph(a.graph_b);
  const tgnn::NodeId v = g.node(a.node_a);
  const tgnn::NodeId w = h.node(a.node_b);
  report.time("load", load.ms());
  tgnn::TwlConfig cfg{ctx.templates(a.templates), a.rounds, parse_bound(a.bound)};

  Stopwatch refine;
  const auto col = tgnn::run_twl(std::vector<const tgnn::LabelledGraph*>{&g, &h}, cfg);
  report.time("twl", refine.ms());
  Json rounds = Json::array();
  std::optional<std::size_t> first;
  for (std::size_t l = 0; l <= a.rounds; ++l) {
    for (std::size_t gi = 0; gi < 2; ++gi) {
      const auto& graph = gi == 0 ? g : h;
      for (tgnn::NodeId u = 0; u < graph.size(); ++u)
        rounds.push_back({{"round", l}, {"graph", gi}, {"node", graph.id(u)}, {"color", col.color(l, gi, u)}});
    }
    if (!first && col.color(l, 0, v) != col.color(l, 1, w)) first = l;
  }
  const bool distinguished = first.has_value();
  Json payload = {{"rounds", rounds},
                  {"distinguished", distinguished},
                  {"first_round", first ? Json(*first) : Json(nullptr)},
                  {"bisimilar", !distinguished},
                  {"level", a.rounds},
                  {"bound", bound_json(cfg.bound)},
                  {"method", "twl"}};
  if (a.oracle) {
    Stopwatch oracle;
    const bool bisim = tgnn::bisim_oracle(g, v, h, w, cfg.templates, a.rounds, cfg.bound);
    report.time("oracle", oracle.ms());
    payload["oracle"] = {{"bisimilar", bisim}, {"level", a.rounds}, {"bound", bound_json(cfg.bound)},
                         {"method", "oracle"}};
    if (bisim == distinguished)
      throw tgnn::Error("oracle and refinement disagree; please report this input");
  }
  report.emit(distinguished ? "distinguished" : "indistinguishable", payload, timings);
  return distinguished ? kExitDistinguished : kExitOk;
}

// modelcheck

struct ModelcheckArgs {
  std::string graph, formula, formula_file, node;
  bool all_nodes = false;
};

int cmd_modelcheck(Report& report, Context& ctx, const ModelcheckArgs& a, bool timings) {
  ctx.load(report);
  const auto g = report.read_graph(a.graph);
  const auto props = ctx.propositions(g.dimension());
  const auto f = tgnn::parse_formula(read_formula_text(report, a.formula, a.formula_file),
                                     ctx.registry, props);
  std::vector<tgnn::NodeId> nodes;
  if (!a.node.empty() && !a.all_nodes) {
    nodes.push_back(g.node(a.node));
  } else {
    for (tgnn::NodeId v = 0; v < g.size(); ++v) nodes.push_back(v);
  }
  Stopwatch sw;
  tgnn::ModelChecker mc(g);
  Json results = Json::array();
  std::size_t satisfied = 0;
  for (auto v : nodes) {
    const bool holds = mc.holds(f, v);
    satisfied += holds;
    results.push_back({{"node", g.id(v)}, {"holds", holds}});
  }
  report.time("eval", sw.ms());
  report.emit(std::to_string(satisfied) + "/" + std::to_string(nodes.size()) + " satisfied",
              {{"formula", formula_summary(f, props)}, {"results", results}}, timings);
  return kExitOk;
}

// compile / rungnn

struct CompileArgs {
  std::string formula, formula_file, out;
  std::size_t propositions = 0;
};

int cmd_compile(Report& report, Context& ctx, const CompileArgs& a, bool timings) {
  ctx.load(report);
  const std::size_t n = a.propositions ? a.propositions
                        : ctx.registry.propositions().empty() ? 3
                                                              : ctx.registry.propositions().size();
  const auto props = ctx.propositions(n);
  const auto f = tgnn::parse_formula(read_formula_text(report, a.formula, a.formula_file),
                                     ctx.registry, props);
  Stopwatch sw;
  const auto model = tgnn::compile_formula(f, props.size());
  report.time("compile", sw.ms());
  const auto diag = tgnn::validate_model(model);
  for (const auto& notice : diag.notices) std::cerr << "notice: " << notice << "\n";
  const Json mj = tgnn::model_to_json(model);
  if (!a.out.empty()) tgnn::write_text_file(a.out, tgnn::dump_json(mj));
  Json payload = {{"formula", formula_summary(f, props)},
                  {"dimension", model.dimension},
                  {"input_dimension", model.input_dimension},
                  {"layers", model.layers.size()},
                  {"slots", model.layers.empty() ? 0 : model.layers.front().slots.size()},
                  {"counting_bound", bound_json(model.counting_bound())},
                  {"notices", diag.notices}};
  if (a.out.empty()) payload["model"] = mj;
  else payload["out"] = a.out;
  report.emit("compiled", payload, timings);
  return kExitOk;
}

struct RungnnArgs {
  std::string model, graph;
  bool all_layers = false;
};

int cmd_rungnn(Report& report, Context& ctx, const RungnnArgs& a, bool timings) {
  ctx.load(report);
  tgnn::GnnModel model;
  try {
    model = tgnn::model_from_json(report.read_json(a.model), ctx.registry);
  } catch (const tgnn::InvalidArgument& e) {
    throw tgnn::InvalidArgument(a.model + ": " + e.what());
  }
  const auto g = report.read_graph(a.graph);
  Stopwatch sw;
  const auto out = tgnn::run_gnn(model, g);
  report.time("forward", sw.ms());
  Json nodes = Json::array();
  std::size_t positive = 0;
  for (tgnn::NodeId v = 0; v < g.size(); ++v) {
    Json node = {{"node", g.id(v)},
                 {"class", out.classes[v]},
                 {"features", tgnn::vector_to_json(out.features.back()[v])}};
    if (a.all_layers) {
      Json layers = Json::array();
      for (const auto& layer : out.features) layers.push_back(tgnn::vector_to_json(layer[v]));
      node["layers"] = layers;
    }
    positive += out.classes[v] == 1;
    nodes.push_back(node);
  }
  report.emit(std::to_string(positive) + "/" + std::to_string(g.size()) + " positive",
              {{"layers", model.layers.size()}, {"nodes", nodes}}, timings);
  return kExitOk;
}

// crosscheck

struct CrosscheckArgs {
  std::string formula, formula_file, graphs_dir, model;
  std::size_t random = 0, size = 8, random_formulas = 0, propositions = 3;
  std::uint64_t seed = 1;
  double p = 0.3;
};

int cmd_crosscheck(Report& report, Context& ctx, const CrosscheckArgs& a, bool timings) {
  ctx.load(report);
  tgnn::Rng rng(a.seed);
  std::vector<std::pair<std::string, tgnn::LabelledGraph>> graphs;
  if (!a.graphs_dir.empty()) {
    for (const auto& path : graph_files(a.graphs_dir))
      graphs.emplace_back(path.filename().string(), report.read_graph(path));
  }
  if (a.random > 0) {
    if (a.size == 0) throw tgnn::InvalidArgument("--size must be >= 1");
    for (std::size_t i = 0; i < a.random; ++i) {
      const std::size_t n = 1 + tgnn::uniform_index(rng, a.size);
      graphs.emplace_back("random#" + std::to_string(i), tgnn::random_graph(n, a.p, a.propositions, rng));
    }
  }
  if (graphs.empty()) throw tgnn::InvalidArgument("no graphs: give --graphs DIR or --random N");

  std::size_t dim = graphs.front().second.dimension();
  for (const auto& [name, g] : graphs)
    if (g.dimension() != dim) throw tgnn::InvalidArgument("graphs must share the label dimension");
  const auto props = ctx.propositions(dim);

  std::vector<tgnn::Formula> formulas;
  if (!a.formula.empty() || !a.formula_file.empty())
    formulas.push_back(tgnn::parse_formula(read_formula_text(report, a.formula, a.formula_file),
                                           ctx.registry, props));
  if (a.random_formulas > 0) {
    tgnn::RandomFormulaOptions opts;
    opts.propositions = std::min(props.size(), dim);
    opts.templates = ctx.registry.templates();
    for (std::size_t i = 0; i < a.random_formulas; ++i) formulas.push_back(tgnn::random_formula(rng, opts));
  }
  if (formulas.empty()) throw tgnn::InvalidArgument("no formula: give one or --random-formulas K");

  std::optional<tgnn::GnnModel> fixed;
  if (!a.model.empty()) {
    if (formulas.size() != 1) throw tgnn::InvalidArgument("--model needs exactly one formula");
    fixed = tgnn::model_from_json(report.read_json(a.model), ctx.registry);
  }

  Stopwatch sw;
  std::size_t checked = 0;
  Json disagreements = Json::array();
  std::size_t total_disagreements = 0;
  for (const auto& f : formulas) {
    const tgnn::GnnModel model = fixed ? *fixed : tgnn::compile_formula(f, dim);
    for (const auto& [name, g] : graphs) {
      const auto out = tgnn::run_gnn(model, g);
      const auto truth = tgnn::eval_all(f, g);
      for (tgnn::NodeId v = 0; v < g.size(); ++v) {
        ++checked;
        if ((out.classes[v] == 1) == truth[v]) continue;
        ++total_disagreements;
        if (disagreements.size() < 20)
          disagreements.push_back({{"formula", tgnn::to_string(f, props)},
                                   {"graph", name},
                                   {"node", g.id(v)},
                                   {"model_checker", static_cast<bool>(truth[v])},
                                   {"gnn", out.classes[v]}});
      }
    }
  }
  report.time("crosscheck", sw.ms());
  const bool agree = total_disagreements == 0;
  report.emit(agree ? "agree" : "disagree",
              {{"formulas", formulas.size()},
               {"graphs", graphs.size()},
               {"nodes_checked", checked},
               {"disagreement_count", total_disagreements},
               {"disagreements", disagreements}},
              timings);
  return agree ? kExitOk : kExitDisagreement;
}

// charform / classes

std::vector<tgnn::PointedGraph> load_corpus(Report& report, const std::string& dir,
                                            std::vector<std::string>* files) {
  std::vector<tgnn::PointedGraph> corpus;
  for (const auto& path : graph_files(dir)) {
    const auto g = report.read_graph(path);
    for (tgnn::NodeId v = 0; v < g.size(); ++v) {
      corpus.emplace_back(g, v);
      if (files) files->push_back(path.filename().string());
    }
  }
  if (corpus.empty()) throw tgnn::InvalidArgument("corpus '" + dir + "' has no graphs");
  return corpus;
}

struct CharformArgs {
  std::string graph, node, corpus, templates, bound = "1";
  std::size_t level = 1;
};

int cmd_charform(Report& report, Context& ctx, const CharformArgs& a, bool timings) {
  ctx.load(report);
  const auto g = report.read_graph(a.graph);
  const tgnn::NodeId v = g.node(a.node);
  const auto templates = ctx.templates(a.templates);
  const auto bound = parse_bound(a.bound);
  const auto props = ctx.propositions(g.dimension());
  Stopwatch sw;
  std::optional<tgnn::Formula> f;
  std::size_t corpus_size = 0;
  if (!bound) {
    f = tgnn::char_formula_unbounded(g, v, a.level, templates);
  } else {
    std::vector<tgnn::PointedGraph> corpus{tgnn::PointedGraph(g, v)};
    if (!a.corpus.empty()) {
      auto more = load_corpus(report, a.corpus, nullptr);
      corpus.insert(corpus.end(), more.begin(), more.end());
    } else {
      std::cerr << "warning: no --corpus given; the formula characterises the class only "
                   "relative to the nodes of the input graph\n";
    }
    corpus_size = corpus.size();
    f = tgnn::char_formula_bounded(corpus.front(), a.level, *bound, templates, corpus);
  }
  report.time("build", sw.ms());
  Json payload = {{"node", g.id(v)},
                  {"level", a.level},
                  {"bound", bound_json(bound)},
                  {"formula", formula_summary(*f, props)}};
  if (bound) payload["corpus_size"] = corpus_size;
  report.emit("built", payload, timings);
  return kExitOk;
}

struct ClassesArgs {
  std::string corpus, templates, bound = "1";
  std::size_t level = 1;
};

int cmd_classes(Report& report, Context& ctx, const ClassesArgs& a, bool timings) {
  ctx.load(report);
  std::vector<std::string> files;
  const auto corpus = load_corpus(report, a.corpus, &files);
  const auto bound = parse_bound(a.bound);
  Stopwatch sw;
  const auto classes = tgnn::bisim_classes(corpus, ctx.templates(a.templates), a.level, bound);
  report.time("classes", sw.ms());
  Json out = Json::array();
  for (const auto& cls : classes) {
    Json members = Json::array();
    for (std::size_t i : cls)
      members.push_back({{"graph", files[i]}, {"node", corpus[i].graph.id(corpus[i].point)}});
    out.push_back(members);
  }
  report.emit(std::to_string(classes.size()) + " classes",
              {{"level", a.level}, {"bound", bound_json(bound)}, {"count", classes.size()}, {"classes", out}},
              timings);
  return kExitOk;
}

// gen

struct GenArgs {
  std::string kind, out;
  std::size_t n = 3, propositions = 1;
  std::uint64_t seed = 1;
  double p = 0.3;
};

int cmd_gen(Report& report, const GenArgs& a, bool timings) {
  tgnn::LabelledGraph g;
  if (a.kind == "cycle") {
    g = tgnn::cycle_graph(a.n, a.propositions);
  } else if (a.kind == "star") {
    g = tgnn::star_graph(a.n, std::vector<tgnn::Label>(a.n + 1, tgnn::Label(a.propositions, 0.0)));
  } else if (a.kind == "random") {
    tgnn::Rng rng(a.seed);
    g = tgnn::random_graph(a.n, a.p, a.propositions, rng);
  } else {
    throw tgnn::InvalidArgument("unknown graph kind '" + a.kind + "'");
  }
  const std::string text = tgnn::dump_json(tgnn::graph_to_json(g));
  if (a.out.empty()) {
    std::cout << text;
    return kExitOk;
  }
  tgnn::write_text_file(a.out, text);
  report.emit("generated", {{"out", a.out}, {"nodes", g.size()}, {"edges", g.edge_count()}}, timings);
  return kExitOk;
}

// embed

struct EmbedArgs {
  std::string tmpl, graph, node;
  bool count_only = false;
};

int cmd_embed(Report& report, Context& ctx, const EmbedArgs& a, bool timings) {
  ctx.load(report);
  const auto t = ctx.registry.at(a.tmpl);
  const auto g = report.read_graph(a.graph);
  std::vector<tgnn::NodeId> nodes;
  if (a.node.empty()) {
    for (tgnn::NodeId v = 0; v < g.size(); ++v) nodes.push_back(v);
  } else {
    nodes.push_back(g.node(a.node));
  }
  Stopwatch sw;
  tgnn::EmbeddingMatcher matcher(*t);
  Json results = Json::array();
  std::size_t total = 0;
  for (auto v : nodes) {
    Json entry = {{"node", g.id(v)}};
    if (a.count_only) {
      const std::size_t k = matcher.count(g, v);
      total += k;
      entry["count"] = k;
    } else {
      Json list = Json::array();
      for (const auto& f : matcher.enumerate(g, v)) {
        Json ids = Json::array();
        for (auto u : f) ids.push_back(g.id(u));
        list.push_back(ids);
      }
      total += list.size();
      entry["count"] = list.size();
      entry["embeddings"] = list;
    }
    results.push_back(entry);
  }
  report.time("embed", sw.ms());
  report.emit(std::to_string(total) + " embeddings", {{"template", t->name}, {"results", results}}, timings);
  return kExitOk;
}

// gen-templates

struct GenTemplatesArgs {
  std::size_t radius = 1, max_nodes = 3;
  std::string out;
};

int cmd_gen_templates(Report& report, const GenTemplatesArgs& a, bool timings) {
  Stopwatch sw;
  tgnn::TemplateRegistry r;
  for (auto& t : tgnn::generate_radius_k_templates(a.radius, a.max_nodes)) r.add(std::move(t));
  report.time("generate", sw.ms());
  const Json reg = tgnn::registry_to_json(r);
  Json payload = {{"radius", a.radius}, {"max_nodes", a.max_nodes}, {"count", r.templates().size()}};
  if (a.out.empty()) payload["registry"] = reg;
  else {
    tgnn::write_text_file(a.out, tgnn::dump_json(reg));
    payload["out"] = a.out;
  }
  report.emit(std::to_string(r.templates().size()) + " templates", payload, timings);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Template GNN verification toolkit"};
  app.require_subcommand(1);
  Context ctx;
  bool timings = false;
  app.add_option("--registry", ctx.registry_path,
                 "template registry JSON (default: $TGNN_REGISTRY, else the built-in templates)");
  app.add_flag("--timings", timings, "include wall-clock timings in the report");

  DistinguishArgs dist;
  auto* distinguish = app.add_subcommand("distinguish", "run joint T-WL on two pointed graphs");
  distinguish->add_option("graph_a", dist.graph_a)->required();
  distinguish->add_option("graph_b", dist.graph_b)->required();
  distinguish->add_option("node_a", dist.node_a)->required();
  distinguish->add_option("node_b", dist.node_b)->required();
  distinguish->add_option("--templates", dist.templates, "comma-separated template names (default: all)");
  distinguish->add_option("--rounds", dist.rounds, "number of refinement rounds");
  distinguish->add_option("--bound", dist.bound, "counting bound c or 'inf'");
  distinguish->add_flag("--oracle", dist.oracle, "also decide bisimilarity from the definition");

  ModelcheckArgs mc;
  auto* modelcheck = app.add_subcommand("modelcheck", "evaluate a formula on a graph");
  modelcheck->add_option("graph", mc.graph)->required();
  modelcheck->add_option("formula", mc.formula);
  modelcheck->add_option("--formula-file", mc.formula_file);
  modelcheck->add_option("--node", mc.node, "node id (default: all nodes)");
  modelcheck->add_flag("--all-nodes", mc.all_nodes);

  CompileArgs comp;
  auto* compile = app.add_subcommand("compile", "compile a formula into a bounded template GNN");
  compile->add_option("formula", comp.formula);
  compile->add_option("--formula-file", comp.formula_file);
  compile->add_option("--out", comp.out, "model file to write");
  compile->add_option("--propositions", comp.propositions, "input label dimension");

  RungnnArgs run;
  auto* rungnn = app.add_subcommand("rungnn", "run a model file on a graph");
  rungnn->add_option("model", run.model)->required();
  rungnn->add_option("graph", run.graph)->required();
  rungnn->add_flag("--all-layers", run.all_layers);

  CrosscheckArgs cross;
  auto* crosscheck = app.add_subcommand("crosscheck", "compare compiled GNNs with the model checker");
  crosscheck->add_option("formula", cross.formula);
  crosscheck->add_option("--formula-file", cross.formula_file);
  crosscheck->add_option("--graphs", cross.graphs_dir, "directory of graph files");
  crosscheck->add_option("--random", cross.random, "number of random graphs");
  crosscheck->add_option("--size", cross.size, "maximum random graph size");
  crosscheck->add_option("--p", cross.p, "edge probability of random graphs");
  crosscheck->add_option("--propositions", cross.propositions, "label bits of random graphs");
  crosscheck->add_option("--seed", cross.seed);
  crosscheck->add_option("--random-formulas", cross.random_formulas, "number of random formulae");
  crosscheck->add_option("--model", cross.model, "use this model file instead of compiling");

  CharformArgs cf;
  auto* charform = app.add_subcommand("charform", "characteristic formula of a pointed graph");
  charform->add_option("graph", cf.graph)->required();
  charform->add_option("node", cf.node)->required();
  charform->add_option("--level", cf.level);
  charform->add_option("--bound", cf.bound, "counting bound c or 'inf'");
  charform->add_option("--corpus", cf.corpus, "directory of graph files");
  charform->add_option("--templates", cf.templates);

  ClassesArgs cl;
  auto* classes = app.add_subcommand("classes", "bisimilarity classes of a corpus");
  classes->add_option("--corpus", cl.corpus)->required();
  classes->add_option("--level", cl.level);
  classes->add_option("--bound", cl.bound, "counting bound c or 'inf'");
  classes->add_option("--templates", cl.templates);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph file");
  gen_cmd->add_option("kind,--kind", gen.kind, "cycle, star or random")->required();
  gen_cmd->add_option("--n", gen.n, "nodes (cycle, random) or leaves (star)");
  gen_cmd->add_option("--propositions", gen.propositions, "label dimension");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--p", gen.p, "edge probability");
  gen_cmd->add_option("--out", gen.out, "output file (default: stdout)");

  EmbedArgs emb;
  auto* embed = app.add_subcommand("embed", "enumerate template embeddings");
  embed->add_option("template", emb.tmpl)->required();
  embed->add_option("graph", emb.graph)->required();
  embed->add_option("--node", emb.node, "root node id (default: all nodes)");
  embed->add_flag("--count", emb.count_only, "only count");

  GenTemplatesArgs gt;
  auto* gen_templates = app.add_subcommand("gen-templates", "complete templates of a given radius");
  gen_templates->add_option("--radius", gt.radius);
  gen_templates->add_option("--max-nodes", gt.max_nodes);
  gen_templates->add_option("--out", gt.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  auto* sub = app.get_subcommands().front();
  std::vector<std::string> args(argv + 1, argv + argc);
  Report report(sub->get_name(), args);
  try {
    if (sub == distinguish) return cmd_distinguish(report, ctx, dist, timings);
    if (sub == modelcheck) return cmd_modelcheck(report, ctx, mc, timings);
    if (sub == compile) return cmd_compile(report, ctx, comp, timings);
    if (sub == rungnn) return cmd_rungnn(report, ctx, run, timings);
    if (sub == crosscheck) return cmd_crosscheck(report, ctx, cross, timings);
    if (sub == charform) return cmd_charform(report, ctx, cf, timings);
    if (sub == classes) return cmd_classes(report, ctx, cl, timings);
    if (sub == gen_cmd) return cmd_gen(report, gen, timings);
    if (sub == embed) return cmd_embed(report, ctx, emb, timings);
    if (sub == gen_templates) return cmd_gen_templates(report, gt, timings);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
