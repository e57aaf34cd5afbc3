// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "tgnn/errors.hpp"
#include "tgnn/gnn.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/template.hpp"

// JSON file formats.
//
//   graph     {"nodes": [{"id": str, "label": [num]}], "edges": [[id, id]]}
//   template  {"name": str, "size": int, "pos_edges": [[int, int]], "neg_edges": [[int, int]]}
//   registry  [template] or {"propositions": [str], "templates": [template]}
//   model     {"dimension", "input_dimension"?, "input"?, "templates"?,
//              "layers": [{"slots": [{"template", "template_agg", "outer_agg"}],
//                          "C", "A", "b", "activation"}],
//              "cls": {"component", "threshold"}}
//
// Component indices in model files are 0-based.

namespace tgnn {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void format_error(const std::string& what, const std::string& message) {
  throw InvalidArgument(what + ": " + message);
}

inline const Json& member(const Json& obj, const char* key, const std::string& what) {
  if (!obj.is_object()) format_error(what, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) format_error(what, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::size_t as_index(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    format_error(what, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline double as_number(const Json& j, const std::string& what) {
  if (!j.is_number()) format_error(what, "expected a number");
  return j.get<double>();
}

inline std::vector<double> as_vector(const Json& j, const std::string& what) {
  if (!j.is_array()) format_error(what, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(as_number(x, what));
  return out;
}

inline Matrix as_matrix(const Json& j, std::size_t cols, const std::string& what) {
  if (!j.is_array()) format_error(what, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) rows.push_back(as_vector(r, what));
  if (rows.empty()) return Matrix(0, cols);
  try {
    return Matrix::from_rows(rows);
  } catch (const InvalidArgument& e) {
    format_error(what, e.what());
  }
}

}  // namespace detail

/// Integral values are written as JSON integers so files stay readable;
/// everything else keeps its shortest round-trip form.
inline Json number_to_json(double x) {
  if (std::isfinite(x) && std::trunc(x) == x && std::abs(x) < 1e15 && !(x == 0.0 && std::signbit(x)))
    return static_cast<std::int64_t>(x);
  return x;
}

inline Json vector_to_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number_to_json(x));
  return out;
}

inline Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m.to_rows()) out.push_back(vector_to_json(row));
  return out;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

// Graphs

inline Json graph_to_json(const LabelledGraph& g) {
  Json nodes = Json::array();
  for (NodeId v = 0; v < g.size(); ++v)
    nodes.push_back({{"id", g.id(v)}, {"label", vector_to_json(g.label(v))}});
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({g.id(u), g.id(v)});
  return {{"nodes", nodes}, {"edges", edges}};
}

inline LabelledGraph graph_from_json(const Json& j) {
  const std::string what = "graph";
  const Json& nodes = detail::member(j, "nodes", what);
  const Json& edges = detail::member(j, "edges", what);
  if (!nodes.is_array()) detail::format_error(what, "\"nodes\" must be an array");
  if (!edges.is_array()) detail::format_error(what, "\"edges\" must be an array");
  std::vector<Label> labels;
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeId> index;
  for (const auto& n : nodes) {
    const Json& id = detail::member(n, "id", what);
    if (!id.is_string()) detail::format_error(what, "node id must be a string");
    const std::string s = id.get<std::string>();
    if (!index.emplace(s, ids.size()).second)
      detail::format_error(what, "duplicate node id '" + s + "'");
    ids.push_back(s);
    labels.push_back(detail::as_vector(detail::member(n, "label", what), what + " node '" + s + "'"));
  }
  std::vector<Edge> es;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      detail::format_error(what, "each edge must be a pair of node ids");
    auto u = index.find(e[0].get<std::string>());
    auto v = index.find(e[1].get<std::string>());
    if (u == index.end() || v == index.end())
      detail::format_error(what, "edge refers to an unknown node id");
    es.emplace_back(u->second, v->second);
  }
  try {
    return LabelledGraph(std::move(labels), std::move(es), std::move(ids));
  } catch (const InvalidArgument& e) {
    detail::format_error(what, e.what());
  }
}

inline LabelledGraph read_graph(const std::filesystem::path& path) {
  try {
    return graph_from_json(read_json_file(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_graph(const std::filesystem::path& path, const LabelledGraph& g) {
  write_text_file(path, dump_json(graph_to_json(g)));
}

// Templates and registries

inline Json template_to_json(const Template& t) {
  Json pos = Json::array(), neg = Json::array();
  for (const auto& [u, v] : t.pos_edges) pos.push_back({u, v});
  for (const auto& [u, v] : t.neg_edges) neg.push_back({u, v});
  return {{"name", t.name}, {"size", t.size}, {"pos_edges", pos}, {"neg_edges", neg}};
}

inline Template template_from_json(const Json& j) {
  const std::string what = "template";
  Template t;
  const Json& name = detail::member(j, "name", what);
  if (!name.is_string()) detail::format_error(what, "name must be a string");
  t.name = name.get<std::string>();
  t.size = detail::as_index(detail::member(j, "size", what), what);
  auto edges = [&](const char* key, std::set<Edge>& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array()) detail::format_error(what, std::string(key) + " must be an array");
    for (const auto& e : *it) {
      if (!e.is_array() || e.size() != 2) detail::format_error(what, "edges are pairs of vertices");
      if (!out.emplace(detail::as_index(e[0], what), detail::as_index(e[1], what)).second)
        detail::format_error(what, "duplicate edge in '" + t.name + "'");
    }
  };
  edges("pos_edges", t.pos_edges);
  edges("neg_edges", t.neg_edges);
  const auto problems = validate_template(t);
  if (!problems.empty()) detail::format_error(what + " '" + t.name + "'", problems.front());
  return t;
}

inline Json registry_to_json(const TemplateRegistry& r) {
  Json ts = Json::array();
  for (const auto& t : r.templates()) ts.push_back(template_to_json(*t));
  return {{"propositions", r.propositions()}, {"templates", ts}};
}

inline TemplateRegistry registry_from_json(const Json& j) {
  TemplateRegistry r;
  const Json* templates = &j;
  if (j.is_object()) {
    templates = &detail::member(j, "templates", "registry");
    if (auto it = j.find("propositions"); it != j.end()) {
      if (!it->is_array()) detail::format_error("registry", "propositions must be an array");
      std::vector<std::string> props;
      for (const auto& p : *it) {
        if (!p.is_string()) detail::format_error("registry", "propositions must be strings");
        props.push_back(p.get<std::string>());
      }
      r.set_propositions(std::move(props));
    }
  }
  if (!templates->is_array()) detail::format_error("registry", "expected an array of templates");
  for (const auto& t : *templates) r.add(template_from_json(t));
  return r;
}

inline TemplateRegistry read_registry(const std::filesystem::path& path) {
  try {
    return registry_from_json(read_json_file(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

// Models

inline Json template_aggregator_to_json(const TemplateAggregator& agg) {
  return std::visit(
      [](const auto& a) -> Json {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, ProjectAggregator>)
          return {{"kind", "project"}, {"vertex", a.vertex}, {"features", a.features}};
        else if constexpr (std::is_same_v<A, AndGateAggregator>)
          return {{"kind", "and_gate"}, {"features", a.features}};
        else
          return {{"kind", "affine"},
                  {"weights", matrix_to_json(a.weights)},
                  {"bias", vector_to_json(a.bias)},
                  {"activation", to_string(a.activation)}};
      },
      agg);
}

inline TemplateAggregator template_aggregator_from_json(const Json& j) {
  const std::string what = "template_agg";
  const Json& kind = detail::member(j, "kind", what);
  auto indices = [&](const char* key) {
    std::vector<std::size_t> out;
    auto it = j.find(key);
    if (it == j.end()) return out;
    if (!it->is_array()) detail::format_error(what, std::string(key) + " must be an array");
    for (const auto& x : *it) out.push_back(detail::as_index(x, what));
    return out;
  };
  if (kind == "project")
    return ProjectAggregator{detail::as_index(detail::member(j, "vertex", what), what),
                             indices("features")};
  if (kind == "and_gate") return AndGateAggregator{indices("features")};
  if (kind == "affine") {
    AffineAggregator a;
    a.bias = detail::as_vector(detail::member(j, "bias", what), what);
    a.weights = detail::as_matrix(detail::member(j, "weights", what), a.bias.size(), what);
    if (auto it = j.find("activation"); it != j.end())
      a.activation = parse_activation(it->get<std::string>());
    return a;
  }
  detail::format_error(what, "unknown kind " + kind.dump());
}

/// Writes the model together with the definitions of every template it uses.
inline Json model_to_json(const GnnModel& m) {
  Json layers = Json::array();
  std::vector<TemplatePtr> used;
  for (const auto& l : m.layers) {
    Json slots = Json::array();
    for (const auto& s : l.slots) {
      if (std::none_of(used.begin(), used.end(), [&](const TemplatePtr& t) { return t->name == s.tmpl->name; }))
        used.push_back(s.tmpl);
      slots.push_back({{"template", s.tmpl->name},
                       {"template_agg", template_aggregator_to_json(s.template_agg)},
                       {"outer_agg", to_string(s.outer_agg)}});
    }
    layers.push_back({{"slots", slots},
                      {"C", matrix_to_json(l.C)},
                      {"A", matrix_to_json(l.A)},
                      {"b", vector_to_json(l.b)},
                      {"activation", to_string(l.activation)}});
  }
  Json templates = Json::array();
  for (const auto& t : used) templates.push_back(template_to_json(*t));
  Json input = Json::array();
  for (const auto& x : m.input_map) input.push_back(x ? Json(*x) : Json(nullptr));
  Json out = {{"dimension", m.dimension}, {"input_dimension", m.input_dimension}};
  if (!m.input_map.empty()) out["input"] = input;
  out["templates"] = templates;
  out["layers"] = layers;
  out["cls"] = {{"component", m.cls.component}, {"threshold", number_to_json(m.cls.threshold)}};
  return out;
}

/// Templates are resolved against the file's own "templates" list first,
/// then against `registry`.
inline GnnModel model_from_json(const Json& j, const TemplateRegistry& registry) {
  const std::string what = "model";
  GnnModel m;
  m.dimension = detail::as_index(detail::member(j, "dimension", what), what);
  m.input_dimension = m.dimension;
  if (auto it = j.find("input_dimension"); it != j.end())
    m.input_dimension = detail::as_index(*it, what);
  if (auto it = j.find("input"); it != j.end()) {
    if (!it->is_array()) detail::format_error(what, "input must be an array");
    for (const auto& x : *it)
      m.input_map.push_back(x.is_null() ? std::nullopt
                                        : std::optional<std::size_t>(detail::as_index(x, what)));
  }
  std::map<std::string, TemplatePtr> local;
  if (auto it = j.find("templates"); it != j.end()) {
    if (!it->is_array()) detail::format_error(what, "templates must be an array");
    for (const auto& t : *it) {
      Template parsed = template_from_json(t);
      std::string name = parsed.name;
      local[name] = std::make_shared<const Template>(std::move(parsed));
    }
  }
  auto resolve = [&](const std::string& name) -> TemplatePtr {
    if (auto it = local.find(name); it != local.end()) return it->second;
    if (auto t = registry.find(name)) return t;
    throw NotFound("model refers to unknown template '" + name + "'");
  };
  const Json& layers = detail::member(j, "layers", what);
  if (!layers.is_array()) detail::format_error(what, "layers must be an array");
  for (const auto& lj : layers) {
    GnnLayer l;
    const Json& slots = detail::member(lj, "slots", what);
    if (!slots.is_array()) detail::format_error(what, "slots must be an array");
    for (const auto& sj : slots) {
      const Json& name = detail::member(sj, "template", what);
      if (!name.is_string()) detail::format_error(what, "slot template must be a name");
      Slot s{resolve(name.get<std::string>()),
             template_aggregator_from_json(detail::member(sj, "template_agg", what)),
             OuterAggregator{}};
      const Json& outer = detail::member(sj, "outer_agg", what);
      if (!outer.is_string()) detail::format_error(what, "outer_agg must be a string");
      s.outer_agg = parse_outer_aggregator(outer.get<std::string>());
      l.slots.push_back(std::move(s));
    }
    l.C = detail::as_matrix(detail::member(lj, "C", what), m.dimension, what + " C");
    l.A = detail::as_matrix(detail::member(lj, "A", what), m.dimension, what + " A");
    l.b = detail::as_vector(detail::member(lj, "b", what), what + " b");
    if (auto it = lj.find("activation"); it != lj.end()) {
      if (!it->is_string()) detail::format_error(what, "activation must be a string");
      l.activation = parse_activation(it->get<std::string>());
    }
    m.layers.push_back(std::move(l));
  }
  const Json& cls = detail::member(j, "cls", what);
  m.cls.component = detail::as_index(detail::member(cls, "component", what), what);
  m.cls.threshold = detail::as_number(detail::member(cls, "threshold", what), what);
  const auto diag = validate_model(m);
  if (!diag.errors.empty()) detail::format_error(what, diag.errors.front());
  return m;
}

inline GnnModel read_model(const std::filesystem::path& path, const TemplateRegistry& registry) {
  try {
    return model_from_json(read_json_file(path), registry);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace tgnn
