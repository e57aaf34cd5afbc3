// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/multiset.hpp"

namespace tgnn {

/// A rooted pattern with mandatory edges and mandatory non-edges.
///
/// Vertices are 0..size-1 and the root is always vertex 0, so the arguments
/// of a modal formula line up with vertices 1..size-1. Construction does not
/// validate; see validate_template().
struct Template {
  std::string name;
  std::size_t size = 1;
  std::set<Edge> pos_edges;
  std::set<Edge> neg_edges;

  /// Number of non-root vertices (the arity of the matching modality).
  std::size_t arity() const noexcept { return size == 0 ? 0 : size - 1; }

  friend bool operator==(const Template&, const Template&) = default;
};

using TemplatePtr = std::shared_ptr<const Template>;

/// A template with a real vector on each vertex.
struct LabelledTemplate {
  LabelledTemplate(Template t, std::vector<Label> l)
      : tmpl(std::move(t)), labels(std::move(l)) {
    if (labels.size() != tmpl.size)
      throw InvalidArgument("labelled template needs one label per vertex");
  }

  Template tmpl;
  std::vector<Label> labels;
};

/// Empty result means the template is well formed.
inline std::vector<std::string> validate_template(const Template& t) {
  std::vector<std::string> violations;
  auto pair_text = [](const Edge& e) {
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
  };
  if (t.size == 0) violations.push_back("template has no vertices");
  for (const auto* edges : {&t.pos_edges, &t.neg_edges})
    for (const auto& e : *edges)
      if (e.first >= t.size || e.second >= t.size)
        violations.push_back("vertex out of range in edge " + pair_text(e));
  for (const auto& e : t.pos_edges)
    if (t.neg_edges.contains(e))
      violations.push_back("overlapping edge " + pair_text(e));
  return violations;
}

inline void require_valid(const Template& t) {
  auto v = validate_template(t);
  if (!v.empty())
    throw InvalidArgument("template '" + t.name + "': " + v.front());
}

/// Longest shortest E+-path from the root. std::nullopt stands for infinity
/// (some vertex is unreachable through E+).
inline std::optional<std::size_t> template_radius(const Template& t) {
  std::vector<std::size_t> dist(t.size, SIZE_MAX);
  std::deque<std::size_t> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const auto& [a, b] : t.pos_edges)
      if (a == u && dist[b] == SIZE_MAX) {
        dist[b] = dist[u] + 1;
        queue.push_back(b);
      }
  }
  std::size_t radius = 0;
  for (std::size_t d : dist) {
    if (d == SIZE_MAX) return std::nullopt;
    radius = std::max(radius, d);
  }
  return radius;
}

namespace detail {

// Calls fn(perm) for every bijection of [0,n) with perm[0] == 0 until fn
// returns true. Returns whether some call returned true.
template <typename Fn>
bool for_each_rooted_permutation(std::size_t n, Fn&& fn) {
  if (n == 0) return false;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (fn(perm)) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

inline bool maps_edges(const std::set<Edge>& from, const std::set<Edge>& to,
                       const std::vector<std::size_t>& perm) {
  if (from.size() != to.size()) return false;
  for (const auto& [u, v] : from)
    if (!to.contains({perm[u], perm[v]})) return false;
  return true;
}

inline bool is_template_isomorphism(const Template& a, const Template& b,
                                    const std::vector<Label>* la,
                                    const std::vector<Label>* lb,
                                    const std::vector<std::size_t>& perm) {
  if (!maps_edges(a.pos_edges, b.pos_edges, perm) ||
      !maps_edges(a.neg_edges, b.neg_edges, perm))
    return false;
  if (la && lb)
    for (std::size_t u = 1; u < a.size; ++u)
      if (!bitwise_equal((*la)[u], (*lb)[perm[u]])) return false;
  return true;
}

}  // namespace detail

/// Decides whether a root-preserving bijection maps edges to edges,
/// non-edges to non-edges and every non-root label to an equal label.
/// Root labels are ignored. Exhaustive over all (size-1)! bijections.
inline bool template_isomorphic(const LabelledTemplate& a,
                                const LabelledTemplate& b) {
  if (a.tmpl.size != b.tmpl.size) return false;
  return detail::for_each_rooted_permutation(a.tmpl.size, [&](const auto& p) {
    return detail::is_template_isomorphism(a.tmpl, b.tmpl, &a.labels, &b.labels,
                                           p);
  });
}

/// Unlabelled variant: only the edge structure is compared.
inline bool template_isomorphic(const Template& a, const Template& b) {
  if (a.size != b.size) return false;
  return detail::for_each_rooted_permutation(a.size, [&](const auto& p) {
    return detail::is_template_isomorphism(a, b, nullptr, nullptr, p);
  });
}

using VertexMap = std::vector<std::size_t>;

/// All root-fixing automorphisms, identity first.
inline std::vector<VertexMap> template_automorphisms(const LabelledTemplate& t) {
  std::vector<VertexMap> out;
  detail::for_each_rooted_permutation(t.tmpl.size, [&](const auto& p) {
    if (detail::is_template_isomorphism(t.tmpl, t.tmpl, &t.labels, &t.labels, p))
      out.push_back(p);
    return false;
  });
  return out;
}

inline std::vector<VertexMap> template_automorphisms(const Template& t) {
  std::vector<VertexMap> out;
  detail::for_each_rooted_permutation(t.size, [&](const auto& p) {
    if (detail::is_template_isomorphism(t, t, nullptr, nullptr, p))
      out.push_back(p);
    return false;
  });
  return out;
}

/// Named set of templates plus the proposition list used by formulae.
class TemplateRegistry {
 public:
  TemplateRegistry() = default;

  const TemplatePtr& add(Template t) {
    require_valid(t);
    if (t.name.empty()) throw InvalidArgument("template name must not be empty");
    if (find(t.name))
      throw InvalidArgument("duplicate template name '" + t.name + "'");
    templates_.push_back(std::make_shared<const Template>(std::move(t)));
    return templates_.back();
  }

  /// nullptr when absent.
  TemplatePtr find(const std::string& name) const {
    for (const auto& t : templates_)
      if (t->name == name) return t;
    return nullptr;
  }

  TemplatePtr at(const std::string& name) const {
    auto t = find(name);
    if (!t) throw NotFound("unknown template '" + name + "'");
    return t;
  }

  const std::vector<TemplatePtr>& templates() const noexcept {
    return templates_;
  }

  const std::vector<std::string>& propositions() const noexcept {
    return propositions_;
  }

  void set_propositions(std::vector<std::string> props) {
    std::unordered_set<std::string> seen;
    for (const auto& p : props)
      if (!seen.insert(p).second)
        throw InvalidArgument("duplicate proposition '" + p + "'");
    propositions_ = std::move(props);
  }

 private:
  std::vector<TemplatePtr> templates_;
  std::vector<std::string> propositions_;
};

inline Template edge_template() { return {"T1", 2, {{0, 1}}, {}}; }
inline Template non_edge_template() { return {"T2", 2, {}, {{0, 1}}}; }
inline Template triangle_template() {
  return {"T△", 3, {{0, 1}, {1, 2}, {2, 0}}, {}};
}
inline Template path_template() { return {"Tp", 3, {{0, 1}, {1, 2}}, {{2, 0}}}; }

/// T1 (edge), T2 (non-edge), T△ (directed triangle) and Tp (open path whose
/// last vertex has no edge back to the root).
inline TemplateRegistry builtin_registry() {
  TemplateRegistry r;
  r.add(edge_template());
  r.add(non_edge_template());
  r.add(triangle_template());
  r.add(path_template());
  return r;
}

/// Every complete template (each ordered pair of distinct vertices is in
/// exactly one of E+ / E-, no self-loops) with at most `max_nodes` vertices
/// and radius exactly `k`, one per isomorphism class. Results are named
/// "R<k>_<size>_<i>" and ordered by size, then by edge encoding.
inline std::vector<Template> generate_radius_k_templates(std::size_t k,
                                                         std::size_t max_nodes) {
  if (k == 0) throw InvalidArgument("radius must be >= 1");
  if (max_nodes == 0) throw InvalidArgument("max_nodes must be >= 1");
  if (max_nodes > 5)
    throw ResourceLimit("template generation is limited to 5 vertices");

  std::vector<Template> out;
  for (std::size_t n = 2; n <= max_nodes; ++n) {
    std::vector<Edge> pairs;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v) pairs.emplace_back(u, v);
    std::vector<std::size_t> pair_index(n * n, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      pair_index[pairs[i].first * n + pairs[i].second] = i;

    std::vector<std::vector<std::size_t>> perms;
    detail::for_each_rooted_permutation(n, [&](const auto& p) {
      perms.push_back(p);
      return false;
    });

    const std::uint32_t limit = std::uint32_t{1} << pairs.size();
    std::size_t index = 0;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      Template t;
      t.size = n;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        (mask >> i & 1u ? t.pos_edges : t.neg_edges).insert(pairs[i]);
      auto r = template_radius(t);
      if (!r || *r != k) continue;

      // Keep only the numerically smallest encoding of each class.
      bool minimal = true;
      for (const auto& p : perms) {
        std::uint32_t image = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if (mask >> i & 1u)
            image |= std::uint32_t{1}
                     << pair_index[p[pairs[i].first] * n + p[pairs[i].second]];
        if (image < mask) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      t.name = "R" + std::to_string(k) + "_" + std::to_string(n) + "_" +
               std::to_string(index++);
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace tgnn
