// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

/// Template vertex i is sent to graph node embedding[i]; embedding[0] is the
/// point.
using Embedding = std::vector<NodeId>;

/// Backtracking matcher for one template.
///
/// Template vertices are assigned in ascending index and candidates are
/// tried in ascending node order, so embeddings come out in lexicographic
/// order. When vertex i is placed, every E+/E- pair whose larger endpoint
/// is i is checked against the partial assignment.
class EmbeddingMatcher {
 public:
  explicit EmbeddingMatcher(const Template& t) : size_(t.size), checks_(t.size) {
    require_valid(t);
    for (const auto& [a, b] : t.pos_edges)
      checks_[std::max(a, b)].push_back({a, b, true});
    for (const auto& [a, b] : t.neg_edges)
      checks_[std::max(a, b)].push_back({a, b, false});
  }

  /// Calls visit(const Embedding&) once per embedding rooted at `point`.
  template <typename Visit>
  void for_each(const LabelledGraph& g, NodeId point, Visit&& visit) const {
    if (point >= g.size()) throw InvalidArgument("point is not a node of the graph");
    if (size_ > g.size()) return;
    Embedding assignment(size_);
    std::vector<char> used(g.size(), 0);
    assignment[0] = point;
    if (!consistent(g, assignment, 0)) return;
    used[point] = 1;
    extend(g, assignment, used, 1, visit);
  }

  std::vector<Embedding> enumerate(const LabelledGraph& g, NodeId point) const {
    std::vector<Embedding> out;
    for_each(g, point, [&](const Embedding& f) { out.push_back(f); });
    return out;
  }

  std::size_t count(const LabelledGraph& g, NodeId point) const {
    std::size_t n = 0;
    for_each(g, point, [&](const Embedding&) { ++n; });
    return n;
  }

  std::size_t template_size() const noexcept { return size_; }

 private:
  struct Check {
    std::size_t from;
    std::size_t to;
    bool present;
  };

  bool consistent(const LabelledGraph& g, const Embedding& f,
                  std::size_t vertex) const {
    for (const auto& c : checks_[vertex])
      if (g.has_edge(f[c.from], f[c.to]) != c.present) return false;
    return true;
  }

  template <typename Visit>
  void extend(const LabelledGraph& g, Embedding& f, std::vector<char>& used,
              std::size_t vertex, Visit& visit) const {
    if (vertex == size_) {
      visit(static_cast<const Embedding&>(f));
      return;
    }
    for (NodeId w = 0; w < g.size(); ++w) {
      if (used[w]) continue;
      f[vertex] = w;
      if (!consistent(g, f, vertex)) continue;
      used[w] = 1;
      extend(g, f, used, vertex + 1, visit);
      used[w] = 0;
    }
  }

  std::size_t size_;
  std::vector<std::vector<Check>> checks_;
};

/// emb(T, (G, v)) in lexicographic order.
inline std::vector<Embedding> enumerate_embeddings(const Template& t,
                                                   const LabelledGraph& g,
                                                   NodeId v) {
  return EmbeddingMatcher(t).enumerate(g, v);
}

/// |emb(T, (G, v))| without materialising the embeddings.
inline std::size_t count_embeddings(const Template& t, const LabelledGraph& g,
                                    NodeId v) {
  return EmbeddingMatcher(t).count(g, v);
}

}  // namespace tgnn
