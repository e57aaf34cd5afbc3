// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/multiset.hpp"

namespace tgnn {

using NodeId = std::size_t;
using Edge = std::pair<std::size_t, std::size_t>;
using Label = std::vector<double>;

/// Finite directed graph with a real feature vector on every node.
///
/// Nodes are the dense range 0..size()-1. Each node also carries an external
/// string id used by the file formats; by default it is the decimal index.
/// The edge set is a set: duplicates are rejected at construction. Self-loops
/// are allowed.
class LabelledGraph {
 public:
  LabelledGraph() = default;

  LabelledGraph(std::vector<Label> labels, std::vector<Edge> edges,
                std::vector<std::string> ids = {})
      : labels_(std::move(labels)), ids_(std::move(ids)) {
    const std::size_t n = labels_.size();
    dimension_ = n == 0 ? 0 : labels_.front().size();
    for (const auto& l : labels_)
      if (l.size() != dimension_)
        throw InvalidArgument("all node labels must have the same dimension");
    if (ids_.empty()) {
      ids_.reserve(n);
      for (std::size_t i = 0; i < n; ++i) ids_.push_back(std::to_string(i));
    } else if (ids_.size() != n) {
      throw InvalidArgument("node id list does not match node count");
    }
    adjacency_.assign(n * n, 0);
    out_.resize(n);
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n)
        throw InvalidArgument("edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") has an endpoint out of range");
      if (adjacency_[u * n + v])
        throw InvalidArgument("duplicate edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
      adjacency_[u * n + v] = 1;
      out_[u].push_back(v);
    }
    for (auto& succ : out_) std::sort(succ.begin(), succ.end());
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

  bool has_edge(NodeId u, NodeId v) const {
    return adjacency_[u * size() + v] != 0;
  }

  /// Out-neighbours of `v`, ascending.
  const std::vector<NodeId>& successors(NodeId v) const { return out_[v]; }
  std::size_t out_degree(NodeId v) const { return out_[v].size(); }

  const Label& label(NodeId v) const { return labels_[v]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const std::string& id(NodeId v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  /// Index of the node with external id `id`.
  NodeId node(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw NotFound("no node with id '" + id + "'");
    return static_cast<NodeId>(it - ids_.begin());
  }

  /// All edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId u = 0; u < size(); ++u)
      for (NodeId v : out_[u]) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& succ : out_) m += succ.size();
    return m;
  }

  /// Structural equality: same node count, edges and labels (bitwise).
  /// External ids are not compared.
  friend bool operator==(const LabelledGraph& a, const LabelledGraph& b) {
    if (a.size() != b.size() || a.dimension_ != b.dimension_ ||
        a.adjacency_ != b.adjacency_)
      return false;
    for (NodeId v = 0; v < a.size(); ++v)
      if (!bitwise_equal(a.labels_[v], b.labels_[v])) return false;
    return true;
  }

  /// The graph with node v renamed to perm[v]. `perm` must be a permutation.
  LabelledGraph permuted(const std::vector<NodeId>& perm) const {
    const std::size_t n = size();
    if (perm.size() != n) throw InvalidArgument("permutation has wrong length");
    std::vector<Label> labels(n);
    std::vector<std::string> ids(n);
    std::vector<char> seen(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      if (perm[v] >= n || seen[perm[v]])
        throw InvalidArgument("not a permutation");
      seen[perm[v]] = 1;
      labels[perm[v]] = labels_[v];
      ids[perm[v]] = ids_[v];
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : this->edges()) edges.emplace_back(perm[u], perm[v]);
    return LabelledGraph(std::move(labels), std::move(edges), std::move(ids));
  }

 private:
  std::vector<Label> labels_;
  std::vector<std::string> ids_;
  std::size_t dimension_ = 0;
  std::vector<char> adjacency_;
  std::vector<std::vector<NodeId>> out_;
};

/// A graph together with a distinguished node.
struct PointedGraph {
  PointedGraph(LabelledGraph g, NodeId p) : graph(std::move(g)), point(p) {
    if (point >= graph.size())
      throw InvalidArgument("point " + std::to_string(point) +
                            " is not a node of the graph");
  }

  LabelledGraph graph;
  NodeId point;
};

/// True iff every label entry is exactly 0 or 1.
inline bool has_boolean_labels(const LabelledGraph& g) {
  for (const auto& l : g.labels())
    for (double x : l)
      if (x != 0.0 && x != 1.0) return false;
  return true;
}

}  // namespace tgnn
