// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tgnn/embedding.hpp"
#include "tgnn/errors.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/multiset.hpp"
#include "tgnn/template.hpp"
#include "tgnn/twl.hpp"

namespace tgnn {

/// (G, v) ~ (G', v') at level l with bound c, decided by comparing round-l
/// colours of a joint (c-bounded) 𝒯-WL run.
inline bool bisimilar_via_twl(const LabelledGraph& g, NodeId v,
                              const LabelledGraph& h, NodeId w,
                              const std::vector<TemplatePtr>& templates,
                              std::size_t level, CountBound bound) {
  return !distinguishes(g, v, h, w, TwlConfig{templates, level, bound});
}

/// Input limits of the exhaustive oracle.
struct OracleLimits {
  std::size_t max_nodes = 8;
  std::size_t max_embeddings = 12;  // per (node, template)
  std::size_t max_bound = 3;        // unbounded is always accepted
};

/// The greatest graded l-(c-)𝒯-bisimulations Z_0 ⊇ Z_1 ⊇ ... between two
/// graphs, one relation per level.
class BisimRelation {
 public:
  BisimRelation(std::size_t left, std::size_t right) : left_(left), right_(right) {}

  std::size_t levels() const noexcept { return levels_.size(); }

  bool contains(std::size_t level, NodeId x, NodeId y) const {
    return levels_.at(level)[x * right_ + y] != 0;
  }

  std::size_t left_size() const noexcept { return left_; }
  std::size_t right_size() const noexcept { return right_; }

 private:
  friend BisimRelation compute_bisimulation(const LabelledGraph&,
                                            const LabelledGraph&,
                                            const std::vector<TemplatePtr>&,
                                            std::size_t, CountBound,
                                            const OracleLimits&);
  std::size_t left_;
  std::size_t right_;
  std::vector<std::vector<char>> levels_;
};

namespace detail {

// Whether the embeddings `from[chosen[i]]` can be given pairwise distinct
// partners in `to`, partner j of chosen i allowed iff compat[chosen[i]][j].
// Exhaustive backtracking; failed states (set of used partners, which also
// fixes the position in `chosen`) are memoised.
inline bool has_distinct_partners(const std::vector<std::size_t>& chosen,
                                  const std::vector<std::vector<char>>& compat,
                                  std::size_t partners) {
  std::vector<char> failed(std::size_t{1} << partners, 0);
  std::function<bool(std::uint32_t)> search = [&](std::uint32_t used) {
    const std::size_t i = static_cast<std::size_t>(std::popcount(used));
    if (i == chosen.size()) return true;
    if (failed[used]) return false;
    for (std::size_t j = 0; j < partners; ++j) {
      if (used >> j & 1u) continue;
      if (!compat[chosen[i]][j]) continue;
      if (search(used | (std::uint32_t{1} << j))) return true;
    }
    failed[used] = 1;
    return false;
  };
  return search(0);
}

// Calls fn(subset) for every k-subset of [0, n) in lexicographic order,
// stopping early when fn returns false. Returns false iff stopped.
template <typename Fn>
bool all_subsets(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// The "forth" half of the graded clause: for every k <= c and every k
// pairwise distinct embeddings on the left there are k pairwise distinct
// partners on the right, related pointwise. In the unbounded case only
// k = |left| is checked, every smaller subset being a subset of it.
inline bool forth(const std::vector<Embedding>& left,
                  const std::vector<Embedding>& right,
                  const std::function<bool(NodeId, NodeId)>& related,
                  CountBound bound) {
  const std::size_t n = left.size();
  if (n == 0) return true;
  std::vector<std::vector<char>> compat(n, std::vector<char>(right.size(), 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < right.size(); ++b) {
      bool ok = true;
      for (std::size_t u = 0; u < left[a].size() && ok; ++u)
        ok = related(left[a][u], right[b][u]);
      compat[a][b] = ok;
    }
  const std::size_t top = bound ? std::min(*bound, n) : n;
  const std::size_t first = bound ? 1 : top;
  for (std::size_t k = first; k <= top; ++k) {
    bool ok = all_subsets(n, k, [&](const std::vector<std::size_t>& subset) {
      return has_distinct_partners(subset, compat, right.size());
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// Computes Z_0..Z_level directly from the definition: Z_0 relates nodes
/// with equal labels; a pair survives into Z_j iff it is in Z_{j-1} and for
/// every template the forth and back conditions hold against Z_{j-1}.
/// Throws ResourceLimit beyond `limits`.
inline BisimRelation compute_bisimulation(const LabelledGraph& g,
                                          const LabelledGraph& h,
                                          const std::vector<TemplatePtr>& templates,
                                          std::size_t level, CountBound bound,
                                          const OracleLimits& limits = {}) {
  if (g.size() > limits.max_nodes || h.size() > limits.max_nodes)
    throw ResourceLimit("bisimulation oracle is limited to " +
                        std::to_string(limits.max_nodes) + " nodes per graph");
  if (bound && *bound == 0) throw InvalidArgument("counting bound must be >= 1");
  if (bound && *bound > limits.max_bound)
    throw ResourceLimit("bisimulation oracle is limited to bound " +
                        std::to_string(limits.max_bound));

  // [template][node] -> embeddings
  using EmbeddingTable = std::vector<std::vector<std::vector<Embedding>>>;
  auto collect = [&](const LabelledGraph& graph) {
    EmbeddingTable out;
    for (const auto& t : templates) {
      EmbeddingMatcher matcher(*t);
      std::vector<std::vector<Embedding>> per_node;
      for (NodeId v = 0; v < graph.size(); ++v) {
        per_node.push_back(matcher.enumerate(graph, v));
        if (per_node.back().size() > limits.max_embeddings)
          throw ResourceLimit("bisimulation oracle is limited to " +
                              std::to_string(limits.max_embeddings) +
                              " embeddings per node and template");
      }
      out.push_back(std::move(per_node));
    }
    return out;
  };
  const EmbeddingTable emb_g = collect(g);
  const EmbeddingTable emb_h = collect(h);

  BisimRelation rel(g.size(), h.size());
  const std::size_t m = h.size();
  std::vector<char> z(g.size() * m, 0);
  for (NodeId x = 0; x < g.size(); ++x)
    for (NodeId y = 0; y < m; ++y) z[x * m + y] = bitwise_equal(g.label(x), h.label(y));
  rel.levels_.push_back(z);

  for (std::size_t j = 1; j <= level; ++j) {
    const auto& prev = rel.levels_.back();
    std::function<bool(NodeId, NodeId)> fwd = [&](NodeId x, NodeId y) {
      return prev[x * m + y] != 0;
    };
    std::function<bool(NodeId, NodeId)> bwd = [&](NodeId y, NodeId x) {
      return prev[x * m + y] != 0;
    };
    std::vector<char> next(prev.size(), 0);
    for (NodeId x = 0; x < g.size(); ++x)
      for (NodeId y = 0; y < m; ++y) {
        if (!prev[x * m + y]) continue;
        bool ok = true;
        for (std::size_t ti = 0; ti < templates.size() && ok; ++ti)
          ok = detail::forth(emb_g[ti][x], emb_h[ti][y], fwd, bound) &&
               detail::forth(emb_h[ti][y], emb_g[ti][x], bwd, bound);
        next[x * m + y] = ok;
      }
    rel.levels_.push_back(std::move(next));
  }
  return rel;
}

/// Decides (G, v) ~^{l,c} (G', v') from the definition of graded
/// bisimulation, independently of 𝒯-WL.
inline bool bisim_oracle(const LabelledGraph& g, NodeId v, const LabelledGraph& h,
                         NodeId w, const std::vector<TemplatePtr>& templates,
                         std::size_t level, CountBound bound,
                         const OracleLimits& limits = {}) {
  if (v >= g.size() || w >= h.size()) throw InvalidArgument("node out of range");
  return compute_bisimulation(g, h, templates, level, bound, limits)
      .contains(level, v, w);
}

/// Groups a corpus of pointed graphs by their round-`level` colour in one
/// shared (bounded) 𝒯-WL run. Classes are ordered by first member; each
/// class lists corpus indices ascending, so front() is its representative.
inline std::vector<std::vector<std::size_t>> bisim_classes(
    const std::vector<PointedGraph>& corpus,
    const std::vector<TemplatePtr>& templates, std::size_t level,
    CountBound bound) {
  if (corpus.empty()) throw InvalidArgument("corpus must not be empty");
  std::vector<const LabelledGraph*> graphs;
  std::vector<std::size_t> graph_of(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::size_t gi = 0;
    while (gi < graphs.size() && !(*graphs[gi] == corpus[i].graph)) ++gi;
    if (gi == graphs.size()) graphs.push_back(&corpus[i].graph);
    graph_of[i] = gi;
  }
  auto col = run_twl(graphs, TwlConfig{templates, level, bound});
  std::map<std::size_t, std::size_t> class_of_color;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::size_t c = col.color(level, graph_of[i], corpus[i].point);
    auto [it, fresh] = class_of_color.emplace(c, classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

}  // namespace tgnn
