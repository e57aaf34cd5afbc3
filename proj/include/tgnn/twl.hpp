// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tgnn/embedding.hpp"
#include "tgnn/errors.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/multiset.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

struct TwlConfig {
  std::vector<TemplatePtr> templates;
  std::size_t rounds = 0;
  CountBound bound;  // nullopt: multiplicities are counted exactly

  void validate() const {
    if (templates.empty()) throw InvalidArgument("template list must not be empty");
    std::set<std::string> names;
    for (const auto& t : templates) {
      if (!t) throw InvalidArgument("null template");
      require_valid(*t);
      if (!names.insert(t->name).second)
        throw InvalidArgument("duplicate template '" + t->name + "' in configuration");
    }
    if (bound && *bound == 0) throw InvalidArgument("counting bound must be >= 1");
  }
};

/// Colours of every node of every graph of one run, per round. Colour ids
/// are dense per round and only comparable within the same run and round.
class Coloring {
 public:
  /// Number of computed rounds, including round 0.
  std::size_t rounds() const noexcept { return colors_.size(); }

  std::size_t color(std::size_t round, std::size_t graph, NodeId v) const {
    return colors_.at(round).at(graph).at(v);
  }

  /// [graph][node] colours of one round.
  const std::vector<std::vector<std::size_t>>& round(std::size_t l) const {
    return colors_.at(l);
  }

  std::size_t num_colors(std::size_t round) const { return num_colors_.at(round); }

 private:
  friend class TwlRefiner;
  std::vector<std::vector<std::vector<std::size_t>>> colors_;
  std::vector<std::size_t> num_colors_;
};

/// Incremental 𝒯-WL over a fixed list of graphs sharing one interning
/// table per round. New colours are handed out in order of first
/// appearance (graphs in input order, nodes ascending), which makes colour
/// ids deterministic.
class TwlRefiner {
 public:
  TwlRefiner(std::vector<const LabelledGraph*> graphs,
             std::vector<TemplatePtr> templates, CountBound bound)
      : graphs_(std::move(graphs)), templates_(std::move(templates)), bound_(bound) {
    TwlConfig{templates_, 0, bound_}.validate();
    for (const auto* g : graphs_)
      if (g->dimension() != graphs_.front()->dimension())
        throw InvalidArgument("graphs in one refinement run must share the label dimension");
    initial_round();
  }

  const Coloring& coloring() const noexcept { return coloring_; }

  /// Computes the next round.
  void step() {
    if (embeddings_.empty()) cache_embeddings();
    const auto& prev = coloring_.colors_.back();
    std::map<std::vector<std::int64_t>, std::size_t> table;
    std::vector<std::vector<std::size_t>> next(graphs_.size());
    for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
      next[gi].resize(graphs_[gi]->size());
      for (NodeId v = 0; v < graphs_[gi]->size(); ++v) {
        auto key = signature(prev, gi, v);
        auto [it, fresh] = table.emplace(std::move(key), table.size());
        next[gi][v] = it->second;
      }
    }
    coloring_.colors_.push_back(std::move(next));
    coloring_.num_colors_.push_back(table.size());
  }

 private:
  void initial_round() {
    std::map<std::vector<std::int64_t>, std::size_t> table;
    std::vector<std::vector<std::size_t>> colors(graphs_.size());
    for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
      const auto& g = *graphs_[gi];
      colors[gi].resize(g.size());
      for (NodeId v = 0; v < g.size(); ++v) {
        std::vector<std::int64_t> key;
        for (double x : g.label(v)) key.push_back(std::bit_cast<std::int64_t>(x));
        auto [it, fresh] = table.emplace(std::move(key), table.size());
        colors[gi][v] = it->second;
      }
    }
    coloring_.colors_.push_back(std::move(colors));
    coloring_.num_colors_.push_back(table.size());
  }

  void cache_embeddings() {
    embeddings_.resize(graphs_.size());
    for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
      embeddings_[gi].resize(templates_.size());
      for (std::size_t ti = 0; ti < templates_.size(); ++ti) {
        EmbeddingMatcher matcher(*templates_[ti]);
        for (NodeId v = 0; v < graphs_[gi]->size(); ++v)
          embeddings_[gi][ti].push_back(matcher.enumerate(*graphs_[gi], v));
      }
    }
  }

  // (previous colour, then per template the multiset of coloured embeddings
  // (col(f(1)), ..., col(f(n))), capped at the bound) flattened into one key.
  std::vector<std::int64_t> signature(
      const std::vector<std::vector<std::size_t>>& prev, std::size_t gi,
      NodeId v) const {
    std::vector<std::int64_t> key{static_cast<std::int64_t>(prev[gi][v])};
    for (std::size_t ti = 0; ti < templates_.size(); ++ti) {
      Multiset<std::vector<std::size_t>> fingerprints;
      for (const auto& f : embeddings_[gi][ti][v]) {
        std::vector<std::size_t> colors;
        colors.reserve(f.size() - 1);
        for (std::size_t u = 1; u < f.size(); ++u) colors.push_back(prev[gi][f[u]]);
        fingerprints.insert(colors);
      }
      if (bound_) fingerprints = fingerprints.restricted(*bound_);
      key.push_back(-1);
      key.push_back(static_cast<std::int64_t>(fingerprints.distinct()));
      for (const auto& [colors, m] : fingerprints) {
        for (auto c : colors) key.push_back(static_cast<std::int64_t>(c));
        key.push_back(static_cast<std::int64_t>(m));
      }
    }
    return key;
  }

  std::vector<const LabelledGraph*> graphs_;
  std::vector<TemplatePtr> templates_;
  CountBound bound_;
  Coloring coloring_;
  // [graph][template][node] -> embeddings
  std::vector<std::vector<std::vector<std::vector<Embedding>>>> embeddings_;
};

inline Coloring run_twl(std::vector<const LabelledGraph*> graphs,
                        const TwlConfig& cfg) {
  cfg.validate();
  TwlRefiner refiner(std::move(graphs), cfg.templates, cfg.bound);
  for (std::size_t l = 0; l < cfg.rounds; ++l) refiner.step();
  return refiner.coloring();
}

inline Coloring run_twl(const std::vector<LabelledGraph>& graphs,
                        const TwlConfig& cfg) {
  std::vector<const LabelledGraph*> ptrs;
  for (const auto& g : graphs) ptrs.push_back(&g);
  return run_twl(std::move(ptrs), cfg);
}

/// Smallest l >= 1 whose partition equals the round l-1 partition, over all
/// graphs jointly. Since each round refines the previous one it suffices to
/// compare colour counts.
inline std::size_t stabilization_round(std::vector<const LabelledGraph*> graphs,
                                       const std::vector<TemplatePtr>& templates,
                                       CountBound bound = std::nullopt) {
  TwlRefiner refiner(std::move(graphs), templates, bound);
  for (std::size_t l = 1;; ++l) {
    refiner.step();
    if (refiner.coloring().num_colors(l) == refiner.coloring().num_colors(l - 1))
      return l;
  }
}

inline std::size_t stabilization_round(const std::vector<LabelledGraph>& graphs,
                                       const std::vector<TemplatePtr>& templates,
                                       CountBound bound = std::nullopt) {
  std::vector<const LabelledGraph*> ptrs;
  for (const auto& g : graphs) ptrs.push_back(&g);
  return stabilization_round(std::move(ptrs), templates, bound);
}

/// True iff (g1, v1) and (g2, v2) get different colours after cfg.rounds
/// rounds of a joint run.
inline bool distinguishes(const LabelledGraph& g1, NodeId v1,
                          const LabelledGraph& g2, NodeId v2,
                          const TwlConfig& cfg) {
  if (v1 >= g1.size() || v2 >= g2.size())
    throw InvalidArgument("node out of range");
  auto col = run_twl(std::vector<const LabelledGraph*>{&g1, &g2}, cfg);
  return col.color(cfg.rounds, 0, v1) != col.color(cfg.rounds, 1, v2);
}

/// Canonical form of a partition: each element is replaced by the index of
/// the first element in its class.
inline std::vector<std::size_t> canonical_partition(
    const std::vector<std::size_t>& colors) {
  std::map<std::size_t, std::size_t> first;
  std::vector<std::size_t> out;
  out.reserve(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i)
    out.push_back(first.emplace(colors[i], i).first->second);
  return out;
}

}  // namespace tgnn
