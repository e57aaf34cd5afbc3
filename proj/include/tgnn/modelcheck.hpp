// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "tgnn/embedding.hpp"
#include "tgnn/errors.hpp"
#include "tgnn/formula.hpp"
#include "tgnn/graph.hpp"

namespace tgnn {

/// Evaluates formulae on one Boolean-labelled graph. Truth values are
/// memoised per (formula node, graph node) and embeddings per (template,
/// graph node), so repeated queries against shared formulae stay cheap.
/// Proposition i holds at v iff label bit i is 1.
class ModelChecker {
 public:
  explicit ModelChecker(const LabelledGraph& g) : g_(g) {
    if (!has_boolean_labels(g))
      throw InvalidArgument("model checking needs 0/1 node labels");
  }

  bool holds(const Formula& f, NodeId v) {
    if (v >= g_.size()) throw InvalidArgument("node out of range");
    if (f.proposition_span() > g_.dimension())
      throw InvalidArgument("formula uses a proposition beyond the label dimension");
    return eval(f, v);
  }

  /// |S| = number of embeddings f of T at v with f(i) ⊨ args[i] for all i.
  std::size_t count_satisfying(const Template& t, NodeId v,
                               const std::vector<Formula>& args) {
    if (args.size() != t.arity()) throw InvalidArgument("argument count mismatch");
    std::size_t n = 0;
    for (const auto& f : embeddings(t, v)) {
      bool ok = true;
      for (std::size_t i = 0; i < args.size() && ok; ++i) ok = eval(args[i], f[i + 1]);
      n += ok;
    }
    return n;
  }

  const std::vector<Embedding>& embeddings(const Template& t, NodeId v) {
    auto& per_node = embedding_cache_[&t];
    if (per_node.empty()) {
      EmbeddingMatcher matcher(t);
      per_node.reserve(g_.size());
      for (NodeId w = 0; w < g_.size(); ++w) per_node.push_back(matcher.enumerate(g_, w));
    }
    return per_node[v];
  }

  const LabelledGraph& graph() const noexcept { return g_; }

 private:
  bool eval(const Formula& f, NodeId v) {
    auto& slot = memo_[f.identity()];
    if (slot.empty()) {
      slot.assign(g_.size(), -1);
      keep_alive_.push_back(f);
    }
    if (slot[v] >= 0) return slot[v] != 0;
    bool value = false;
    switch (f.kind()) {
      case FormulaKind::proposition:
        value = g_.label(v)[f.prop_index()] == 1.0;
        break;
      case FormulaKind::negation:
        value = !eval(f.operand(), v);
        break;
      case FormulaKind::conjunction:
        value = eval(f.left(), v) && eval(f.right(), v);
        break;
      case FormulaKind::diamond:
        value = count_satisfying(*f.templ(), v, f.args()) >= f.threshold();
        break;
    }
    // The reference may have been invalidated by recursive insertions.
    memo_[f.identity()][v] = value ? 1 : 0;
    return value;
  }

  const LabelledGraph& g_;
  std::unordered_map<const void*, std::vector<std::int8_t>> memo_;
  // Keeps memoised nodes alive so their addresses are not reused.
  std::vector<Formula> keep_alive_;
  std::map<const Template*, std::vector<std::vector<Embedding>>> embedding_cache_;
};

/// (G, v) ⊨ φ
inline bool eval(const Formula& f, const LabelledGraph& g, NodeId v) {
  return ModelChecker(g).holds(f, v);
}

/// Truth value at every node.
inline std::vector<bool> eval_all(const Formula& f, const LabelledGraph& g) {
  ModelChecker mc(g);
  std::vector<bool> out(g.size());
  for (NodeId v = 0; v < g.size(); ++v) out[v] = mc.holds(f, v);
  return out;
}

}  // namespace tgnn
