// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tgnn/bisim.hpp"
#include "tgnn/errors.hpp"
#include "tgnn/formula.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/modelcheck.hpp"
#include "tgnn/template.hpp"
#include "tgnn/twl.hpp"

namespace tgnn {

namespace detail {

inline void require_propositional(const LabelledGraph& g) {
  if (g.dimension() == 0)
    throw InvalidArgument("characteristic formulae need at least one proposition");
  if (!has_boolean_labels(g))
    throw InvalidArgument("characteristic formulae need 0/1 node labels");
}

// p_i for every set bit, ¬p_i for every clear bit, in index order.
inline Formula literal_conjunction(const Label& label) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < label.size(); ++i)
    parts.push_back(label[i] == 1.0 ? Formula::prop(i)
                                    : Formula::negation(Formula::prop(i)));
  return conjunction_of(parts);
}

inline void sort_unique(std::vector<Formula>& fs) {
  std::sort(fs.begin(), fs.end(),
            [](const Formula& a, const Formula& b) { return compare(a, b) < 0; });
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
}

}  // namespace detail

/// χ^l for the nodes of one graph, memoised per (level, node).
///
/// Level l conjoins χ^{l-1}(v) with, per template, one <T>=k>(χ^{l-1} of the
/// image nodes) per embedding (k = number of embeddings whose images satisfy
/// those same arguments; syntactic duplicates dropped) and the total-count
/// cap !<T>=|emb|+1>(⊤, ..., ⊤).
class UnboundedCharacteristic {
 public:
  UnboundedCharacteristic(const LabelledGraph& g, std::vector<TemplatePtr> templates)
      : g_(g), templates_(std::move(templates)), checker_(g) {
    detail::require_propositional(g);
  }

  Formula formula(NodeId v, std::size_t level) {
    if (v >= g_.size()) throw InvalidArgument("node out of range");
    while (memo_.size() <= level) memo_.emplace_back(g_.size());
    if (auto& slot = memo_[level][v]) return *slot;
    Formula out = level == 0 ? detail::literal_conjunction(g_.label(v)) : build(v, level);
    memo_[level][v] = out;
    return out;
  }

 private:
  Formula build(NodeId v, std::size_t level) {
    std::vector<Formula> parts{formula(v, level - 1)};
    for (const auto& t : templates_) {
      std::vector<Formula> positives;
      for (const auto& f : checker_.embeddings(*t, v)) {
        std::vector<Formula> args;
        for (std::size_t i = 1; i < f.size(); ++i) args.push_back(formula(f[i], level - 1));
        std::size_t k = checker_.count_satisfying(*t, v, args);
        positives.push_back(Formula::diamond(t, k, std::move(args)));
      }
      detail::sort_unique(positives);
      parts.insert(parts.end(), positives.begin(), positives.end());
      std::vector<Formula> tops(t->arity(), verum());
      std::size_t total = checker_.embeddings(*t, v).size();
      parts.push_back(Formula::negation(Formula::diamond(t, total + 1, std::move(tops))));
    }
    return conjunction_of(parts);
  }

  const LabelledGraph& g_;
  std::vector<TemplatePtr> templates_;
  ModelChecker checker_;
  std::vector<std::vector<std::optional<Formula>>> memo_;
};

inline Formula char_formula_unbounded(const LabelledGraph& g, NodeId v,
                                      std::size_t level,
                                      const std::vector<TemplatePtr>& templates) {
  return UnboundedCharacteristic(g, templates).formula(v, level);
}

/// χ^{l,c} relative to a finite corpus of pointed graphs.
///
/// The corpus is closed under "every node of a member graph": the negative
/// conjuncts range over representatives of the ~^{l-1,c} classes of this
/// closed corpus, which must contain every class an embedding of a member
/// graph can land in. Representatives are first members, with the given
/// corpus members ordered before the added nodes.
class BoundedCharacteristic {
 public:
  BoundedCharacteristic(const std::vector<PointedGraph>& corpus,
                        std::vector<TemplatePtr> templates, std::size_t bound)
      : templates_(std::move(templates)), bound_(bound) {
    if (corpus.empty()) throw InvalidArgument("corpus must not be empty");
    if (bound_ == 0) throw InvalidArgument("counting bound must be >= 1");
    TwlConfig{templates_, 0, bound_}.validate();
    for (const auto& pg : corpus) {
      detail::require_propositional(pg.graph);
      std::size_t gi = intern_graph(pg.graph);
      members_.push_back(closed_index(gi, pg.point));
    }
    for (std::size_t gi = 0; gi < graphs_.size(); ++gi)
      for (NodeId v = 0; v < graphs_[gi]->size(); ++v) closed_index(gi, v);
    for (const auto& g : graphs_)
      if (g->dimension() != graphs_.front()->dimension())
        throw InvalidArgument("corpus graphs must share the label dimension");
    std::vector<const LabelledGraph*> ptrs;
    for (const auto& g : graphs_) ptrs.push_back(g.get());
    refiner_ = std::make_unique<TwlRefiner>(ptrs, templates_, bound_);
    for (const auto& g : graphs_) checkers_.push_back(std::make_unique<ModelChecker>(*g));
  }

  std::size_t corpus_size() const noexcept { return members_.size(); }

  /// χ^{l,c} of corpus member `index`.
  Formula formula(std::size_t index, std::size_t level) {
    const auto& e = entries_.at(members_.at(index));
    return formula_at(e.graph, e.node, level);
  }

  /// χ^{l,c} of `subject`, which must be a corpus member.
  Formula formula(const PointedGraph& subject, std::size_t level) {
    return formula(find(subject), level);
  }

  /// Corpus index of `subject`. Throws NotFound.
  std::size_t find(const PointedGraph& subject) const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& e = entries_[members_[i]];
      if (e.node == subject.point && *graphs_[e.graph] == subject.graph) return i;
    }
    throw NotFound("pointed graph is not part of the corpus");
  }

  /// ~^{level,c} classes of the corpus members, as corpus indices; every
  /// class lists its members ascending.
  std::vector<std::vector<std::size_t>> member_classes(std::size_t level) {
    std::map<std::size_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      std::size_t c = color(members_[i], level);
      auto [it, fresh] = slot.emplace(c, out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(i);
    }
    return out;
  }

 private:
  struct Entry {
    std::size_t graph;
    NodeId node;
  };

  std::size_t intern_graph(const LabelledGraph& g) {
    for (std::size_t i = 0; i < graphs_.size(); ++i)
      if (*graphs_[i] == g) return i;
    graphs_.push_back(std::make_shared<const LabelledGraph>(g));
    index_.emplace_back(g.size(), SIZE_MAX);
    return graphs_.size() - 1;
  }

  std::size_t closed_index(std::size_t gi, NodeId v) {
    auto& slot = index_[gi][v];
    if (slot == SIZE_MAX) {
      slot = entries_.size();
      entries_.push_back({gi, v});
    }
    return slot;
  }

  std::size_t color(std::size_t entry, std::size_t level) {
    while (refiner_->coloring().rounds() <= level) refiner_->step();
    const auto& e = entries_[entry];
    return refiner_->coloring().color(level, e.graph, e.node);
  }

  // Closed-corpus entries that represent the ~^{level,c} classes.
  const std::vector<std::size_t>& representatives(std::size_t level) {
    while (reps_.size() <= level) reps_.emplace_back();
    auto& reps = reps_[level];
    if (!reps) {
      std::set<std::size_t> seen;
      reps.emplace();
      for (std::size_t i = 0; i < entries_.size(); ++i)
        if (seen.insert(color(i, level)).second) reps->push_back(i);
    }
    return *reps;
  }

  Formula formula_at(std::size_t gi, NodeId v, std::size_t level) {
    while (memo_.size() <= level) memo_.emplace_back(entries_.size());
    const std::size_t e = index_[gi][v];
    if (auto& slot = memo_[level][e]) return *slot;
    Formula out = level == 0 ? detail::literal_conjunction(graphs_[gi]->label(v))
                             : build(gi, v, level);
    memo_[level][e] = out;
    return out;
  }

  Formula build(std::size_t gi, NodeId v, std::size_t level) {
    ModelChecker& mc = *checkers_[gi];
    std::vector<Formula> parts{formula_at(gi, v, level - 1)};
    const std::vector<std::size_t> reps = representatives(level - 1);
    std::vector<Formula> rep_formulae;
    for (std::size_t r : reps)
      rep_formulae.push_back(formula_at(entries_[r].graph, entries_[r].node, level - 1));

    for (const auto& t : templates_) {
      std::vector<Formula> positives;
      for (const auto& f : mc.embeddings(*t, v)) {
        std::vector<Formula> args;
        for (std::size_t i = 1; i < f.size(); ++i)
          args.push_back(formula_at(gi, f[i], level - 1));
        std::size_t k = std::min(bound_, mc.count_satisfying(*t, v, args));
        positives.push_back(Formula::diamond(t, k, std::move(args)));
      }
      detail::sort_unique(positives);
      parts.insert(parts.end(), positives.begin(), positives.end());

      // Every n-tuple of class representatives whose count stays below c.
      std::vector<Formula> negatives;
      const std::size_t n = t->arity();
      std::vector<std::size_t> tuple(n, 0);
      while (true) {
        std::vector<Formula> psi;
        for (std::size_t i = 0; i < n; ++i) psi.push_back(rep_formulae[tuple[i]]);
        std::size_t s = mc.count_satisfying(*t, v, psi);
        if (s + 1 <= bound_)
          negatives.push_back(Formula::negation(Formula::diamond(t, s + 1, std::move(psi))));
        std::size_t i = n;
        while (i > 0 && ++tuple[i - 1] == rep_formulae.size()) tuple[--i] = 0;
        if (i == 0) break;
      }
      detail::sort_unique(negatives);
      parts.insert(parts.end(), negatives.begin(), negatives.end());
    }
    return conjunction_of(parts);
  }

  std::vector<TemplatePtr> templates_;
  std::size_t bound_;
  std::vector<std::shared_ptr<const LabelledGraph>> graphs_;
  std::vector<std::vector<std::size_t>> index_;  // [graph][node] -> entry
  std::vector<Entry> entries_;                   // closed corpus
  std::vector<std::size_t> members_;             // corpus index -> entry
  std::unique_ptr<TwlRefiner> refiner_;
  std::vector<std::unique_ptr<ModelChecker>> checkers_;
  std::vector<std::optional<std::vector<std::size_t>>> reps_;
  std::vector<std::vector<std::optional<Formula>>> memo_;
};

inline Formula char_formula_bounded(const PointedGraph& subject, std::size_t level,
                                    std::size_t bound,
                                    const std::vector<TemplatePtr>& templates,
                                    const std::vector<PointedGraph>& corpus) {
  BoundedCharacteristic builder(corpus, templates, bound);
  return builder.formula(subject, level);
}

/// Disjunction of χ^{l,c} over the classes of `target` (corpus indices).
/// `target` must be a union of ~^{l,c} classes of the corpus; the empty
/// target gives p0 & !p0.
inline Formula class_defining_formula(const std::vector<std::size_t>& target,
                                      const std::vector<PointedGraph>& corpus,
                                      std::size_t level, std::size_t bound,
                                      const std::vector<TemplatePtr>& templates) {
  BoundedCharacteristic builder(corpus, templates, bound);
  std::vector<char> in_target(corpus.size(), 0);
  for (std::size_t i : target) in_target.at(i) = 1;
  std::vector<Formula> parts;
  for (const auto& cls : builder.member_classes(level)) {
    const bool first = in_target[cls.front()] != 0;
    for (std::size_t i : cls)
      if ((in_target[i] != 0) != first)
        throw InvalidArgument("target is not closed under bisimilarity");
    if (first) parts.push_back(builder.formula(cls.front(), level));
  }
  return disjunction_of(parts);
}

}  // namespace tgnn
