// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/formula.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

using Rng = std::mt19937_64;

// The standard distributions are implementation defined, so draws are made
// directly from the engine to keep seeded output identical across toolchains.

/// Uniform in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

/// Uniform in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 with all-zero labels.
inline LabelledGraph cycle_graph(std::size_t n, std::size_t dimension = 1) {
  if (n == 0) throw InvalidArgument("cycle needs at least one node");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return LabelledGraph(std::vector<Label>(n, Label(dimension, 0.0)), std::move(edges));
}

/// Centre 0 with an edge to each of the leaves 1..leaves. Labels default to
/// all-zero vectors of length 1.
inline LabelledGraph star_graph(std::size_t leaves, std::vector<Label> labels = {}) {
  if (labels.empty()) labels.assign(leaves + 1, Label(1, 0.0));
  if (labels.size() != leaves + 1) throw InvalidArgument("star needs one label per node");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return LabelledGraph(std::move(labels), std::move(edges));
}

/// Directed G(n, p) without self-loops; each of the `propositions` label
/// bits is an independent fair coin.
inline LabelledGraph random_graph(std::size_t n, double p, std::size_t propositions, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("edge probability must lie in [0, 1]");
  std::vector<Label> labels(n, Label(propositions, 0.0));
  for (auto& l : labels)
    for (auto& x : l) x = bernoulli(rng, 0.5) ? 1.0 : 0.0;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && bernoulli(rng, p)) edges.emplace_back(u, v);
  return LabelledGraph(std::move(labels), std::move(edges));
}

struct RandomFormulaOptions {
  std::size_t propositions = 3;
  std::size_t max_modal_depth = 3;
  std::size_t max_syntactic_depth = 4;
  std::size_t max_bound = 3;
  std::vector<TemplatePtr> templates;
};

/// A formula within the depth and bound limits of `opts`. Leaves are
/// propositions; inner nodes are !, & or a diamond over a random template.
inline Formula random_formula(Rng& rng, const RandomFormulaOptions& opts) {
  if (opts.propositions == 0) throw InvalidArgument("need at least one proposition");
  if (opts.max_bound == 0) throw InvalidArgument("max_bound must be >= 1");
  auto gen = [&](auto&& self, std::size_t sd, std::size_t md) -> Formula {
    const bool modal_ok = md > 0 && !opts.templates.empty();
    const std::size_t choice = sd == 0 ? 0 : uniform_index(rng, modal_ok ? 5 : 4);
    switch (choice) {
      case 0:
        return Formula::prop(uniform_index(rng, opts.propositions));
      case 1:
        return Formula::negation(self(self, sd - 1, md));
      case 2: {
        Formula a = self(self, sd - 1, md);
        return Formula::conjunction(std::move(a), self(self, sd - 1, md));
      }
      case 3:
        if (!modal_ok) return Formula::negation(self(self, sd - 1, md));
        [[fallthrough]];
      default: {
        TemplatePtr t = opts.templates[uniform_index(rng, opts.templates.size())];
        const std::size_t threshold = 1 + uniform_index(rng, opts.max_bound);
        std::vector<Formula> args;
        for (std::size_t i = 0; i < t->arity(); ++i) args.push_back(self(self, sd - 1, md - 1));
        return Formula::diamond(std::move(t), threshold, std::move(args));
      }
    }
  };
  return gen(gen, opts.max_syntactic_depth, opts.max_modal_depth);
}

}  // namespace tgnn
