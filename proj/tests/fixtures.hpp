// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

// Random models shared by the unit tests and the acceptance binary.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tgnn/adapters.hpp"
#include "tgnn/generators.hpp"
#include "tgnn/gnn.hpp"

namespace fixture {

using tgnn::Rng;

/// k/4 for k in [-8, 8]: products and sums of a few such values are exact.
inline double dyadic(Rng& rng) {
  return (static_cast<double>(tgnn::uniform_index(rng, 17)) - 8.0) / 4.0;
}

inline tgnn::Matrix dyadic_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  tgnn::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dyadic(rng);
  return m;
}

inline std::vector<double> dyadic_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = dyadic(rng);
  return v;
}

inline tgnn::Activation random_activation(Rng& rng) {
  constexpr tgnn::Activation acts[] = {tgnn::Activation::identity, tgnn::Activation::relu,
                                       tgnn::Activation::truncated_relu};
  return acts[tgnn::uniform_index(rng, 3)];
}

/// A template GNN over `templates` with 1..max_d components and 1..max_layers
/// layers. With `bound` set every slot reduces by bounded_sum(bound);
/// otherwise outer aggregators are drawn from sum, mean and max.
inline tgnn::GnnModel random_model(Rng& rng, const std::vector<tgnn::TemplatePtr>& templates,
                                   std::size_t input_dimension, std::size_t max_d,
                                   std::size_t max_layers, tgnn::CountBound bound) {
  using namespace tgnn;
  GnnModel m;
  m.dimension = 1 + uniform_index(rng, max_d);
  const std::size_t d = m.dimension;
  m.input_dimension = input_dimension;
  m.input_map.resize(d);
  for (auto& s : m.input_map)
    if (bernoulli(rng, 0.8)) s = uniform_index(rng, input_dimension);
  const std::size_t layers = 1 + uniform_index(rng, max_layers);
  for (std::size_t l = 0; l < layers; ++l) {
    GnnLayer layer;
    std::size_t width = 0;
    const std::size_t slots = 1 + uniform_index(rng, 2);
    for (std::size_t j = 0; j < slots; ++j) {
      Slot s;
      s.tmpl = templates[uniform_index(rng, templates.size())];
      const std::size_t n = s.tmpl->arity();
      switch (uniform_index(rng, 3)) {
        case 0:
          s.template_agg = ProjectAggregator{1 + uniform_index(rng, n), {}};
          break;
        case 1: {
          AndGateAggregator gate;
          for (std::size_t i = 0; i < n; ++i) gate.features.push_back(uniform_index(rng, d));
          s.template_agg = gate;
          break;
        }
        default: {
          const std::size_t out = 1 + uniform_index(rng, 2);
          s.template_agg = AffineAggregator{dyadic_matrix(rng, s.tmpl->size * d, out),
                                            dyadic_vector(rng, out), random_activation(rng)};
          break;
        }
      }
      if (bound) {
        s.outer_agg = OuterAggregator::bounded_sum(*bound);
      } else {
        constexpr OuterKind kinds[] = {OuterKind::sum, OuterKind::mean, OuterKind::max};
        s.outer_agg = OuterAggregator{kinds[uniform_index(rng, 3)], 0};
      }
      width += output_width(s.template_agg, d);
      layer.slots.push_back(std::move(s));
    }
    layer.C = dyadic_matrix(rng, d, d);
    layer.A = dyadic_matrix(rng, width, d);
    layer.b = dyadic_vector(rng, d);
    layer.activation = random_activation(rng);
    m.layers.push_back(std::move(layer));
  }
  m.cls = Classifier{uniform_index(rng, d), 0.5};
  return m;
}

/// Sum-aggregating AC-GNN with dyadic weights.
inline tgnn::AcGnn random_ac_gnn(Rng& rng, std::size_t d, std::size_t layers, bool plus) {
  tgnn::AcGnn ac;
  ac.dimension = d;
  for (std::size_t l = 0; l < layers; ++l) {
    tgnn::AcLayer layer;
    layer.C = dyadic_matrix(rng, d, d);
    layer.A = dyadic_matrix(rng, d, d);
    if (plus) layer.A_non = dyadic_matrix(rng, d, d);
    layer.b = dyadic_vector(rng, d);
    layer.activation = random_activation(rng);
    ac.layers.push_back(std::move(layer));
  }
  return ac;
}

/// Small non-negative integer labels of width d.
inline tgnn::LabelledGraph integer_labelled_graph(Rng& rng, std::size_t n, double p, std::size_t d) {
  auto g = tgnn::random_graph(n, p, 1, rng);
  std::vector<tgnn::Label> labels(n, tgnn::Label(d));
  for (auto& l : labels)
    for (auto& x : l) x = static_cast<double>(tgnn::uniform_index(rng, 4));
  return tgnn::LabelledGraph(std::move(labels), g.edges());
}

}  // namespace fixture
