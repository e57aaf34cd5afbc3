// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/formula.hpp"
#include "tgnn/gnn.hpp"

namespace tgnn {

/// Builds a bounded template GNN whose classification coincides with φ.
///
/// Component k tracks the k-th subformula of subformulae(φ), so φ is the
/// last component. Every layer is the same truncated-ReLU layer; component
/// k holds the truth value of φ_k from layer sd(φ_k) on. Modal subformula
/// <T>=c>(ψ1..ψn) owns one slot: an and_gate over the argument components
/// feeding bounded_sum(cb(φ)), then b_k = 1 - c.
///
/// `num_propositions` is the label dimension of the graphs the model will
/// run on; every proposition of φ must be below it.
inline GnnModel compile_formula(const Formula& phi, std::size_t num_propositions) {
  if (phi.proposition_span() > num_propositions)
    throw InvalidArgument("formula uses proposition " +
                          std::to_string(phi.proposition_span() - 1) + " outside the " +
                          std::to_string(num_propositions) + " available");
  const std::vector<Formula> sub = subformulae(phi);
  const std::size_t d = sub.size();
  auto index_of = [&](const Formula& f) {
    for (std::size_t k = 0; k < d; ++k)
      if (sub[k].identity() == f.identity()) return k;
    for (std::size_t k = 0; k < d; ++k)
      if (sub[k] == f) return k;
    throw InvalidArgument("subformula not found");
  };

  GnnModel model;
  model.dimension = d;
  model.input_dimension = num_propositions;
  model.input_map.assign(d, std::nullopt);
  model.cls = Classifier{d - 1, 0.5};

  const std::size_t c_max = std::max<std::size_t>(1, phi.counting_bound());
  GnnLayer layer;
  layer.activation = Activation::truncated_relu;
  layer.C = Matrix(d, d);
  layer.b.assign(d, 0.0);
  std::vector<std::size_t> modal;  // slot j -> component
  for (std::size_t k = 0; k < d; ++k)
    if (sub[k].kind() == FormulaKind::diamond) modal.push_back(k);
  layer.A = Matrix(modal.size(), d);

  for (std::size_t k = 0; k < d; ++k) {
    const Formula& f = sub[k];
    switch (f.kind()) {
      case FormulaKind::proposition:
        model.input_map[k] = f.prop_index();
        layer.C(k, k) = 1.0;
        break;
      case FormulaKind::negation:
        layer.C(index_of(f.operand()), k) -= 1.0;
        layer.b[k] = 1.0;
        break;
      case FormulaKind::conjunction:
        // += so that φ & φ counts its operand twice.
        layer.C(index_of(f.left()), k) += 1.0;
        layer.C(index_of(f.right()), k) += 1.0;
        layer.b[k] = -1.0;
        break;
      case FormulaKind::diamond: {
        const std::size_t j =
            static_cast<std::size_t>(std::find(modal.begin(), modal.end(), k) - modal.begin());
        AndGateAggregator gate;
        for (const auto& a : f.args()) gate.features.push_back(index_of(a));
        layer.slots.push_back(
            Slot{f.templ(), std::move(gate), OuterAggregator::bounded_sum(c_max)});
        layer.A(j, k) = 1.0;
        layer.b[k] = 1.0 - static_cast<double>(f.threshold());
        break;
      }
    }
  }

  model.layers.assign(phi.syntactic_depth(), layer);
  return model;
}

}  // namespace tgnn
