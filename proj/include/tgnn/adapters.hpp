// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/gnn.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

/// One aggregate-combine layer:
///   λ'(v) = act(λ(v) C + agg{λ(u) : u ∈ N(v)} A + agg{λ(u) : u ∉ N(v), u ≠ v} A_non + b)
/// where N(v) are the successors of v. The A_non term is only used by the
/// AC+ reading and must be empty otherwise.
struct AcLayer {
  std::string aggregate = "sum";
  Matrix C;
  Matrix A;
  Matrix A_non;
  std::vector<double> b;
  Activation activation = Activation::identity;
};

struct AcGnn {
  std::size_t dimension = 0;
  std::vector<AcLayer> layers;
  Classifier cls;
};

namespace detail {

inline GnnModel adapt_ac(const AcGnn& ac, bool plus) {
  const std::size_t d = ac.dimension;
  const TemplatePtr t1 = std::make_shared<const Template>(edge_template());
  const TemplatePtr t2 = std::make_shared<const Template>(non_edge_template());
  GnnModel m;
  m.dimension = d;
  m.input_dimension = d;
  m.cls = ac.cls;
  for (const auto& l : ac.layers) {
    const OuterAggregator agg = parse_outer_aggregator(l.aggregate);
    if (l.C.rows() != d || l.C.cols() != d || l.A.rows() != d || l.A.cols() != d ||
        l.b.size() != d)
      throw InvalidArgument("AC layer shapes do not match dimension " + std::to_string(d));
    GnnLayer g;
    g.activation = l.activation;
    g.C = l.C;
    g.b = l.b;
    g.slots.push_back(Slot{t1, ProjectAggregator{1, {}}, agg});
    if (plus) {
      if (l.A_non.rows() != d || l.A_non.cols() != d)
        throw InvalidArgument("AC+ layer needs a d x d non-neighbour matrix");
      g.slots.push_back(Slot{t2, ProjectAggregator{1, {}}, agg});
      g.A = Matrix(2 * d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          g.A(r, c) = l.A(r, c);
          g.A(d + r, c) = l.A_non(r, c);
        }
    } else {
      if (l.A_non.rows() != 0) throw InvalidArgument("non-neighbour matrix needs the AC+ adapter");
      g.A = l.A;
    }
    m.layers.push_back(std::move(g));
  }
  return m;
}

}  // namespace detail

/// Template GNN over {T1} with project(1) template aggregators; its forward
/// pass coincides with the AC-GNN's.
inline GnnModel ac_gnn_adapter(const AcGnn& ac) { return detail::adapt_ac(ac, false); }

/// Template GNN over {T1, T2}; T2 supplies the non-neighbour multiset.
inline GnnModel ac_plus_adapter(const AcGnn& ac) { return detail::adapt_ac(ac, true); }

}  // namespace tgnn
