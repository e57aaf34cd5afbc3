// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tgnn/embedding.hpp"
#include "tgnn/errors.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/multiset.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw InvalidArgument("ragged matrix rows");
      std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * m.cols_);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<std::vector<double>> to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      out[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Activation { identity, relu, truncated_relu, sigmoid, tanh };

inline double activate(Activation a, double x) {
  switch (a) {
    case Activation::identity: return x;
    case Activation::relu: return std::max(0.0, x);
    case Activation::truncated_relu: return std::min(std::max(0.0, x), 1.0);
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::tanh: return std::tanh(x);
  }
  return x;
}

inline std::string to_string(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::relu: return "relu";
    case Activation::truncated_relu: return "truncated_relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh: return "tanh";
  }
  return "identity";
}

inline Activation parse_activation(const std::string& name) {
  for (auto a : {Activation::identity, Activation::relu, Activation::truncated_relu,
                 Activation::sigmoid, Activation::tanh})
    if (to_string(a) == name) return a;
  throw InvalidArgument("unknown activation '" + name + "'");
}

// Template aggregators map one labelled template (T, λ∘f) to a vector.

/// Features of one template vertex; all features when `features` is empty.
struct ProjectAggregator {
  std::size_t vertex = 1;
  std::vector<std::size_t> features;
};

/// σ(Σ_i λ(f(i))[features[i-1]] - n + 1) over the n non-root vertices, with
/// σ the truncated ReLU: 1 iff every selected feature is 1 (on 0/1 inputs).
struct AndGateAggregator {
  std::vector<std::size_t> features;
};

/// act(x W + bias) where x concatenates λ(f(0)), ..., λ(f(n)).
struct AffineAggregator {
  Matrix weights;  // (size * d) x out
  std::vector<double> bias;
  Activation activation = Activation::identity;
};

using TemplateAggregator = std::variant<ProjectAggregator, AndGateAggregator, AffineAggregator>;

enum class OuterKind { sum, mean, max, bounded_sum };

/// Multiset-to-vector aggregator. `bound` is used by bounded_sum only.
struct OuterAggregator {
  OuterKind kind = OuterKind::sum;
  std::size_t bound = 0;

  static OuterAggregator sum() { return {OuterKind::sum, 0}; }
  static OuterAggregator mean() { return {OuterKind::mean, 0}; }
  static OuterAggregator max() { return {OuterKind::max, 0}; }
  static OuterAggregator bounded_sum(std::size_t c) {
    if (c == 0) throw InvalidArgument("bounded_sum needs c >= 1");
    return {OuterKind::bounded_sum, c};
  }

  friend bool operator==(const OuterAggregator&, const OuterAggregator&) = default;
};

inline std::string to_string(const OuterAggregator& a) {
  switch (a.kind) {
    case OuterKind::sum: return "sum";
    case OuterKind::mean: return "mean";
    case OuterKind::max: return "max";
    case OuterKind::bounded_sum: return "bounded_sum(" + std::to_string(a.bound) + ")";
  }
  return "sum";
}

/// Accepts "sum", "mean", "max" and "bounded_sum(c)".
inline OuterAggregator parse_outer_aggregator(const std::string& name) {
  if (name == "sum") return OuterAggregator::sum();
  if (name == "mean") return OuterAggregator::mean();
  if (name == "max") return OuterAggregator::max();
  const std::string prefix = "bounded_sum(";
  if (name.starts_with(prefix) && name.size() > prefix.size() + 1 && name.back() == ')') {
    std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
      return OuterAggregator::bounded_sum(std::stoul(digits));
  }
  throw InvalidArgument("unsupported aggregator '" + name + "'");
}

using LabelMultiset = Multiset<Label, BitwiseLess>;

/// Reduces a multiset of equally sized vectors. Elements are visited in
/// sorted order, so equal multisets give bit-identical results regardless
/// of how they were assembled. The empty multiset aggregates to zeros.
inline Label aggregate(const OuterAggregator& agg, const LabelMultiset& values,
                       std::size_t width) {
  Label out(width, 0.0);
  if (values.empty()) return out;
  const LabelMultiset& src =
      agg.kind == OuterKind::bounded_sum ? values.restricted(agg.bound) : values;
  switch (agg.kind) {
    case OuterKind::sum:
    case OuterKind::bounded_sum:
    case OuterKind::mean:
      for (const auto& [value, m] : src)
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t i = 0; i < width; ++i) out[i] += value[i];
      if (agg.kind == OuterKind::mean)
        for (auto& x : out) x /= static_cast<double>(src.size());
      break;
    case OuterKind::max: {
      bool first = true;
      for (const auto& [value, m] : src) {
        for (std::size_t i = 0; i < width; ++i)
          out[i] = first ? value[i] : std::max(out[i], value[i]);
        first = false;
      }
      break;
    }
  }
  return out;
}

struct Slot {
  TemplatePtr tmpl;
  TemplateAggregator template_agg;
  OuterAggregator outer_agg;
};

/// λ'(v) = act(λ(v) C + z A + b), z the concatenated slot aggregates.
struct GnnLayer {
  std::vector<Slot> slots;
  Matrix C;  // d x d
  Matrix A;  // (total slot width) x d
  std::vector<double> b;
  Activation activation = Activation::identity;
};

/// Class 1 iff λ^L(v)[component] >= threshold.
struct Classifier {
  std::size_t component = 0;
  double threshold = 0.5;
};

/// A layered n-ary template GNN.
///
/// Layer-0 features are read from the input labels through `input_map`:
/// component k takes input feature input_map[k], or 0 when unset. An empty
/// map is the identity and requires input_dimension == dimension.
struct GnnModel {
  std::size_t dimension = 0;
  std::size_t input_dimension = 0;
  std::vector<std::optional<std::size_t>> input_map;
  std::vector<GnnLayer> layers;
  Classifier cls;

  /// c if every outer aggregator is a bounded sum with bound <= c (the
  /// smallest such c); nullopt otherwise. A model without slots is
  /// 1-bounded.
  CountBound counting_bound() const {
    std::size_t c = 1;
    for (const auto& layer : layers)
      for (const auto& s : layer.slots) {
        if (s.outer_agg.kind != OuterKind::bounded_sum) return std::nullopt;
        c = std::max(c, s.outer_agg.bound);
      }
    return c;
  }
};

/// Output width of a template aggregator for feature dimension d.
inline std::size_t output_width(const TemplateAggregator& agg, std::size_t d) {
  return std::visit(
      [d](const auto& a) -> std::size_t {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, ProjectAggregator>)
          return a.features.empty() ? d : a.features.size();
        else if constexpr (std::is_same_v<A, AndGateAggregator>)
          return 1;
        else
          return a.weights.cols();
      },
      agg);
}

struct ModelDiagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> notices;  // informational, not fatal
};

/// Shape and reference checks. A notice is emitted for template aggregators
/// that may not be invariant under the template's automorphisms.
inline ModelDiagnostics validate_model(const GnnModel& m) {
  ModelDiagnostics out;
  auto err = [&](std::string s) { out.errors.push_back(std::move(s)); };
  const std::size_t d = m.dimension;
  if (m.input_map.empty()) {
    if (m.input_dimension != d) err("identity input map needs input_dimension == dimension");
  } else {
    if (m.input_map.size() != d) err("input map must have one entry per component");
    for (const auto& s : m.input_map)
      if (s && *s >= m.input_dimension) err("input map entry out of range");
  }
  if (!m.layers.empty() || d > 0)
    if (m.cls.component >= d) err("classifier component out of range");
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const auto& layer = m.layers[l];
    const std::string where = "layer " + std::to_string(l + 1) + ": ";
    std::size_t width = 0;
    for (std::size_t j = 0; j < layer.slots.size(); ++j) {
      const auto& s = layer.slots[j];
      const std::string at = where + "slot " + std::to_string(j + 1) + ": ";
      if (!s.tmpl) {
        err(at + "missing template");
        continue;
      }
      for (const auto& v : validate_template(*s.tmpl)) err(at + v);
      if (s.outer_agg.kind == OuterKind::bounded_sum && s.outer_agg.bound == 0)
        err(at + "bounded_sum needs c >= 1");
      const std::size_t n = s.tmpl->arity();
      const auto autos = template_automorphisms(*s.tmpl);
      std::visit(
          [&](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, ProjectAggregator>) {
              if (a.vertex >= s.tmpl->size) err(at + "projected vertex out of range");
              for (auto f : a.features)
                if (f >= d) err(at + "projected feature out of range");
              for (const auto& p : autos)
                if (a.vertex < p.size() && p[a.vertex] != a.vertex) {
                  out.notices.push_back(at + "projection is not automorphism invariant");
                  break;
                }
            } else if constexpr (std::is_same_v<A, AndGateAggregator>) {
              if (a.features.size() != n) err(at + "and_gate needs one feature per non-root vertex");
              for (auto f : a.features)
                if (f >= d) err(at + "and_gate feature out of range");
              if (a.features.size() == n)
                for (const auto& p : autos) {
                  bool moved = false;
                  for (std::size_t u = 1; u <= n; ++u)
                    moved |= a.features[p[u] - 1] != a.features[u - 1];
                  if (moved) {
                    out.notices.push_back(at + "and_gate is not automorphism invariant");
                    break;
                  }
                }
            } else {
              if (a.weights.rows() != s.tmpl->size * d) err(at + "affine weights need size*d rows");
              if (a.bias.size() != a.weights.cols()) err(at + "affine bias length mismatch");
              if (autos.size() > 1)
                out.notices.push_back(at + "affine aggregator on a template with automorphisms");
            }
          },
          s.template_agg);
      width += output_width(s.template_agg, d);
    }
    if (layer.C.rows() != d || layer.C.cols() != d) err(where + "C must be d x d");
    if (layer.A.rows() != width || layer.A.cols() != d)
      err(where + "A must be (slot width " + std::to_string(width) + ") x d");
    if (layer.b.size() != d) err(where + "b must have length d");
  }
  return out;
}

inline Label apply_template_aggregator(const TemplateAggregator& agg,
                                       const Embedding& f,
                                       const std::vector<Label>& features) {
  return std::visit(
      [&](const auto& a) -> Label {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, ProjectAggregator>) {
          const Label& src = features[f[a.vertex]];
          if (a.features.empty()) return src;
          Label out;
          for (auto i : a.features) out.push_back(src[i]);
          return out;
        } else if constexpr (std::is_same_v<A, AndGateAggregator>) {
          double s = 0.0;
          for (std::size_t i = 0; i < a.features.size(); ++i) s += features[f[i + 1]][a.features[i]];
          s = s - static_cast<double>(a.features.size()) + 1.0;
          return {activate(Activation::truncated_relu, s)};
        } else {
          Label out(a.weights.cols(), 0.0);
          const std::size_t d = features.empty() ? 0 : features.front().size();
          for (std::size_t c = 0; c < out.size(); ++c) {
            double acc = 0.0;
            for (std::size_t u = 0; u < f.size(); ++u)
              for (std::size_t k = 0; k < d; ++k) acc += features[f[u]][k] * a.weights(u * d + k, c);
            out[c] = activate(a.activation, acc + a.bias[c]);
          }
          return out;
        }
      },
      agg);
}

struct GnnOutput {
  std::vector<std::vector<Label>> features;  // [layer 0..L][node]
  std::vector<int> classes;                  // per node, 0 or 1
};

/// Forward pass over all nodes. Per layer and slot, the template aggregator
/// is applied to every embedding at v and the resulting multiset is reduced
/// by the outer aggregator; then the combination is applied.
inline GnnOutput run_gnn(const GnnModel& model, const LabelledGraph& g) {
  auto diag = validate_model(model);
  if (!diag.errors.empty()) throw InvalidArgument("invalid model: " + diag.errors.front());
  if (g.dimension() != model.input_dimension && g.size() > 0)
    throw InvalidArgument("graph label dimension " + std::to_string(g.dimension()) +
                          " does not match model input dimension " +
                          std::to_string(model.input_dimension));
  const std::size_t d = model.dimension;
  const std::size_t n = g.size();
  GnnOutput out;
  std::vector<Label> current(n, Label(d, 0.0));
  for (NodeId v = 0; v < n; ++v)
    for (std::size_t k = 0; k < d; ++k) {
      if (model.input_map.empty())
        current[v][k] = g.label(v)[k];
      else if (model.input_map[k])
        current[v][k] = g.label(v)[*model.input_map[k]];
    }
  out.features.push_back(current);

  std::map<const Template*, std::vector<std::vector<Embedding>>> embeddings;
  auto embeddings_of = [&](const Template& t) -> const std::vector<std::vector<Embedding>>& {
    auto& per_node = embeddings[&t];
    if (per_node.empty() && n > 0) {
      EmbeddingMatcher matcher(t);
      for (NodeId v = 0; v < n; ++v) per_node.push_back(matcher.enumerate(g, v));
    }
    return per_node;
  };

  for (const auto& layer : model.layers) {
    std::vector<Label> next(n, Label(d, 0.0));
    for (NodeId v = 0; v < n; ++v) {
      Label z;
      for (const auto& slot : layer.slots) {
        LabelMultiset messages;
        for (const auto& f : embeddings_of(*slot.tmpl)[v])
          messages.insert(apply_template_aggregator(slot.template_agg, f, current));
        Label part = aggregate(slot.outer_agg, messages, output_width(slot.template_agg, d));
        z.insert(z.end(), part.begin(), part.end());
      }
      for (std::size_t k = 0; k < d; ++k) {
        double xc = 0.0;
        for (std::size_t p = 0; p < d; ++p) xc += current[v][p] * layer.C(p, k);
        double za = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) za += z[j] * layer.A(j, k);
        next[v][k] = activate(layer.activation, xc + za + layer.b[k]);
      }
    }
    current = std::move(next);
    out.features.push_back(current);
  }

  out.classes.resize(n, 0);
  if (d > 0)
    for (NodeId v = 0; v < n; ++v)
      out.classes[v] = current[v][model.cls.component] >= model.cls.threshold ? 1 : 0;
  return out;
}

}  // namespace tgnn
