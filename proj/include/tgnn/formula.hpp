// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

enum class FormulaKind { proposition, negation, conjunction, diamond };

/// Immutable GML(𝒯) formula: p | !φ | φ & ψ | <T>=j>(φ1, ..., φn).
///
/// Formulae are shared DAGs; copying a Formula copies a pointer. Each node
/// caches its structural hash and its modal depth, syntactic depth and
/// counting bound, so these are O(1) even for heavily shared formulae.
class Formula {
 public:
  static Formula prop(std::size_t index) {
    Node n;
    n.kind = FormulaKind::proposition;
    n.prop = index;
    return Formula(std::move(n));
  }

  static Formula negation(Formula f) {
    Node n;
    n.kind = FormulaKind::negation;
    n.children.push_back(std::move(f));
    return Formula(std::move(n));
  }

  static Formula conjunction(Formula a, Formula b) {
    Node n;
    n.kind = FormulaKind::conjunction;
    n.children.push_back(std::move(a));
    n.children.push_back(std::move(b));
    return Formula(std::move(n));
  }

  /// <T>=threshold>(args...). Requires threshold >= 1 and one argument per
  /// non-root template vertex.
  static Formula diamond(TemplatePtr t, std::size_t threshold,
                         std::vector<Formula> args) {
    if (!t) throw InvalidArgument("diamond needs a template");
    if (threshold == 0) throw InvalidArgument("diamond threshold must be >= 1");
    if (args.size() != t->arity())
      throw InvalidArgument("template '" + t->name + "' takes " +
                            std::to_string(t->arity()) + " argument(s), got " +
                            std::to_string(args.size()));
    Node n;
    n.kind = FormulaKind::diamond;
    n.threshold = threshold;
    n.tmpl = std::move(t);
    n.children = std::move(args);
    return Formula(std::move(n));
  }

  FormulaKind kind() const noexcept { return node_->kind; }
  std::size_t prop_index() const noexcept { return node_->prop; }
  std::size_t threshold() const noexcept { return node_->threshold; }
  const TemplatePtr& templ() const noexcept { return node_->tmpl; }

  /// Operands: one for negation, two for conjunction, the modal arguments
  /// for a diamond.
  const std::vector<Formula>& args() const noexcept { return node_->children; }
  const Formula& operand() const { return node_->children.at(0); }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }

  std::size_t modal_depth() const noexcept { return node_->md; }
  std::size_t syntactic_depth() const noexcept { return node_->sd; }
  std::size_t counting_bound() const noexcept { return node_->cb; }
  /// Largest proposition index + 1 (0 if none).
  std::size_t proposition_span() const noexcept { return node_->props; }

  std::uint64_t hash() const noexcept { return node_->hash; }

  /// Node identity, stable while any copy is alive. Used to memoise.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }

  /// Structural total order.
  friend std::strong_ordering compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    if (auto c = x.hash <=> y.hash; c != 0) return c;
    if (auto c = x.prop <=> y.prop; c != 0) return c;
    if (auto c = x.threshold <=> y.threshold; c != 0) return c;
    if (x.tmpl != y.tmpl) {
      if (auto c = x.tmpl->name <=> y.tmpl->name; c != 0) return c;
    }
    if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.children.size(); ++i)
      if (auto c = compare(x.children[i], y.children[i]); c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  struct Node {
    FormulaKind kind = FormulaKind::proposition;
    std::size_t prop = 0;
    std::size_t threshold = 0;
    TemplatePtr tmpl;
    std::vector<Formula> children;
    std::uint64_t hash = 0;
    std::size_t md = 0;
    std::size_t sd = 0;
    std::size_t cb = 0;
    std::size_t props = 0;
  };

  explicit Formula(Node n) {
    auto mix = [](std::uint64_t h, std::uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h * 0x100000001b3ull;
    };
    std::uint64_t h = mix(0xcbf29ce484222325ull, static_cast<std::uint64_t>(n.kind));
    h = mix(h, n.prop);
    h = mix(h, n.threshold);
    if (n.tmpl)
      for (unsigned char ch : n.tmpl->name) h = mix(h, ch);
    std::size_t md = 0, sd = 0, cb = n.threshold, props = 0;
    for (const auto& c : n.children) {
      h = mix(h, c.hash());
      md = std::max(md, c.modal_depth());
      sd = std::max(sd, c.syntactic_depth());
      cb = std::max(cb, c.counting_bound());
      props = std::max(props, c.proposition_span());
    }
    switch (n.kind) {
      case FormulaKind::proposition:
        props = n.prop + 1;
        break;
      case FormulaKind::negation:
      case FormulaKind::conjunction:
        sd += 1;
        break;
      case FormulaKind::diamond:
        md += 1;
        sd += 1;
        break;
    }
    n.hash = h;
    n.md = md;
    n.sd = sd;
    n.cb = cb;
    n.props = props;
    node_ = std::make_shared<const Node>(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

inline std::size_t modal_depth(const Formula& f) { return f.modal_depth(); }
inline std::size_t syntactic_depth(const Formula& f) { return f.syntactic_depth(); }
inline std::size_t counting_bound(const Formula& f) { return f.counting_bound(); }

/// ¬(¬a ∧ ¬b)
inline Formula disjunction(Formula a, Formula b) {
  return Formula::negation(Formula::conjunction(Formula::negation(std::move(a)),
                                                Formula::negation(std::move(b))));
}

/// ¬(a ∧ ¬b)
inline Formula implication(Formula a, Formula b) {
  return Formula::negation(
      Formula::conjunction(std::move(a), Formula::negation(std::move(b))));
}

/// p0 ∧ ¬p0
inline Formula falsum() {
  return Formula::conjunction(Formula::prop(0), Formula::negation(Formula::prop(0)));
}

/// ¬(p0 ∧ ¬p0)
inline Formula verum() { return Formula::negation(falsum()); }

/// Left-nested conjunction; `parts` must be non-empty.
inline Formula conjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) throw InvalidArgument("empty conjunction");
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = Formula::conjunction(out, parts[i]);
  return out;
}

/// Left-nested disjunction; the empty disjunction is falsum().
inline Formula disjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) return falsum();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = disjunction(out, parts[i]);
  return out;
}

/// Distinct subformulae, every subformula before each formula containing it;
/// `f` itself is last.
inline std::vector<Formula> subformulae(const Formula& f) {
  std::vector<Formula> order;
  std::vector<const void*> visited;
  auto seen = [&](const Formula& g) {
    if (std::find(visited.begin(), visited.end(), g.identity()) != visited.end())
      return true;
    for (const auto& h : order)
      if (h == g) return true;
    return false;
  };
  auto visit = [&](auto&& self, const Formula& g) -> void {
    if (seen(g)) return;
    for (const auto& c : g.args()) self(self, c);
    if (seen(g)) return;
    visited.push_back(g.identity());
    order.push_back(g);
  };
  visit(visit, f);
  return order;
}

/// Concrete syntax understood by parse_formula(). Conjunctions are always
/// parenthesised, so printing followed by parsing gives back the same tree.
inline std::string to_string(const Formula& f,
                             const std::vector<std::string>& propositions) {
  std::string out;
  auto emit = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case FormulaKind::proposition:
        if (g.prop_index() >= propositions.size())
          throw InvalidArgument("proposition index " + std::to_string(g.prop_index()) +
                                " has no name");
        out += propositions[g.prop_index()];
        break;
      case FormulaKind::negation:
        out += '!';
        self(self, g.operand());
        break;
      case FormulaKind::conjunction:
        out += '(';
        self(self, g.left());
        out += " & ";
        self(self, g.right());
        out += ')';
        break;
      case FormulaKind::diamond:
        out += '<';
        out += g.templ()->name;
        out += ">=";
        out += std::to_string(g.threshold());
        out += ">(";
        for (std::size_t i = 0; i < g.args().size(); ++i) {
          if (i) out += ", ";
          self(self, g.args()[i]);
        }
        out += ')';
        break;
    }
  };
  emit(emit, f);
  return out;
}

}  // namespace tgnn
