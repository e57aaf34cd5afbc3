// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tgnn/errors.hpp"
#include "tgnn/formula.hpp"
#include "tgnn/template.hpp"

namespace tgnn {

namespace detail {

// Recursive descent over
//
//   impl  := or ("->" impl)?
//   or    := and ("|" and)*
//   and   := unary ("&" unary)*
//   unary := "!" unary | atom
//   atom  := IDENT | "(" impl ")" | "<" NAME ">=" INT ">" "(" [impl ("," impl)*] ")"
//
// "|" and "->" are desugared into ! and &.
class FormulaParser {
 public:
  FormulaParser(std::string_view text, const TemplateRegistry& registry,
                const std::vector<std::string>& propositions)
      : text_(text), registry_(registry), props_(propositions) {}

  Formula parse() {
    Formula f = implication_level();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  Formula implication_level() {
    Formula lhs = or_level();
    if (accept("->")) return implication(lhs, implication_level());
    return lhs;
  }

  Formula or_level() {
    Formula lhs = and_level();
    while (accept("|")) lhs = disjunction(lhs, and_level());
    return lhs;
  }

  Formula and_level() {
    Formula lhs = unary();
    while (accept("&")) lhs = Formula::conjunction(lhs, unary());
    return lhs;
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    return atom();
  }

  Formula atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept("(")) {
      Formula f = implication_level();
      expect(")");
      return f;
    }
    if (text_[pos_] == '<') return modal();
    return proposition();
  }

  Formula proposition() {
    const std::size_t start = pos_;
    auto is_ident = [](char c, bool first) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
             (!first && (std::isdigit(static_cast<unsigned char>(c)) || c == '\''));
    };
    if (!is_ident(text_[pos_], true)) fail("expected a proposition, '(' , '!' or '<'");
    while (pos_ < text_.size() && is_ident(text_[pos_], false)) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < props_.size(); ++i)
      if (props_[i] == name) return Formula::prop(i);
    pos_ = start;
    fail("unknown proposition '" + name + "'");
  }

  Formula modal() {
    const std::size_t start = pos_;
    ++pos_;  // '<'
    const std::size_t name_start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '>') ++pos_;
    if (pos_ >= text_.size()) fail("unterminated template name");
    std::string name(text_.substr(name_start, pos_ - name_start));
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
      name.pop_back();
    std::size_t lead = 0;
    while (lead < name.size() && std::isspace(static_cast<unsigned char>(name[lead])))
      ++lead;
    name.erase(0, lead);
    if (text_.substr(pos_, 2) != ">=") fail("expected '>=' after template name");
    pos_ += 2;
    skip_space();
    const std::size_t num_start = pos_;
    std::size_t threshold = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      threshold = threshold * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (threshold > 1'000'000'000) fail("threshold too large");
      ++pos_;
    }
    if (pos_ == num_start) fail("expected a threshold");
    if (threshold < 1) {
      pos_ = num_start;
      fail("threshold must be >= 1");
    }
    expect(">");
    expect("(");
    std::vector<Formula> args;
    if (!accept(")")) {
      do {
        args.push_back(implication_level());
      } while (accept(","));
      expect(")");
    }
    TemplatePtr t = registry_.find(name);
    if (!t) {
      pos_ = start;
      fail("unknown template '" + name + "'");
    }
    if (args.size() != t->arity()) {
      pos_ = start;
      fail("arity mismatch: template '" + name + "' has size " +
           std::to_string(t->size) + " and takes " + std::to_string(t->arity()) +
           " argument(s), got " + std::to_string(args.size()));
    }
    return Formula::diamond(std::move(t), threshold, std::move(args));
  }

  std::string_view text_;
  const TemplateRegistry& registry_;
  const std::vector<std::string>& props_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the concrete formula syntax. Propositions are names from
/// `propositions`; modal operators name templates of `registry`.
/// Precedence from tightest: !, &, |, -> (right associative).
inline Formula parse_formula(std::string_view text, const TemplateRegistry& registry,
                             const std::vector<std::string>& propositions) {
  return detail::FormulaParser(text, registry, propositions).parse();
}

/// Uses the registry's own proposition list.
inline Formula parse_formula(std::string_view text, const TemplateRegistry& registry) {
  return parse_formula(text, registry, registry.propositions());
}

}  // namespace tgnn
