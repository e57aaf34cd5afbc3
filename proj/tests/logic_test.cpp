// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tgnn/bisim.hpp"
#include "tgnn/charform.hpp"
#include "tgnn/generators.hpp"
#include "tgnn/modelcheck.hpp"
#include "tgnn/parser.hpp"

namespace {

using namespace tgnn;

TemplateRegistry registry() {
  auto r = builtin_registry();
  r.set_propositions({"p", "q", "r"});
  return r;
}

Formula parse(const std::string& text) { return parse_formula(text, registry()); }

std::size_t error_position(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no parse error for " << text;
  return SIZE_MAX;
}

TEST(Parser, PrecedenceAndSugar) {
  const auto p = Formula::prop(0), q = Formula::prop(1), r = Formula::prop(2);
  EXPECT_EQ(parse("p & q | !r"), disjunction(Formula::conjunction(p, q), Formula::negation(r)));
  EXPECT_EQ(parse("p -> q -> r"), implication(p, implication(q, r)));
  EXPECT_EQ(parse("p & q & r"), Formula::conjunction(Formula::conjunction(p, q), r));
  EXPECT_EQ(parse("!!p"), Formula::negation(Formula::negation(p)));
  const auto reg = registry();
  EXPECT_EQ(parse("  < T1 >= 2 >( p )"), Formula::diamond(reg.at("T1"), 2, {p}));
  EXPECT_EQ(parse("<Tp>=1>(p, <T1>=1>(q | r))"),
            Formula::diamond(reg.at("Tp"), 1, {p, Formula::diamond(reg.at("T1"), 1, {disjunction(q, r)})}));
  EXPECT_EQ(parse("<T△>=3>(p, q)").templ()->name, "T△");
}

TEST(Parser, ErrorsCarryPositions) {
  EXPECT_EQ(error_position(""), 0u);
  EXPECT_EQ(error_position("p &"), 3u);
  EXPECT_EQ(error_position("x"), 0u);
  EXPECT_EQ(error_position("p q"), 2u);
  EXPECT_EQ(error_position("(p"), 2u);
  EXPECT_EQ(error_position("q & <T9>=1>(p)"), 4u);
  EXPECT_EQ(error_position("<T1>=0>(p)"), 5u);
  EXPECT_EQ(error_position("<T1>=1>(p, q)"), 0u);
  EXPECT_EQ(error_position("<T1>=>(p)"), 5u);
  EXPECT_EQ(error_position("<T1(p)"), 6u);
}

TEST(Formula, Measures) {
  const auto f = parse("<T1>=2>(<Tp>=3>(p, !q))");
  EXPECT_EQ(f.modal_depth(), 2u);
  EXPECT_EQ(f.syntactic_depth(), 3u);
  EXPECT_EQ(f.counting_bound(), 3u);
  EXPECT_EQ(f.proposition_span(), 2u);
  const auto g = parse("!(p & q)");
  EXPECT_EQ(g.modal_depth(), 0u);
  EXPECT_EQ(g.syntactic_depth(), 2u);
  EXPECT_EQ(g.counting_bound(), 0u);
  EXPECT_EQ(parse("r").syntactic_depth(), 0u);
  EXPECT_EQ(parse("r").proposition_span(), 3u);
}

TEST(Formula, SubformulaeArePostorderAndDistinct) {
  const auto f = parse("(p & q) & !(p & q)");
  const auto subs = subformulae(f);
  ASSERT_EQ(subs.size(), 5u);
  EXPECT_EQ(subs.back(), f);
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (const auto& child : subs[i].args()) {
      auto it = std::find(subs.begin(), subs.end(), child);
      ASSERT_NE(it, subs.end());
      EXPECT_LT(static_cast<std::size_t>(it - subs.begin()), i);
    }
}

TEST(Formula, PrintParseRoundTrip) {
  Rng rng(301);
  const auto reg = registry();
  RandomFormulaOptions opts;
  opts.templates = reg.templates();
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = random_formula(rng, opts);
    const auto text = to_string(f, reg.propositions());
    ASSERT_EQ(parse(text), f) << text;
  }
}

TEST(ModelCheck, StarExample) {
  LabelledGraph star({{0.0}, {1.0}, {1.0}, {0.0}}, {{0, 1}, {0, 2}, {0, 3}});
  const auto reg = registry();
  const auto f = parse_formula("<T1>=2>(p)", reg, {"p"});
  EXPECT_EQ(eval_all(f, star), (std::vector<bool>{true, false, false, false}));
  EXPECT_EQ(eval_all(parse_formula("<T1>=3>(p)", reg, {"p"}), star), (std::vector<bool>(4, false)));
  EXPECT_EQ(eval_all(parse_formula("<T2>=2>(p)", reg, {"p"}), star),
            (std::vector<bool>{false, false, false, true}));
  EXPECT_EQ(eval_all(verum(), star), (std::vector<bool>(4, true)));
  EXPECT_EQ(eval_all(falsum(), star), (std::vector<bool>(4, false)));
  EXPECT_THROW(eval(parse("q"), star, 0), InvalidArgument);
  EXPECT_THROW(eval(parse("p"), star, 4), InvalidArgument);
}

TEST(ModelCheck, AgreesWithNaiveEvaluation) {
  Rng rng(302);
  RandomFormulaOptions opts;
  opts.templates = registry().templates();
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = random_formula(rng, opts);
    const auto g = random_graph(1 + uniform_index(rng, 6), 0.2 + 0.5 * uniform_unit(rng), 3, rng);
    const auto got = eval_all(f, g);
    for (NodeId v = 0; v < g.size(); ++v) ASSERT_EQ(got[v], oracle::eval(f, g, v));
  }
}

TEST(ModelCheck, InvariantUnderBoundedBisimilarity) {
  Rng rng(303);
  const auto templates = registry().templates();
  std::size_t related = 0;
  for (int trial = 0; trial < 300; ++trial) {
    RandomFormulaOptions opts;
    opts.propositions = 1 + uniform_index(rng, 2);
    opts.max_modal_depth = 1 + uniform_index(rng, 2);
    opts.max_bound = 1 + uniform_index(rng, 2);
    opts.templates = templates;
    const auto f = random_formula(rng, opts);
    const auto g = random_graph(2 + uniform_index(rng, 5), 0.4, opts.propositions, rng);
    auto h = random_graph(2 + uniform_index(rng, 5), 0.4, opts.propositions, rng);
    if (bernoulli(rng, 0.3)) {
      std::vector<NodeId> perm(g.size());
      for (NodeId v = 0; v < g.size(); ++v) perm[v] = v;
      std::shuffle(perm.begin(), perm.end(), rng);
      h = g.permuted(perm);
    }
    const std::vector<LabelledGraph> pair{g, h};
    const auto col = run_twl(pair, TwlConfig{templates, opts.max_modal_depth, CountBound{opts.max_bound}});
    const auto fg = eval_all(f, g), fh = eval_all(f, h);
    for (NodeId v = 0; v < g.size(); ++v)
      for (NodeId w = 0; w < h.size(); ++w)
        if (col.color(opts.max_modal_depth, 0, v) == col.color(opts.max_modal_depth, 1, w)) {
          ++related;
          ASSERT_EQ(fg[v], fh[w]) << to_string(f, {"p", "q"});
        }
  }
  EXPECT_GT(related, 300u);
}

TEST(CharFormula, ThreeCycleExample) {
  const auto c3 = cycle_graph(3);
  const std::vector<TemplatePtr> t1{registry().at("T1")};
  const std::vector<PointedGraph> corpus{{c3, 0}, {cycle_graph(6), 0}};
  const auto chi = char_formula_bounded(corpus[0], 1, 1, t1, corpus);
  EXPECT_EQ(chi.modal_depth(), 1u);
  EXPECT_LE(chi.counting_bound(), 1u);
  EXPECT_TRUE(eval(chi, cycle_graph(6), 4));
  // A star centre looks like a cycle node once one successor suffices.
  EXPECT_TRUE(eval(chi, star_graph(2), 0));
  EXPECT_FALSE(eval(chi, star_graph(2), 1));
  EXPECT_THROW(char_formula_bounded({star_graph(2), 0}, 1, 1, t1, corpus), NotFound);
}

TEST(CharFormula, UnboundedDefinesBisimilarityClass) {
  Rng rng(304);
  const auto templates = registry().templates();
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_graph(1 + uniform_index(rng, 5), 0.4, 1, rng);
    const auto h = random_graph(1 + uniform_index(rng, 5), 0.4, 1, rng);
    const std::size_t l = uniform_index(rng, 3);
    const NodeId v = uniform_index(rng, g.size());
    const auto chi = char_formula_unbounded(g, v, l, templates);
    EXPECT_LE(chi.modal_depth(), l);
    EXPECT_TRUE(eval(chi, g, v));
    const auto rel = compute_bisimulation(g, h, templates, l, {});
    const auto at_h = eval_all(chi, h);
    for (NodeId w = 0; w < h.size(); ++w) ASSERT_EQ(at_h[w], rel.contains(l, v, w));
  }
}

TEST(CharFormula, BoundedDefinesClassWithinCorpus) {
  Rng rng(305);
  const auto all = registry().templates();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<TemplatePtr> templates{all[uniform_index(rng, all.size())]};
    std::vector<PointedGraph> corpus;
    const std::size_t members = 2 + uniform_index(rng, 8);
    for (std::size_t i = 0; i < members; ++i) {
      auto g = random_graph(1 + uniform_index(rng, 5), 0.45, 1, rng);
      const NodeId v = uniform_index(rng, g.size());
      corpus.emplace_back(std::move(g), v);
    }
    const std::size_t l = uniform_index(rng, 3);
    const std::size_t c = 1 + uniform_index(rng, 2);
    BoundedCharacteristic builder(corpus, templates, c);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto chi = builder.formula(i, l);
      EXPECT_LE(chi.modal_depth(), l);
      EXPECT_LE(chi.counting_bound(), c);
      for (std::size_t j = 0; j < corpus.size(); ++j) {
        const bool bisimilar = bisimilar_via_twl(corpus[i].graph, corpus[i].point, corpus[j].graph,
                                                 corpus[j].point, templates, l, CountBound{c});
        ASSERT_EQ(eval(chi, corpus[j].graph, corpus[j].point), bisimilar) << "trial " << trial;
      }
    }
  }
}

TEST(CharFormula, ClassDefiningFormula) {
  const std::vector<TemplatePtr> t1{registry().at("T1")};
  const std::vector<PointedGraph> corpus{{star_graph(3), 0}, {star_graph(2), 0}, {star_graph(3), 1},
                                         {cycle_graph(3), 0}, {cycle_graph(6), 2}};
  // With c = 2 the two star centres agree, as do the two cycles.
  const auto phi = class_defining_formula({0, 1}, corpus, 1, 2, t1);
  std::vector<bool> got;
  for (const auto& pg : corpus) got.push_back(eval(phi, pg.graph, pg.point));
  EXPECT_EQ(got, (std::vector<bool>{true, true, false, false, false}));
  EXPECT_THROW(class_defining_formula({3}, corpus, 1, 2, t1), InvalidArgument);
  const auto none = class_defining_formula({}, corpus, 1, 2, t1);
  for (const auto& pg : corpus) EXPECT_FALSE(eval(none, pg.graph, pg.point));
}

}  // namespace
