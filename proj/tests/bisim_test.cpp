// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tgnn/bisim.hpp"
#include "tgnn/generators.hpp"

namespace {

using namespace tgnn;

TemplatePtr ptr(Template t) { return std::make_shared<const Template>(std::move(t)); }

// Random template subset of the builtins, never empty.
std::vector<TemplatePtr> random_templates(Rng& rng) {
  const auto all = builtin_registry().templates();
  std::vector<TemplatePtr> out;
  while (out.empty())
    for (const auto& t : all)
      if (bernoulli(rng, 0.5)) out.push_back(t);
  return out;
}

TEST(Bisim, CyclesAndStars) {
  const auto c3 = cycle_graph(3), c6 = cycle_graph(6);
  const std::vector<TemplatePtr> t1{ptr(edge_template())};
  const std::vector<TemplatePtr> tri{ptr(triangle_template()), ptr(path_template())};
  for (std::size_t l = 0; l <= 4; ++l) EXPECT_TRUE(bisim_oracle(c3, 0, c6, 3, t1, l, {}));
  EXPECT_TRUE(bisim_oracle(c3, 0, c6, 0, tri, 0, {}));
  EXPECT_FALSE(bisim_oracle(c3, 0, c6, 0, tri, 1, {}));
  EXPECT_FALSE(bisim_oracle(c3, 0, c6, 0, tri, 1, CountBound{1}));

  // Three leaves versus two: told apart only once the bound reaches 3.
  const auto s3 = star_graph(3), s2 = star_graph(2);
  EXPECT_TRUE(bisim_oracle(s3, 0, s2, 0, t1, 1, CountBound{1}));
  EXPECT_TRUE(bisim_oracle(s3, 0, s2, 0, t1, 1, CountBound{2}));
  EXPECT_FALSE(bisim_oracle(s3, 0, s2, 0, t1, 1, CountBound{3}));
  EXPECT_FALSE(bisim_oracle(s3, 0, s2, 0, t1, 1, {}));
  EXPECT_TRUE(bisim_oracle(s3, 1, s2, 2, t1, 3, {}));
}

TEST(Bisim, Limits) {
  const std::vector<TemplatePtr> t1{ptr(edge_template())};
  EXPECT_THROW(bisim_oracle(cycle_graph(9), 0, cycle_graph(3), 0, t1, 1, {}), ResourceLimit);
  EXPECT_THROW(bisim_oracle(star_graph(13), 0, star_graph(2), 0, t1, 1, {}), ResourceLimit);
  EXPECT_THROW(bisim_oracle(cycle_graph(3), 0, cycle_graph(3), 0, t1, 1, CountBound{4}), ResourceLimit);
  EXPECT_THROW(bisim_oracle(cycle_graph(3), 0, cycle_graph(3), 0, t1, 1, CountBound{0}), InvalidArgument);
  EXPECT_THROW(bisim_oracle(cycle_graph(3), 3, cycle_graph(3), 0, t1, 1, {}), InvalidArgument);
}

TEST(Bisim, OracleAgreesWithTwl) {
  Rng rng(201);
  std::size_t checked = 0, skipped = 0;
  while (checked < 150) {
    const auto g = random_graph(1 + uniform_index(rng, 6), 0.35, 1, rng);
    const auto h = random_graph(1 + uniform_index(rng, 6), 0.35, 1, rng);
    const auto templates = random_templates(rng);
    const NodeId v = uniform_index(rng, g.size()), w = uniform_index(rng, h.size());
    for (std::size_t l = 0; l <= 3; ++l)
      for (CountBound c : {CountBound{1}, CountBound{2}, CountBound{}}) {
        bool expected;
        try {
          expected = bisim_oracle(g, v, h, w, templates, l, c);
        } catch (const ResourceLimit&) {
          ++skipped;
          continue;
        }
        ASSERT_EQ(expected, bisimilar_via_twl(g, v, h, w, templates, l, c));
      }
    ++checked;
  }
  EXPECT_LT(skipped, checked * 12 / 10);
}

TEST(Bisim, UnboundedMatchesBijectionReading) {
  Rng rng(202);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_graph(1 + uniform_index(rng, 6), 0.35, 1, rng);
    const auto h = random_graph(1 + uniform_index(rng, 6), 0.35, 1, rng);
    const auto templates = random_templates(rng);
    const std::size_t l = uniform_index(rng, 4);
    BisimRelation rel(0, 0);
    try {
      rel = compute_bisimulation(g, h, templates, l, {});
    } catch (const ResourceLimit&) {
      continue;
    }
    for (NodeId v = 0; v < g.size(); ++v)
      for (NodeId w = 0; w < h.size(); ++w)
        ASSERT_EQ(rel.contains(l, v, w), oracle::bijection_bisimilar(g, v, h, w, templates, l));
  }
}

TEST(Bisim, MonotoneInLevelAndBound) {
  Rng rng(203);
  int done = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(1 + uniform_index(rng, 5), 0.4, 1, rng);
    const auto h = random_graph(1 + uniform_index(rng, 5), 0.4, 1, rng);
    const auto templates = random_templates(rng);
    try {
      const auto r1 = compute_bisimulation(g, h, templates, 3, CountBound{1});
      const auto r2 = compute_bisimulation(g, h, templates, 3, CountBound{2});
      const auto ri = compute_bisimulation(g, h, templates, 3, {});
      for (std::size_t l = 0; l <= 3; ++l)
        for (NodeId v = 0; v < g.size(); ++v)
          for (NodeId w = 0; w < h.size(); ++w) {
            EXPECT_TRUE(!ri.contains(l, v, w) || r2.contains(l, v, w));
            EXPECT_TRUE(!r2.contains(l, v, w) || r1.contains(l, v, w));
            EXPECT_TRUE(l == 0 || !r1.contains(l, v, w) || r1.contains(l - 1, v, w));
          }
      ++done;
    } catch (const ResourceLimit&) {
    }
  }
  EXPECT_GT(done, 80);
}

// All loop-free graphs on 1..3 nodes with zero labels.
std::vector<LabelledGraph> small_graphs() {
  std::vector<LabelledGraph> out;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<Edge> slots;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b)
        if (a != b) slots.emplace_back(a, b);
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1u) edges.push_back(slots[i]);
      out.emplace_back(std::vector<Label>(n, Label{0.0}), edges);
    }
  }
  return out;
}

TEST(Bisim, ClassesMatchOraclePartitionOnSmallGraphs) {
  const auto graphs = small_graphs();
  ASSERT_EQ(graphs.size(), 69u);
  std::vector<PointedGraph> corpus;
  std::vector<std::pair<std::size_t, NodeId>> where;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (NodeId v = 0; v < graphs[gi].size(); ++v) {
      corpus.emplace_back(graphs[gi], v);
      where.emplace_back(gi, v);
    }
  const auto templates = builtin_registry().templates();
  for (CountBound c : {CountBound{1}, CountBound{}}) {
    const std::size_t level = 2;
    const auto classes = bisim_classes(corpus, templates, level, c);
    std::vector<std::size_t> class_of(corpus.size());
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (std::size_t i : classes[k]) class_of[i] = k;
    for (std::size_t a = 0; a < graphs.size(); ++a)
      for (std::size_t b = a; b < graphs.size(); ++b) {
        const auto rel = compute_bisimulation(graphs[a], graphs[b], templates, level, c);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
          if (where[i].first != a) continue;
          for (std::size_t j = 0; j < corpus.size(); ++j) {
            if (where[j].first != b) continue;
            ASSERT_EQ(rel.contains(level, where[i].second, where[j].second), class_of[i] == class_of[j]);
          }
        }
      }
  }
}

}  // namespace
