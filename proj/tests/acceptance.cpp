// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion. A criterion passes only
// if every instance agrees and the wall time stays under its pinned limit.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tgnn/tgnn.hpp"

namespace {

using namespace tgnn;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::vector<TemplatePtr> random_subset(Rng& rng, const std::vector<TemplatePtr>& all) {
  std::vector<TemplatePtr> out;
  while (out.empty())
    for (const auto& t : all)
      if (bernoulli(rng, 0.5)) out.push_back(t);
  return out;
}

std::vector<std::size_t> flatten(const Coloring& col, std::size_t round) {
  std::vector<std::size_t> out;
  for (const auto& g : col.round(round)) out.insert(out.end(), g.begin(), g.end());
  return out;
}

// Exact outcome; no tolerance.
Outcome cycles() {
  const auto reg = builtin_registry();
  const std::vector<LabelledGraph> graphs{cycle_graph(3), cycle_graph(6)};
  const auto tri = run_twl(graphs, TwlConfig{{reg.at("T△"), reg.at("Tp")}, 1, {}});
  bool split_at_one = true, joint_at_zero = true;
  for (NodeId v = 0; v < 3; ++v)
    for (NodeId w = 0; w < 6; ++w) {
      split_at_one &= tri.color(1, 0, v) != tri.color(1, 1, w);
      joint_at_zero &= tri.color(0, 0, v) == tri.color(0, 1, w);
    }
  const auto t1 = run_twl(graphs, TwlConfig{{reg.at("T1")}, 6, {}});
  bool never = true;
  for (std::size_t l = 0; l <= 6; ++l)
    for (NodeId v = 0; v < 3; ++v)
      for (NodeId w = 0; w < 6; ++w) never &= t1.color(l, 0, v) == t1.color(l, 1, w);
  return {split_at_one && joint_at_zero && never,
          std::string("{T△,Tp}: split at round 1 ") + (split_at_one && joint_at_zero ? "yes" : "no") +
              "; {T1}: joint through round 6 " + (never ? "yes" : "no")};
}

Outcome wl_vs_bisimulation() {
  Rng rng(1002);
  const auto all = builtin_registry().templates();
  // 20 = 5 * 4 is the most embeddings a 3-vertex template has on 6 nodes.
  const OracleLimits limits{6, 20, 3};
  std::size_t checks = 0, agree = 0;
  for (int pair = 0; pair < 300; ++pair) {
    const auto g = random_graph(1 + uniform_index(rng, 6), uniform_unit(rng), 1, rng);
    const auto h = random_graph(1 + uniform_index(rng, 6), uniform_unit(rng), 1, rng);
    const NodeId v = uniform_index(rng, g.size()), w = uniform_index(rng, h.size());
    const auto templates = random_subset(rng, all);
    for (std::size_t l = 0; l <= 3; ++l)
      for (CountBound c : {CountBound{1}, CountBound{2}, CountBound{}}) {
        ++checks;
        agree += bisim_oracle(g, v, h, w, templates, l, c, limits) ==
                 bisimilar_via_twl(g, v, h, w, templates, l, c);
      }
  }
  return {agree == checks, std::to_string(agree) + "/" + std::to_string(checks) + " verdicts agree"};
}

// Exact arithmetic: truncated ReLU over 0/1 values and integer weights.
Outcome compiler_correctness() {
  Rng rng(1003);
  RandomFormulaOptions opts;  // md <= 3, sd <= 4, cb <= 3, 3 propositions
  opts.templates = builtin_registry().templates();
  std::size_t nodes = 0, agree = 0;
  for (int f = 0; f < 300; ++f) {
    const auto phi = random_formula(rng, opts);
    const auto model = compile_formula(phi, 3);
    for (int k = 0; k < 20; ++k) {
      const auto g = random_graph(1 + uniform_index(rng, 8), uniform_unit(rng), 3, rng);
      const auto out = run_gnn(model, g);
      const auto truth = eval_all(phi, g);
      for (NodeId v = 0; v < g.size(); ++v) {
        ++nodes;
        agree += (out.classes[v] == 1) == truth[v];
      }
    }
  }
  return {agree == nodes, std::to_string(agree) + "/" + std::to_string(nodes) + " node verdicts agree"};
}

Outcome gnn_invariance() {
  Rng rng(1004);
  const auto all = builtin_registry().templates();
  std::size_t pairs = 0, identical = 0, models = 0;
  for (int m = 0; m < 100; ++m) {
    const auto templates = random_subset(rng, all);
    const std::size_t c = 1 + uniform_index(rng, 2);
    const auto model = fixture::random_model(rng, templates, 1, 4, 3, CountBound{c});
    const std::size_t L = model.layers.size();
    const auto g = random_graph(1 + uniform_index(rng, 6), 0.3, 1, rng);
    std::vector<NodeId> perm(g.size());
    for (NodeId v = 0; v < g.size(); ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::vector<LabelledGraph> others{random_graph(1 + uniform_index(rng, 6), 0.3, 1, rng),
                                            g.permuted(perm), g};
    const auto fg = run_gnn(model, g);
    std::size_t verified_here = 0;
    for (const auto& h : others) {
      const auto fh = run_gnn(model, h);
      const auto rel = compute_bisimulation(g, h, templates, L, CountBound{c}, OracleLimits{6, 20, 3});
      for (NodeId v = 0; v < g.size(); ++v)
        for (NodeId w = 0; w < h.size(); ++w)
          if (rel.contains(L, v, w)) {
            ++pairs;
            ++verified_here;
            identical += bitwise_equal(fg.features[L][v], fh.features[L][w]);
          }
    }
    models += verified_here > 0;
  }
  return {identical == pairs && models == 100,
          std::to_string(identical) + "/" + std::to_string(pairs) + " verified pairs bit-identical over " +
              std::to_string(models) + " models"};
}

Outcome characteristic_formulae() {
  Rng rng(1005);
  const auto all = builtin_registry().templates();
  std::size_t checks = 0, agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto templates = random_subset(rng, all);
    std::vector<PointedGraph> corpus;
    const std::size_t members = 1 + uniform_index(rng, 12);
    for (std::size_t i = 0; i < members; ++i) {
      auto g = random_graph(1 + uniform_index(rng, 5), uniform_unit(rng), 1, rng);
      const NodeId v = uniform_index(rng, g.size());
      corpus.emplace_back(std::move(g), v);
    }
    const std::size_t l = uniform_index(rng, 3);
    const std::size_t c = 1 + uniform_index(rng, 2);
    BoundedCharacteristic builder(corpus, templates, c);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto chi = builder.formula(i, l);
      for (std::size_t j = 0; j < corpus.size(); ++j) {
        ++checks;
        agree += eval(chi, corpus[j].graph, corpus[j].point) ==
                 bisim_oracle(corpus[i].graph, corpus[i].point, corpus[j].graph, corpus[j].point,
                              templates, l, CountBound{c}, OracleLimits{5, 20, 3});
      }
    }
  }
  return {agree == checks, std::to_string(agree) + "/" + std::to_string(checks) + " member verdicts agree"};
}

// Dyadic weights and small integer labels keep every sum exact.
Outcome ac_fidelity() {
  Rng rng(1006);
  std::size_t vectors = 0, identical = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + uniform_index(rng, 3);
    const auto ac = fixture::random_ac_gnn(rng, d, 2, false);
    const auto g = fixture::integer_labelled_graph(rng, 1 + uniform_index(rng, 8), uniform_unit(rng), d);
    const auto out = run_gnn(ac_gnn_adapter(ac), g);
    std::vector<Label> x;
    for (NodeId v = 0; v < g.size(); ++v) x.push_back(g.label(v));
    for (std::size_t l = 0; l < ac.layers.size(); ++l) {
      const auto& layer = ac.layers[l];
      x = oracle::ac_sum_layer(g, x, layer.C, layer.A, layer.b, layer.activation);
      for (NodeId v = 0; v < g.size(); ++v) {
        ++vectors;
        identical += bitwise_equal(out.features[l + 1][v], x[v]);
      }
    }
  }
  return {identical == vectors, std::to_string(identical) + "/" + std::to_string(vectors) + " feature vectors bit-identical"};
}

Outcome one_wl_equivalence() {
  Rng rng(1007);
  const auto t1 = builtin_registry().at("T1");
  std::size_t rounds_checked = 0, same = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 8);
    const std::vector<LabelledGraph> graphs{random_graph(n, uniform_unit(rng), 1 + uniform_index(rng, 2), rng)};
    const auto col = run_twl(graphs, TwlConfig{{t1}, n, {}});
    const auto ref = oracle::one_wl(graphs, n);
    for (std::size_t l = 0; l <= n; ++l) {
      ++rounds_checked;
      same += oracle::same_partition(flatten(col, l), ref[l]);
    }
  }
  return {same == rounds_checked, std::to_string(same) + "/" + std::to_string(rounds_checked) + " round partitions equal"};
}

Outcome embedding_oracle() {
  Rng rng(1008);
  const auto reg = builtin_registry();
  std::vector<TemplatePtr> small;
  for (const auto& t : reg.templates())
    if (t->size <= 3) small.push_back(t);
  std::size_t nodes = 0, same = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = random_graph(1 + uniform_index(rng, 6), uniform_unit(rng), 1, rng);
    const auto& t = *small[uniform_index(rng, small.size())];
    for (NodeId v = 0; v < g.size(); ++v) {
      ++nodes;
      same += enumerate_embeddings(t, g, v) == oracle::embeddings(t, g, v);
    }
  }
  return {same == nodes, std::to_string(same) + "/" + std::to_string(nodes) + " embedding sets equal"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "three-vs-six-cycle", 1.0, cycles},
      {2, "wl-bisimulation", 120.0, wl_vs_bisimulation},
      {3, "compiler-correctness", 300.0, compiler_correctness},
      {4, "gnn-bisimulation-invariance", 120.0, gnn_invariance},
      {5, "characteristic-formula", 180.0, characteristic_formulae},
      {6, "ac-gnn-fidelity", 30.0, ac_fidelity},
      {7, "one-wl-equivalence", 60.0, one_wl_equivalence},
      {8, "embedding-oracle", 60.0, embedding_oracle},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s [%d] %s: %s; %.3f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : " over time");
    std::fflush(stdout);
  }
  return failed;
}
