#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gcoarse/errors.hpp"
#include "gcoarse/evalkit.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/synthetic.hpp"

namespace gcoarse {
namespace {

Graph cycle4() {
  Graph g;
  for (VertexId i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4, 1.0);
  return g;
}

Graph k4() {
  Graph g;
  for (VertexId i = 0; i < 4; ++i) {
    for (VertexId j = i + 1; j < 4; ++j) g.add_edge(i, j, 1.0);
  }
  return g;
}

void expect_split_invariants(const Graph& g, const TerminalSet& t, const EdgeSplit& s) {
  EXPECT_EQ(s.positives.size(), s.negatives.size());
  EXPECT_TRUE(is_connected(s.train_graph));
  std::set<VertexPair> seen;
  for (const VertexPair& p : s.positives) {
    EXPECT_TRUE(t.contains(p.u) && t.contains(p.v));
    EXPECT_TRUE(g.has_edge(p.u, p.v));
    EXPECT_FALSE(s.train_graph.has_edge(p.u, p.v));
  }
  for (const VertexPair& p : s.negatives) {
    EXPECT_TRUE(t.contains(p.u) && t.contains(p.v));
    EXPECT_LT(p.u, p.v);
    EXPECT_FALSE(g.has_edge(p.u, p.v));
    EXPECT_TRUE(seen.insert(p).second);
  }
  EXPECT_EQ(s.train_graph.num_edges() + s.positives.size(), g.num_edges());
}

TEST(SelectRemovable, FourCycleRemovesExactlyOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = cycle4();
    const auto removed = select_removable_edges(g, TerminalSet::all_of(g), 0.5, seed);
    EXPECT_EQ(removed.size(), 1u);
    EXPECT_TRUE(is_connected(g));
  }
}

TEST(SelectRemovable, TreeRemovesNothing) {
  Graph g;
  for (VertexId i = 1; i < 8; ++i) g.add_edge(i, (i - 1) / 2, 1.0);
  const auto removed = select_removable_edges(g, TerminalSet::all_of(g), 0.5, 1);
  EXPECT_TRUE(removed.empty());
  EXPECT_THROW(split_edges(g, TerminalSet::all_of(g), 0.5, 1), PreconditionError);
}

TEST(SelectRemovable, K4RemovesThree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = k4();
    const auto removed = select_removable_edges(g, TerminalSet::all_of(g), 0.5, seed);
    EXPECT_EQ(removed.size(), 3u);
    EXPECT_EQ(g.num_edges(), 3u);
    EXPECT_TRUE(is_connected(g));
  }
}

TEST(SelectRemovable, Preconditions) {
  Graph g = cycle4();
  EXPECT_THROW(select_removable_edges(g, TerminalSet::all_of(g), 0.0, 1), DomainError);
  EXPECT_THROW(select_removable_edges(g, TerminalSet::all_of(g), 1.0, 1), DomainError);
  g.add_vertex(9);
  EXPECT_THROW(select_removable_edges(g, TerminalSet::all_of(g), 0.5, 1), PreconditionError);
}

TEST(SplitEdges, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = synthetic::two_block_graph(60, 0.3, 0.05, seed);
    if (!is_connected(g)) continue;
    SplitMix64 rng(seed);
    const TerminalSet t = synthetic::random_terminals(g, 0.6, rng);
    const EdgeSplit s = split_edges(g, t, 0.5, seed);
    EXPECT_FALSE(s.positives.empty());
    expect_split_invariants(g, t, s);
  }
}

TEST(SplitEdges, Deterministic) {
  const Graph g = synthetic::two_block_graph(40, 0.3, 0.1, 2);
  const TerminalSet t = TerminalSet::all_of(g);
  const EdgeSplit a = split_edges(g, t, 0.5, 9);
  const EdgeSplit b = split_edges(g, t, 0.5, 9);
  EXPECT_EQ(a.positives, b.positives);
  EXPECT_EQ(a.negatives, b.negatives);
  EXPECT_EQ(a.train_graph, b.train_graph);
}

TEST(SampleNegatives, GivesUpWhenPairsRunOut) {
  const Graph g = k4();
  EXPECT_THROW(sample_negative_pairs(g, TerminalSet::all_of(g), 1, 0), Error);
  EXPECT_TRUE(sample_negative_pairs(g, TerminalSet::all_of(g), 0, 0).empty());
}

Embedding two_rows(std::vector<double> a, std::vector<double> b) {
  Embedding e;
  e.ids = {1, 2};
  e.dim = a.size();
  e.values = a;
  e.values.insert(e.values.end(), b.begin(), b.end());
  return e;
}

TEST(EdgeFeatures, Operators) {
  const Embedding e = two_rows({1, 2}, {3, 4});
  const std::vector<VertexPair> pair{{1, 2}};
  EXPECT_EQ(edge_features(e, pair, EdgeOperator::hadamard), (std::vector<double>{3, 8}));
  EXPECT_EQ(edge_features(e, pair, EdgeOperator::weighted_l2), (std::vector<double>{4, 4}));
  const std::vector<VertexPair> self{{1, 1}};
  EXPECT_EQ(edge_features(e, self, EdgeOperator::weighted_l2), (std::vector<double>{0, 0}));
  const std::vector<VertexPair> missing{{1, 5}};
  EXPECT_THROW(edge_features(e, missing, EdgeOperator::hadamard), DomainError);
  EXPECT_EQ(parse_edge_operator("weighted_l2"), EdgeOperator::weighted_l2);
  EXPECT_THROW(parse_edge_operator("cosine"), DomainError);
}

TEST(LogReg, SeparableOneDimensional) {
  const std::vector<double> x{-1.0, 1.0};
  const std::vector<int> y{0, 1};
  const LinkModel m = train_logreg(x, y, 1);
  EXPECT_LT(m.predict(std::vector<double>{-1.0}), 0.5);
  EXPECT_GT(m.predict(std::vector<double>{1.0}), 0.5);
}

TEST(LogReg, SingleClassRejected) {
  const std::vector<double> x{1.0, 2.0};
  const std::vector<int> y{1, 1};
  EXPECT_THROW(train_logreg(x, y, 1), PreconditionError);
}

TEST(LogReg, MirroredDataLearnsNothing) {
  // Each point appears with both labels, mirrored about 0.
  const std::vector<double> x{-2.0, -2.0, -1.0, -1.0, 1.0, 1.0, 2.0, 2.0};
  const std::vector<int> y{0, 1, 0, 1, 0, 1, 0, 1};
  const LinkModel m = train_logreg(x, y, 1);
  EXPECT_LE(std::abs(m.weights[0]), 1e-3);
  EXPECT_LE(std::abs(m.bias), 1e-3);
}

TEST(LogReg, GradientMatchesFiniteDifferences) {
  SplitMix64 rng(17);
  const std::size_t n = 40, dim = 5;
  std::vector<double> x(n * dim);
  std::vector<int> y(n);
  for (double& v : x) v = 2.0 * rng.next_unit() - 1.0;
  for (int& v : y) v = static_cast<int>(rng.next_below(2));
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> params(dim + 1);
    for (double& p : params) p = 4.0 * rng.next_unit() - 2.0;
    std::vector<double> grad;
    logistic_loss(x, y, dim, params, 0.1, &grad);
    for (std::size_t k = 0; k <= dim; ++k) {
      const double h = 1e-6;
      std::vector<double> up = params, down = params;
      up[k] += h;
      down[k] -= h;
      const double fd = (logistic_loss(x, y, dim, up, 0.1, nullptr) -
                         logistic_loss(x, y, dim, down, 0.1, nullptr)) /
                        (2 * h);
      EXPECT_LE(std::abs(fd - grad[k]), 1e-5 * std::max(1.0, std::abs(grad[k])));
    }
  }
}

TEST(Auc, Examples) {
  const std::vector<int> y{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.1, 0.2, 0.3, 0.4}, y), 1.0);
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.4, 0.3, 0.2, 0.1}, y), 0.0);
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.5, 0.5, 0.5, 0.5}, y), 0.5);
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.1, 0.3, 0.3, 0.4}, y), 0.875);
  EXPECT_THROW(auc_score(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}),
               PreconditionError);
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  SplitMix64 rng(3);
  std::vector<double> s(100);
  std::vector<int> y(100);
  for (std::size_t i = 0; i < 100; ++i) {
    s[i] = std::round(10.0 * rng.next_unit()) / 10.0;
    y[i] = static_cast<int>(rng.next_below(2));
  }
  std::vector<double> t(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) t[i] = std::exp(3.0 * s[i]) - 7.0;
  EXPECT_DOUBLE_EQ(auc_score(s, y), auc_score(t, y));
}

TEST(Pipeline, RunsAndIsDeterministic) {
  const Graph g = synthetic::two_block_graph(80, 0.3, 0.03, 5);
  ASSERT_TRUE(is_connected(g));
  EvalConfig cfg;
  cfg.terminal_fraction = 0.5;
  cfg.coarsen = CoarsenConfig{CoarsenMethod::contract, DegreeThreshold::infinity(), 0};
  cfg.dim = 8;
  cfg.seed = 4;
  const EvalResult a = run_link_prediction(g, cfg);
  EXPECT_GE(a.auc, 0.0);
  EXPECT_LE(a.auc, 1.0);
  EXPECT_EQ(a.terminals, 40u);
  EXPECT_EQ(a.embedded_vertices, 40u);
  EXPECT_EQ(a.train_examples + a.test_examples, a.positives + a.negatives);
  const EvalResult b = run_link_prediction(g, cfg);
  EXPECT_EQ(eval_report_json(a, cfg), eval_report_json(b, cfg));

  std::ostringstream preds;
  write_predictions(a.test_predictions, preds);
  const std::string text = preds.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            a.test_examples);
}

TEST(Pipeline, WithoutCoarseningEmbedsWholeGraph) {
  const Graph g = synthetic::two_block_graph(60, 0.3, 0.05, 1);
  EvalConfig cfg;
  cfg.dim = 4;
  cfg.op = EdgeOperator::weighted_l2;
  const EvalResult r = run_link_prediction(g, cfg);
  EXPECT_EQ(r.embedded_vertices, 60u);
  EXPECT_GT(r.positives, 0u);
}

}  // namespace
}  // namespace gcoarse
