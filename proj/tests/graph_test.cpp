#include <gtest/gtest.h>

#include "gcoarse/dense_matrix.hpp"
#include "gcoarse/errors.hpp"
#include "gcoarse/graph.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/rng.hpp"
#include "gcoarse/synthetic.hpp"

namespace gcoarse {
namespace {

Graph unit_triangle() {
  Graph g;
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 1.0);
  return g;
}

TEST(Graph, ParallelEdgesMergeByAddition) {
  Graph g;
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 1, 2.0);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(*g.weight(1, 2), 3.0);
  EXPECT_DOUBLE_EQ(*g.weight(2, 1), 3.0);
}

TEST(Graph, RejectsSelfLoopsAndBadWeights) {
  Graph g;
  EXPECT_THROW(g.add_edge(1, 1, 1.0), DomainError);
  EXPECT_THROW(g.add_edge(1, 2, 0.0), DomainError);
  EXPECT_THROW(g.add_edge(1, 2, -1.0), DomainError);
  EXPECT_THROW(g.add_edge(1, 2, std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(g.add_slack(1, -0.5), DomainError);
}

TEST(Graph, DegreesAndSlack) {
  Graph g;
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 3, 2.0);
  g.add_slack(3, 0.5);
  EXPECT_EQ(g.degree(2), 2u);
  EXPECT_DOUBLE_EQ(g.weighted_degree(2), 3.0);
  EXPECT_DOUBLE_EQ(g.augmented_degree(3), 2.5);
  EXPECT_DOUBLE_EQ(g.total_slack(), 0.5);
}

TEST(Graph, RemoveVertexDropsIncidentEdges) {
  Graph g = unit_triangle();
  g.remove_vertex(1);
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_THROW(g.remove_vertex(1), DomainError);
}

TEST(Graph, RemoveEdgeKeepsEndpoints) {
  Graph g = unit_triangle();
  EXPECT_DOUBLE_EQ(g.remove_edge(2, 0), 1.0);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_THROW(g.remove_edge(0, 2), DomainError);
}

TEST(Graph, EqualityIgnoresInsertionOrder) {
  Graph a;
  a.add_edge(1, 2, 1.0);
  a.add_edge(1, 3, 2.0);
  Graph b;
  b.add_edge(3, 1, 2.0);
  b.add_edge(2, 1, 1.0);
  EXPECT_EQ(a, b);
  b.add_slack(2, 0.1);
  EXPECT_NE(a, b);
}

TEST(Graph, EdgesListedOnceAscending) {
  const auto edges = unit_triangle().edges();
  ASSERT_EQ(edges.size(), 3u);
  EXPECT_EQ(edges[0].u, 0u);
  EXPECT_EQ(edges[0].v, 1u);
  EXPECT_EQ(edges[2].u, 1u);
  EXPECT_EQ(edges[2].v, 2u);
}

TEST(TerminalSet, SortsAndValidates) {
  TerminalSet t{5, 1, 5, 3};
  EXPECT_EQ(t.ids(), (std::vector<VertexId>{1, 3, 5}));
  EXPECT_TRUE(t.contains(3));
  EXPECT_FALSE(t.contains(2));
  Graph g = unit_triangle();
  EXPECT_THROW(t.validate_against(g), DomainError);
  EXPECT_NO_THROW(TerminalSet::all_of(g).validate_against(g));
}

TEST(ApplyTheta, SingleUnitEdge) {
  Graph g;
  g.add_edge(0, 1, 1.0);
  const Graph h = apply_theta(g, 0.5);
  EXPECT_DOUBLE_EQ(*h.weight(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(h.slack(0), 0.5);
  EXPECT_DOUBLE_EQ(h.slack(1), 0.5);
  EXPECT_DOUBLE_EQ(h.augmented_degree(0), 1.0);
}

TEST(ApplyTheta, UnitTriangle) {
  const Graph h = apply_theta(unit_triangle(), 0.75);
  for (VertexId v : h.vertices()) {
    EXPECT_DOUBLE_EQ(h.slack(v), 0.5);
  }
  EXPECT_DOUBLE_EQ(*h.weight(0, 2), 0.75);
}

TEST(ApplyTheta, RejectsBoundaryAndSlack) {
  EXPECT_THROW(apply_theta(unit_triangle(), 1.0), DomainError);
  EXPECT_THROW(apply_theta(unit_triangle(), 0.0), DomainError);
  Graph g = unit_triangle();
  g.add_slack(0, 1.0);
  EXPECT_THROW(apply_theta(g, 0.5), PreconditionError);
}

TEST(ApplyTheta, MatrixIsDMinusThetaA) {
  SplitMix64 rng(3);
  synthetic::RandomGraphSpec spec;
  spec.vertices = 12;
  const Graph g = synthetic::random_connected_graph(spec, rng);
  for (double theta : {0.1, 0.5, 0.9}) {
    const Graph h = apply_theta(g, theta);
    const DenseMatrix m = to_dense(g);
    DenseMatrix expected = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i != j) expected(i, j) = theta * m(i, j);
      }
    }
    EXPECT_LE(max_abs_difference(to_dense(h), expected), 1e-12);
    for (VertexId v : g.vertices()) {
      EXPECT_NEAR(h.augmented_degree(v), g.weighted_degree(v), 1e-12);
    }
  }
}

TEST(ToDense, Examples) {
  Graph edge;
  edge.add_edge(0, 1, 1.0);
  DenseMatrix lap(2);
  lap(0, 0) = lap(1, 1) = 1.0;
  lap(0, 1) = lap(1, 0) = -1.0;
  EXPECT_EQ(to_dense(edge), lap);

  edge.add_slack(0, 1.0);
  edge.add_slack(1, 1.0);
  DenseMatrix sddm = lap;
  sddm(0, 0) = sddm(1, 1) = 2.0;
  EXPECT_EQ(to_dense(edge), sddm);

  Graph path;
  path.add_edge(1, 2, 1.0);
  path.add_edge(2, 3, 1.0);
  const DenseMatrix p = to_dense(path);
  EXPECT_EQ(p(0, 0), 1.0);
  EXPECT_EQ(p(1, 1), 2.0);
  EXPECT_EQ(p(2, 2), 1.0);
  EXPECT_EQ(p(0, 1), -1.0);
  EXPECT_EQ(p(1, 2), -1.0);
  EXPECT_EQ(p(0, 2), 0.0);
}

TEST(ToDense, HonoursOrderAndRejectsNonPermutations) {
  Graph g;
  g.add_edge(10, 20, 2.0);
  g.add_slack(10, 1.0);
  const std::vector<VertexId> order{20, 10};
  const DenseMatrix m = to_dense(g, order);
  EXPECT_EQ(m(0, 0), 2.0);
  EXPECT_EQ(m(1, 1), 3.0);
  const std::vector<VertexId> short_order{10};
  EXPECT_THROW(to_dense(g, short_order), DomainError);
  const std::vector<VertexId> repeated{10, 10};
  EXPECT_THROW(to_dense(g, repeated), DomainError);
}

TEST(ToDense, LaplacianRowsSumToZero) {
  SplitMix64 rng(9);
  synthetic::RandomGraphSpec spec;
  spec.vertices = 15;
  const DenseMatrix m = to_dense(synthetic::random_connected_graph(spec, rng));
  for (std::size_t i = 0; i < m.size(); ++i) {
    double sum = 0.0;
    for (double x : m.row(i)) sum += x;
    EXPECT_NEAR(sum, 0.0, 1e-12);
  }
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  SplitMix64 a = stream_rng(42, 3);
  SplitMix64 b = stream_rng(42, 3);
  SplitMix64 c = stream_rng(42, 4);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  SplitMix64 r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.next_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(r.next_below(7), 7u);
  }
}

TEST(Rng, SplitMixReferenceValue) {
  // First output of SplitMix64 seeded with 0.
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
}

}  // namespace
}  // namespace gcoarse
