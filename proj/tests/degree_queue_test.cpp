#include <gtest/gtest.h>

#include "gcoarse/degree_queue.hpp"
#include "gcoarse/errors.hpp"

namespace gcoarse {
namespace {

TEST(DegreeThreshold, ParseAndBounds) {
  EXPECT_TRUE(DegreeThreshold::parse("inf").is_infinite());
  EXPECT_EQ(DegreeThreshold::parse("30").bound(), 30u);
  EXPECT_EQ(DegreeThreshold(7).to_string(), "7");
  EXPECT_EQ(DegreeThreshold::infinity().to_string(), "inf");
  EXPECT_THROW(DegreeThreshold::parse("0"), DomainError);
  EXPECT_THROW(DegreeThreshold::parse("-3"), DomainError);
  EXPECT_THROW(DegreeThreshold::parse("3x"), DomainError);
  EXPECT_THROW(DegreeThreshold(0), DomainError);
  EXPECT_TRUE(DegreeThreshold(2).admits(2));
  EXPECT_FALSE(DegreeThreshold(2).admits(3));
}

TEST(DegreeBucketQueue, PopsMinimumDegree) {
  // a = 1 has degree 1, b = 2 has degree 2.
  Graph g;
  g.add_edge(1, 2, 1.0);
  g.add_edge(2, 3, 1.0);
  DegreeBucketQueue q(g, TerminalSet{3});
  EXPECT_EQ(q.pop_min_below(DegreeThreshold(30)), VertexId{1});
}

TEST(DegreeBucketQueue, AllTerminalsGivesNothing) {
  Graph g;
  g.add_edge(1, 2, 1.0);
  DegreeBucketQueue q(g, TerminalSet{1, 2});
  EXPECT_TRUE(q.empty());
  EXPECT_EQ(q.pop_min_below(DegreeThreshold::infinity()), std::nullopt);
}

TEST(DegreeBucketQueue, TiesGoToSmallestId) {
  // 9 and 4 both have degree 2.
  Graph g;
  g.add_edge(9, 1, 1.0);
  g.add_edge(9, 2, 1.0);
  g.add_edge(4, 1, 1.0);
  g.add_edge(4, 2, 1.0);
  DegreeBucketQueue q(g, TerminalSet{1, 2});
  EXPECT_EQ(q.pop_min_below(DegreeThreshold(2)), VertexId{4});
  EXPECT_EQ(q.pop_min_below(DegreeThreshold(2)), VertexId{9});
}

TEST(DegreeBucketQueue, RespectsThresholdWithoutPopping) {
  Graph g;
  for (VertexId leaf = 1; leaf <= 3; ++leaf) g.add_edge(0, leaf, 1.0);
  DegreeBucketQueue q(g, TerminalSet{1, 2, 3});
  EXPECT_EQ(q.pop_min_below(DegreeThreshold(1)), std::nullopt);
  EXPECT_TRUE(q.contains(0));
  EXPECT_EQ(q.pop_min_below(DegreeThreshold(3)), VertexId{0});
}

TEST(DegreeBucketQueue, UpdateMovesBuckets) {
  DegreeBucketQueue q;
  q.update(5, 4);
  q.update(6, 2);
  q.update(5, 1);
  ASSERT_TRUE(q.peek_min());
  EXPECT_EQ(q.peek_min()->vertex, 5u);
  EXPECT_EQ(q.peek_min()->degree, 1u);
  q.erase(5);
  EXPECT_EQ(q.degree_of(5), std::nullopt);
  EXPECT_EQ(q.degree_of(6), 2u);
  EXPECT_EQ(q.size(), 1u);
}

}  // namespace
}  // namespace gcoarse
