#include "gcoarse/graph_ops.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "gcoarse/errors.hpp"

namespace gcoarse {

Graph apply_theta(const Graph& g, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta must lie in (0,1), got " + std::to_string(theta));
  }
  if (g.total_slack() != 0.0) {
    throw PreconditionError("apply_theta expects a slack-free graph");
  }
  Graph out;
  for (VertexId v : g.vertices()) {
    out.add_vertex(v);
  }
  for (const Graph::Edge& e : g.edges()) {
    out.add_edge(e.u, e.v, theta * e.weight);
  }
  for (VertexId v : g.vertices()) {
    out.add_slack(v, (1.0 - theta) * g.weighted_degree(v));
  }
  return out;
}

DenseMatrix to_dense(const Graph& g, std::span<const VertexId> order) {
  if (order.size() != g.num_vertices()) {
    throw DomainError("ordering has " + std::to_string(order.size()) + " entries but graph has " +
                      std::to_string(g.num_vertices()) + " vertices");
  }
  std::unordered_map<VertexId, std::size_t> index;
  index.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!g.contains(order[i]) || !index.emplace(order[i], i).second) {
      throw DomainError("ordering is not a permutation of the vertex set");
    }
  }
  DenseMatrix m(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    double diag = g.slack(order[i]);
    for (const Neighbor& nb : g.neighbors(order[i])) {
      m(i, index.at(nb.id)) = -nb.weight;
      diag += nb.weight;
    }
    m(i, i) = diag;
  }
  return m;
}

DenseMatrix to_dense(const Graph& g) {
  const auto order = g.vertices();
  return to_dense(g, order);
}

DegreeMap weighted_degrees(const Graph& g) {
  DegreeMap out;
  for (VertexId v : g.vertices()) {
    out.emplace(v, g.weighted_degree(v));
  }
  return out;
}

DegreeMap weighted_degrees(const Graph& g, std::span<const VertexId> ids) {
  DegreeMap out;
  for (VertexId v : ids) {
    out.emplace(v, g.weighted_degree(v));
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices() <= 1) {
    return true;
  }
  const VertexId start = g.vertices().front();
  std::unordered_set<VertexId> seen{start};
  std::deque<VertexId> frontier{start};
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop_front();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (seen.insert(nb.id).second) {
        frontier.push_back(nb.id);
      }
    }
  }
  return seen.size() == g.num_vertices();
}

}  // namespace gcoarse
