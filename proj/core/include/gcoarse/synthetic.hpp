#pragma once

#include <cstddef>
#include <cstdint>

#include "gcoarse/dense_matrix.hpp"
#include "gcoarse/graph.hpp"
#include "gcoarse/rng.hpp"

namespace gcoarse::synthetic {

struct RandomGraphSpec {
  std::size_t vertices = 10;
  /// Probability of each non-tree pair becoming an edge.
  double extra_edge_probability = 0.2;
  double min_weight = 0.1;
  double max_weight = 10.0;
  /// Probability that a vertex carries slack, drawn from [0, max_slack).
  double slack_probability = 0.0;
  double max_slack = 1.0;
  /// Vertex i gets ID first_id + i * id_stride.
  VertexId first_id = 0;
  VertexId id_stride = 1;
};

/// Random spanning tree plus independent extra edges; always connected.
/// Weights are log-uniform in [min_weight, max_weight).
Graph random_connected_graph(const RandomGraphSpec& spec, SplitMix64& rng);

/// Each vertex of g independently with probability p; never empty.
TerminalSet random_terminals(const Graph& g, double p, SplitMix64& rng);

/// Two equal blocks of n/2 vertices (IDs 0..n-1, block = id < n/2), unit
/// weights, intra-block edge probability p_in and inter-block p_out.
Graph two_block_graph(std::size_t n, double p_in, double p_out, std::uint64_t seed);

/// Uniform G(n, m) multigraph-free sample with unit weights, topped up with
/// a spanning path so the graph is connected.
Graph random_sparse_graph(std::size_t n, std::size_t m, std::uint64_t seed);

/// Random SDDM matrix: symmetric, off-diagonals in (-2, 0] with the given
/// density, diagonal = off-diagonal row mass + slack in [0.1, 1.1).
DenseMatrix random_sddm(std::size_t n, double density, SplitMix64& rng);

}  // namespace gcoarse::synthetic
