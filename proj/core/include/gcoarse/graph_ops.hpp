#pragma once

#include <map>
#include <span>
#include <vector>

#include "gcoarse/dense_matrix.hpp"
#include "gcoarse/graph.hpp"

namespace gcoarse {

/// Weighted degree per vertex, keyed by vertex ID.
using DegreeMap = std::map<VertexId, double>;

/// Builds the graph whose matrix D'_hat - A_hat equals D - theta*A of `g`:
/// every edge is scaled by theta and each vertex receives slack
/// (1 - theta) * D_{v,v}, so D'_hat = D.
///
/// `g` must be slack-free (PreconditionError) and theta must lie in the open
/// interval (0, 1) (DomainError).
Graph apply_theta(const Graph& g, double theta);

/// The SDDM (or Laplacian) matrix D' - A of `g`, rows and columns following
/// `order`, which must be a permutation of g's vertices.
DenseMatrix to_dense(const Graph& g, std::span<const VertexId> order);

/// Same, in ascending vertex-ID order.
DenseMatrix to_dense(const Graph& g);

DegreeMap weighted_degrees(const Graph& g);

/// Weighted degrees of `g` restricted to `ids`. Throws DomainError on an
/// unknown vertex.
DegreeMap weighted_degrees(const Graph& g, std::span<const VertexId> ids);

/// True when every vertex can reach every other one. The empty graph counts
/// as connected.
bool is_connected(const Graph& g);

}  // namespace gcoarse
