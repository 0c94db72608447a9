#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcoarse/degree_queue.hpp"
#include "gcoarse/graph.hpp"
#include "gcoarse/rng.hpp"

namespace gcoarse {

enum class CoarsenMethod { schur, contract };

std::string to_string(CoarsenMethod method);

/// Parses "schur" or "contract"; throws DomainError otherwise.
CoarsenMethod parse_coarsen_method(const std::string& text);

struct CoarsenConfig {
  CoarsenMethod method = CoarsenMethod::schur;
  DegreeThreshold delta = DegreeThreshold(30);
  std::uint64_t seed = 0;
};

struct CoarsenStats {
  std::size_t initial_vertices = 0;
  std::size_t initial_edges = 0;
  std::size_t eliminated = 0;
  /// Isolated non-terminals that were deleted without a pivot.
  std::size_t degenerate_removed = 0;
  /// Unweighted degree of each eliminated vertex, in elimination order.
  std::vector<std::size_t> step_degrees;
  /// Largest edge count observed after any step (contraction keeps this at
  /// or below initial_edges).
  std::size_t max_edges_seen = 0;
  /// Neighbor-list entries touched by elimination steps.
  std::uint64_t adjacency_work = 0;
  /// Steps where deg(x) exceeded 2m / (remaining non-terminals). Always zero
  /// unless the queue is broken.
  std::size_t degree_bound_violations = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

struct CoarsenResult {
  Graph graph;
  CoarsenStats stats;
};

/// Called after every elimination step with the working graph and the
/// vertex that was removed.
using StepObserver = std::function<void(const Graph&, VertexId)>;

/// Gaussian elimination of x: adds w(x,u)w(x,v)/D'_{x,x} to every unordered
/// neighbor pair, moves w(x,u)*slack(x)/D'_{x,x} into each neighbor's slack,
/// and deletes x. Returns the number of adjacency updates performed.
///
/// Throws DomainError if x is absent and DegenerateVertexError when
/// D'_{x,x} = 0.
std::uint64_t eliminate_vertex_schur_in_place(Graph& g, VertexId x);
Graph eliminate_vertex_schur(Graph g, VertexId x);

/// Reweighted random contraction of x into a neighbor u drawn with
/// probability w(x,u)/D_{x,x}. Neighbor slacks are updated as in Schur
/// elimination before the draw; each other neighbor v then gains
/// w(x,u)w(x,v)/(w(x,u)+w(x,v)) * D_{x,x}/D'_{x,x} on edge (u,v). The
/// merged vertex keeps the ID u, which is returned.
///
/// Consumes exactly one value from rng. Throws DegenerateVertexError when x
/// has no neighbors.
VertexId contract_vertex_in_place(Graph& g, VertexId x, SplitMix64& rng);
Graph contract_vertex(Graph g, VertexId x, SplitMix64& rng);

/// Repeatedly eliminates the minimum-degree non-terminal (ties: smallest ID)
/// while its degree is admitted by delta. With delta = inf the result has
/// vertex set exactly T and matrix SC(M, T).
CoarsenResult schur_complement(const Graph& g, const TerminalSet& terminals,
                               const DegreeThreshold& delta, const StepObserver& observer = {});

/// Same loop with contract_vertex; step k draws from stream_rng(seed, k).
/// The edge count never exceeds that of the input (checked every step).
CoarsenResult random_contraction(const Graph& g, const TerminalSet& terminals,
                                 const DegreeThreshold& delta, std::uint64_t seed,
                                 const StepObserver& observer = {});

CoarsenResult coarsen(const Graph& g, const TerminalSet& terminals, const CoarsenConfig& config,
                      const StepObserver& observer = {});

/// JSON run report. Wall time is only included on request so that identical
/// runs produce identical reports.
std::string run_report_json(const CoarsenResult& result, const CoarsenConfig& config,
                            bool include_timing = false);

}  // namespace gcoarse
