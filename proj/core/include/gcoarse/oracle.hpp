#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcoarse/dense_matrix.hpp"
#include "gcoarse/embed.hpp"
#include "gcoarse/graph.hpp"

// Textbook dense reference implementations. Nothing here calls into the
// coarsening or embedding code paths except where an oracle exists to
// measure one of them (the Monte-Carlo mean drives contract_vertex).

namespace gcoarse::oracle {

/// Schur complement onto `keep` (indices, returned in ascending order) by
/// eliminating the other indices one pivot at a time:
/// M <- M_{K,K} - M_{K,x} M_{K,x}^T / M_{x,x}.
/// `order`, when given, fixes the pivot sequence and must list exactly the
/// eliminated indices. Throws SingularMatrixError on a zero pivot.
DenseMatrix dense_schur(const DenseMatrix& m, std::span<const std::size_t> keep,
                        std::span<const std::size_t> order = {});

/// Gauss-Jordan inverse with partial pivoting. Verifies M * M^{-1} = I
/// within 1e-9 (max entry) and throws SingularMatrixError otherwise.
DenseMatrix dense_inverse(const DenseMatrix& m);

struct SddmVerdict {
  bool ok = true;
  /// First offending row when !ok.
  std::optional<std::size_t> row;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Symmetric, non-positive off-diagonals, and M_ii >= -sum_{j!=i} M_ij,
/// each within tol * max(1, |M_ii|). Laplacians pass (weak dominance).
SddmVerdict is_sddm(const DenseMatrix& m, double tol = 1e-10);

/// Cyclic Jacobi eigenvalues of a symmetric matrix, sorted by decreasing
/// magnitude.
std::vector<double> jacobi_eigenvalues(const DenseMatrix& m);

struct MonteCarloMean {
  /// Vertex order of the matrices: ascending IDs of V \ {x}.
  std::vector<VertexId> order;
  DenseMatrix mean;
  /// Per-entry standard error of the mean.
  DenseMatrix std_error;
  std::size_t trials = 0;
};

/// Mean of to_dense(contract_vertex(g, x, stream_rng(seed, i))) over
/// i = 0..trials-1. Trials run in fixed-size chunks (possibly on several
/// threads) and are merged in chunk order, so the result does not depend on
/// the thread count.
MonteCarloMean monte_carlo_contraction_mean(const Graph& g, VertexId x, std::size_t trials,
                                            std::uint64_t seed);

/// ||R1 R1^T - R2 R2^T||_F. Throws DomainError on mismatched ids or d.
double gram_distance(const Embedding& a, const Embedding& b);

/// Outcome of one verification check. `pass` holds iff the checked error
/// (max_abs or rel_frobenius, per `metric`) is at most `tolerance`.
struct OracleReport {
  std::string name;
  double max_abs_error = 0.0;
  double rel_frobenius_error = 0.0;
  std::size_t trials = 0;
  double tolerance = 0.0;
  std::string metric = "max_abs";
  bool pass = false;
  /// Check-specific figures (instance counts, fitted constants, ...).
  std::vector<std::pair<std::string, double>> details;

  /// Recomputes `pass` from the checked error and tolerance.
  void finalize();

  /// One JSON object on a single line, fields in a fixed order.
  std::string to_json_line() const;
};

}  // namespace gcoarse::oracle
