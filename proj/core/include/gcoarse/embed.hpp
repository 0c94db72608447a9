#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcoarse/dense_matrix.hpp"
#include "gcoarse/graph.hpp"
#include "gcoarse/graph_ops.hpp"

// Every matrix produced here is indexed by ascending vertex ID.

namespace gcoarse {

/// Window weights theta_1..theta_W, each in (0,1).
class WalkParams {
 public:
  /// theta_i = theta^i for i = 1..window.
  static WalkParams geometric(double theta, std::size_t window);

  /// Throws DomainError on an empty sequence or a value outside (0,1).
  explicit WalkParams(std::vector<double> thetas);

  std::size_t window() const { return thetas_.size(); }
  std::span<const double> thetas() const { return thetas_; }

  /// The base theta when built by geometric().
  std::optional<double> geometric_base() const { return base_; }

 private:
  std::vector<double> thetas_;
  std::optional<double> base_;
};

/// Inverse of a symmetric positive-definite matrix by LDL^T elimination
/// without pivoting (safe for SDDM input). Every column is checked for
/// ||M x - e_j|| <= 1e-9; failure or a non-positive pivot throws
/// SingularMatrixError.
DenseMatrix spd_inverse(const DenseMatrix& m);

/// sum_{i=1..W} theta_i D^{-1} (A D^{-1})^i for a slack-free graph.
DenseMatrix netmf_poly(const Graph& g, const WalkParams& params);

/// (D - theta A)^{-1} - D^{-1}, the W -> inf limit of netmf_poly with
/// geometric weights.
DenseMatrix limit_poly_g(const Graph& g, double theta);

/// sum_{i=1..W} D'^{-1} (A_H D'^{-1})^i + D'^{-1} - D_orig^{-1} on the
/// coarsened graph h. `original_degrees` must cover every vertex of h.
DenseMatrix netmfsc_poly(const Graph& h, const DegreeMap& original_degrees, std::size_t window);

/// (D'_H - A_H)^{-1} - D_orig^{-1}.
DenseMatrix limit_poly_h(const Graph& h, const DegreeMap& original_degrees);

/// Entrywise max(log(m_edges * x), 0); non-positive entries map to 0.
DenseMatrix truncated_log(const DenseMatrix& m, std::uint64_t m_edges);

struct Embedding {
  std::vector<VertexId> ids;
  std::size_t dim = 0;
  /// |ids| x dim, row-major.
  std::vector<double> values;
  /// Signed eigenvalues of the selected pairs, by decreasing magnitude.
  std::vector<double> eigenvalues;

  std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
  std::optional<std::size_t> index_of(VertexId v) const;

  /// R R^T, the rotation-invariant witness of the embedding.
  DenseMatrix gram() const;
};

/// All eigenvalues of a symmetric matrix ordered by decreasing |lambda|
/// (ties keep ascending-eigenvalue order).
std::vector<double> ranked_eigenvalues(const DenseMatrix& m);

/// Rank-d factorization of a symmetric matrix: the d eigenpairs of largest
/// |lambda| give R = U_d |Lambda_d|^{1/2}. Each eigenvector is signed so
/// that its largest-magnitude entry is positive. `ids` labels the rows
/// (defaults to 0..n-1). Throws DomainError when d is 0 or exceeds n.
Embedding truncated_svd(const DenseMatrix& m, std::size_t d, std::vector<VertexId> ids = {});

enum class EmbedMode { netmf, netmfsc };

std::string to_string(EmbedMode mode);
EmbedMode parse_embed_mode(const std::string& text);

struct EmbedOptions {
  EmbedMode mode = EmbedMode::netmf;
  WalkParams walk = WalkParams::geometric(0.5, 10);
  /// Use the W -> inf closed form instead of the truncated sum. netmf mode
  /// needs geometric walk weights for this.
  bool limit = false;
  std::size_t dim = 128;
  /// Scale inside log+; defaults to the edge count of the embedded graph.
  std::optional<std::uint64_t> log_scale;
  /// Original weighted degrees; required by netmfsc.
  DegreeMap original_degrees;
};

/// Factorization target for the chosen mode, before the truncated log.
DenseMatrix embedding_target(const Graph& g, const EmbedOptions& options);

Embedding embed_graph(const Graph& g, const EmbedOptions& options);

/// `# d=<dim>` header, then `id <TAB> x_0 ... x_{d-1}` per row.
void write_embedding(const Embedding& e, std::ostream& out);
Embedding read_embedding(std::istream& in);

}  // namespace gcoarse
