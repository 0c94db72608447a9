#include "gcoarse/embed.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "gcoarse/edge_list.hpp"
#include "gcoarse/errors.hpp"

namespace gcoarse {

namespace {

constexpr double kResidualTolerance = 1e-9;

struct IndexedGraph {
  std::vector<VertexId> ids;
  std::unordered_map<VertexId, std::size_t> index;
};

IndexedGraph index_vertices(const Graph& g) {
  IndexedGraph out{g.vertices(), {}};
  out.index.reserve(out.ids.size());
  for (std::size_t i = 0; i < out.ids.size(); ++i) {
    out.index.emplace(out.ids[i], i);
  }
  return out;
}

void require_slack_free(const Graph& g) {
  if (g.total_slack() != 0.0) {
    throw PreconditionError("NetMF expects a slack-free graph");
  }
}

std::vector<double> positive_degrees(const Graph& g, const std::vector<VertexId>& ids,
                                     bool augmented) {
  std::vector<double> deg(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    deg[i] = augmented ? g.augmented_degree(ids[i]) : g.weighted_degree(ids[i]);
    if (!(deg[i] > 0.0)) {
      throw DomainError("vertex " + std::to_string(ids[i]) + " has zero degree");
    }
  }
  return deg;
}

std::vector<double> original_degree_vector(const DegreeMap& degrees,
                                           const std::vector<VertexId>& ids) {
  std::vector<double> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = degrees.find(ids[i]);
    if (it == degrees.end()) {
      throw DomainError("missing original degree for vertex " + std::to_string(ids[i]));
    }
    if (!(it->second > 0.0)) {
      throw DomainError("original degree of vertex " + std::to_string(ids[i]) +
                        " must be positive");
    }
    out[i] = it->second;
  }
  return out;
}

// x <- x * (A diag(inv_deg)), exploiting the sparsity of A. Each output entry
// accumulates in (k ascending, adjacency order).
DenseMatrix times_walk(const DenseMatrix& x, const Graph& g, const IndexedGraph& ig,
                       const std::vector<double>& inv_deg) {
  const std::size_t n = x.size();
  DenseMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto nbrs = g.neighbors(ig.ids[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double xik = x(i, k);
      if (xik == 0.0) {
        continue;
      }
      std::span<double> out_row = out.row(i);
      for (const Neighbor& nb : nbrs) {
        const std::size_t j = ig.index.at(nb.id);
        out_row[j] += xik * nb.weight * inv_deg[j];
      }
    }
  }
  return out;
}

// sum_{i=1..W} coeff_i * Dinv (A Dinv)^i
DenseMatrix walk_sum(const Graph& g, const IndexedGraph& ig, const std::vector<double>& inv_deg,
                     std::span<const double> coeffs) {
  const std::size_t n = ig.ids.size();
  DenseMatrix term(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Neighbor& nb : g.neighbors(ig.ids[i])) {
      const std::size_t j = ig.index.at(nb.id);
      term(i, j) = inv_deg[i] * nb.weight * inv_deg[j];
    }
  }
  DenseMatrix sum = term * coeffs[0];
  for (std::size_t w = 1; w < coeffs.size(); ++w) {
    term = times_walk(term, g, ig, inv_deg);
    sum += term * coeffs[w];
  }
  sum.symmetrize();
  return sum;
}

void subtract_inverse_diagonal(DenseMatrix& m, const std::vector<double>& deg) {
  for (std::size_t i = 0; i < deg.size(); ++i) {
    m(i, i) -= 1.0 / deg[i];
  }
}

}  // namespace

WalkParams WalkParams::geometric(double theta, std::size_t window) {
  if (window == 0) {
    throw DomainError("window size must be at least 1");
  }
  std::vector<double> thetas(window);
  double power = 1.0;
  for (double& t : thetas) {
    power *= theta;
    t = power;
  }
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta must lie in (0,1)");
  }
  WalkParams p(std::move(thetas));
  p.base_ = theta;
  return p;
}

WalkParams::WalkParams(std::vector<double> thetas) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) {
    throw DomainError("window size must be at least 1");
  }
  for (double t : thetas_) {
    if (!(t > 0.0 && t < 1.0)) {
      throw DomainError("walk weights must lie in (0,1)");
    }
  }
}

DenseMatrix spd_inverse(const DenseMatrix& m) {
  const std::size_t n = m.size();
  // LDL^T on the lower triangle of a working copy.
  DenseMatrix lower(n);
  std::vector<double> diag(n);
  {
    DenseMatrix a = m;
    for (std::size_t k = 0; k < n; ++k) {
      const double pivot = a(k, k);
      if (!(pivot > 0.0) || !std::isfinite(pivot)) {
        throw SingularMatrixError("non-positive pivot at row " + std::to_string(k));
      }
      diag[k] = pivot;
      lower(k, k) = 1.0;
      for (std::size_t i = k + 1; i < n; ++i) {
        lower(i, k) = a(i, k) / pivot;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        const double lik = lower(i, k);
        if (lik == 0.0) {
          continue;
        }
        for (std::size_t j = k + 1; j <= i; ++j) {
          a(i, j) -= lik * a(j, k);
        }
      }
    }
  }

  DenseMatrix inv(n);
  std::vector<double> x(n);
  for (std::size_t col = 0; col < n; ++col) {
    // L y = e_col
    std::fill(x.begin(), x.end(), 0.0);
    x[col] = 1.0;
    for (std::size_t i = col + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = col; k < i; ++k) {
        s += lower(i, k) * x[k];
      }
      x[i] = -s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      x[i] /= diag[i];
    }
    // L^T x = z
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t k = ii + 1; k < n; ++k) {
        s -= lower(k, ii) * x[k];
      }
      x[ii] = s;
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = (i == col) ? -1.0 : 0.0;
      std::span<const double> mi = m.row(i);
      for (std::size_t k = 0; k < n; ++k) {
        r += mi[k] * x[k];
      }
      residual += r * r;
    }
    if (!(std::sqrt(residual) <= kResidualTolerance)) {
      throw SingularMatrixError("linear solve residual " + format_double(std::sqrt(residual)) +
                                " exceeds tolerance");
    }
    for (std::size_t i = 0; i < n; ++i) {
      inv(i, col) = x[i];
    }
  }
  inv.symmetrize();
  return inv;
}

DenseMatrix netmf_poly(const Graph& g, const WalkParams& params) {
  require_slack_free(g);
  const IndexedGraph ig = index_vertices(g);
  auto inv_deg = positive_degrees(g, ig.ids, false);
  for (double& d : inv_deg) {
    d = 1.0 / d;
  }
  return walk_sum(g, ig, inv_deg, params.thetas());
}

DenseMatrix limit_poly_g(const Graph& g, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta must lie in (0,1)");
  }
  require_slack_free(g);
  const IndexedGraph ig = index_vertices(g);
  const auto deg = positive_degrees(g, ig.ids, false);
  DenseMatrix m(ig.ids.size());
  for (std::size_t i = 0; i < ig.ids.size(); ++i) {
    m(i, i) = deg[i];
    for (const Neighbor& nb : g.neighbors(ig.ids[i])) {
      m(i, ig.index.at(nb.id)) = -theta * nb.weight;
    }
  }
  DenseMatrix out = spd_inverse(m);
  subtract_inverse_diagonal(out, deg);
  return out;
}

DenseMatrix netmfsc_poly(const Graph& h, const DegreeMap& original_degrees, std::size_t window) {
  if (window == 0) {
    throw DomainError("window size must be at least 1");
  }
  const IndexedGraph ig = index_vertices(h);
  const auto orig = original_degree_vector(original_degrees, ig.ids);
  auto inv_aug = positive_degrees(h, ig.ids, true);
  for (double& d : inv_aug) {
    d = 1.0 / d;
  }
  const std::vector<double> ones(window, 1.0);
  DenseMatrix out = walk_sum(h, ig, inv_aug, ones);
  for (std::size_t i = 0; i < ig.ids.size(); ++i) {
    out(i, i) += inv_aug[i] - 1.0 / orig[i];
  }
  return out;
}

DenseMatrix limit_poly_h(const Graph& h, const DegreeMap& original_degrees) {
  const IndexedGraph ig = index_vertices(h);
  const auto orig = original_degree_vector(original_degrees, ig.ids);
  DenseMatrix out = spd_inverse(to_dense(h, ig.ids));
  subtract_inverse_diagonal(out, orig);
  return out;
}

DenseMatrix truncated_log(const DenseMatrix& m, std::uint64_t m_edges) {
  if (m_edges == 0) {
    throw DomainError("log+ scale must be a positive edge count");
  }
  const double scale = static_cast<double>(m_edges);
  DenseMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double x = m(i, j);
      out(i, j) = x > 0.0 ? std::max(std::log(scale * x), 0.0) : 0.0;
    }
  }
  return out;
}

std::optional<std::size_t> Embedding::index_of(VertexId v) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  if (it != ids.end() && *it == v && std::is_sorted(ids.begin(), ids.end())) {
    return static_cast<std::size_t>(it - ids.begin());
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == v) {
      return i;
    }
  }
  return std::nullopt;
}

DenseMatrix Embedding::gram() const {
  const std::size_t n = ids.size();
  DenseMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        s += values[i * dim + k] * values[j * dim + k];
      }
      g(i, j) = s;
    }
  }
  return g;
}

namespace {

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  std::vector<std::size_t> ranking;
};

EigenPairs ranked_eigendecomposition(const DenseMatrix& m, bool with_vectors) {
  const std::size_t n = m.size();
  double scale = 0.0;
  for (double x : m.data()) {
    scale = std::max(scale, std::abs(x));
  }
  if (!m.is_symmetric(1e-12 * std::max(1.0, scale))) {
    throw PreconditionError("eigendecomposition needs a symmetric matrix");
  }
  if (!m.all_finite()) {
    throw DomainError("matrix has non-finite entries");
  }
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = m(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition did not converge");
  }
  EigenPairs out{solver.eigenvalues(), with_vectors ? solver.eigenvectors() : Eigen::MatrixXd{},
                 std::vector<std::size_t>(n)};
  std::iota(out.ranking.begin(), out.ranking.end(), std::size_t{0});
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(out.values[a]) > std::abs(out.values[b]);
  });
  return out;
}

}  // namespace

std::vector<double> ranked_eigenvalues(const DenseMatrix& m) {
  const EigenPairs pairs = ranked_eigendecomposition(m, false);
  std::vector<double> out;
  out.reserve(pairs.ranking.size());
  for (std::size_t idx : pairs.ranking) {
    out.push_back(pairs.values[idx]);
  }
  return out;
}

Embedding truncated_svd(const DenseMatrix& m, std::size_t d, std::vector<VertexId> ids) {
  const std::size_t n = m.size();
  if (d == 0 || d > n) {
    throw DomainError("embedding dimension " + std::to_string(d) + " must lie in [1, " +
                      std::to_string(n) + "]");
  }
  if (ids.empty()) {
    ids.resize(n);
    std::iota(ids.begin(), ids.end(), VertexId{0});
  } else if (ids.size() != n) {
    throw DomainError("row labels do not match the matrix dimension");
  }
  const EigenPairs pairs = ranked_eigendecomposition(m, true);

  Embedding e{std::move(ids), d, std::vector<double>(n * d), {}};
  for (std::size_t c = 0; c < d; ++c) {
    const std::size_t idx = pairs.ranking[c];
    const double lambda = pairs.values[idx];
    e.eigenvalues.push_back(lambda);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(pairs.vectors(i, idx)) > std::abs(pairs.vectors(pivot, idx))) {
        pivot = i;
      }
    }
    const double sign = pairs.vectors(pivot, idx) < 0.0 ? -1.0 : 1.0;
    const double scale = sign * std::sqrt(std::abs(lambda));
    for (std::size_t i = 0; i < n; ++i) {
      e.values[i * d + c] = pairs.vectors(i, idx) * scale;
    }
  }
  return e;
}

std::string to_string(EmbedMode mode) { return mode == EmbedMode::netmf ? "netmf" : "netmfsc"; }

EmbedMode parse_embed_mode(const std::string& text) {
  if (text == "netmf") {
    return EmbedMode::netmf;
  }
  if (text == "netmfsc") {
    return EmbedMode::netmfsc;
  }
  throw DomainError("unknown embedding mode '" + text + "'");
}

DenseMatrix embedding_target(const Graph& g, const EmbedOptions& options) {
  if (options.mode == EmbedMode::netmf) {
    if (!options.limit) {
      return netmf_poly(g, options.walk);
    }
    const auto base = options.walk.geometric_base();
    if (!base) {
      throw PreconditionError("the W -> inf NetMF form needs geometric walk weights");
    }
    return limit_poly_g(g, *base);
  }
  if (options.limit) {
    return limit_poly_h(g, options.original_degrees);
  }
  return netmfsc_poly(g, options.original_degrees, options.walk.window());
}

Embedding embed_graph(const Graph& g, const EmbedOptions& options) {
  if (options.dim == 0 || options.dim > g.num_vertices()) {
    throw DomainError("embedding dimension " + std::to_string(options.dim) +
                      " exceeds the vertex count " + std::to_string(g.num_vertices()));
  }
  const std::uint64_t scale = options.log_scale.value_or(g.num_edges());
  const DenseMatrix target = embedding_target(g, options);
  return truncated_svd(truncated_log(target, scale), options.dim, g.vertices());
}

void write_embedding(const Embedding& e, std::ostream& out) {
  out << "# d=" << e.dim << '\n';
  for (std::size_t i = 0; i < e.ids.size(); ++i) {
    out << e.ids[i];
    for (double x : e.row(i)) {
      out << '\t' << format_double(x);
    }
    out << '\n';
  }
  if (!out) {
    throw Error("failed to write embedding");
  }
}

Embedding read_embedding(std::istream& in) {
  Embedding e;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    if (!have_header) {
      if (line.rfind("# d=", 0) != 0) {
        throw ParseError(line_no, "missing '# d=<d>' header");
      }
      e.dim = std::stoul(line.substr(4));
      have_header = true;
      continue;
    }
    std::istringstream fields(line);
    VertexId id = 0;
    if (!(fields >> id)) {
      throw ParseError(line_no, "missing vertex id");
    }
    e.ids.push_back(id);
    for (std::size_t k = 0; k < e.dim; ++k) {
      std::string tok;
      if (!(fields >> tok)) {
        throw ParseError(line_no, "expected " + std::to_string(e.dim) + " coordinates");
      }
      e.values.push_back(std::stod(tok));
    }
  }
  if (!have_header) {
    throw ParseError(line_no, "missing '# d=<d>' header");
  }
  return e;
}

}  // namespace gcoarse
