#include "gcoarse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "gcoarse/coarsen.hpp"
#include "gcoarse/errors.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/rng.hpp"

namespace gcoarse::oracle {

DenseMatrix dense_schur(const DenseMatrix& m, std::span<const std::size_t> keep,
                        std::span<const std::size_t> order) {
  const std::size_t n = m.size();
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n || kept[k]) {
      throw DomainError("keep set must list distinct indices below " + std::to_string(n));
    }
    kept[k] = true;
  }
  std::vector<std::size_t> pivots;
  if (order.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!kept[i]) {
        pivots.push_back(i);
      }
    }
  } else {
    pivots.assign(order.begin(), order.end());
    std::vector<std::size_t> sorted = pivots;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < n; ++i) {
      if (!kept[i]) {
        expected.push_back(i);
      }
    }
    if (sorted != expected) {
      throw DomainError("elimination order must list exactly the eliminated indices");
    }
  }

  // Work on the full matrix; alive[] tracks the rows still present.
  DenseMatrix a = m;
  std::vector<bool> alive(n, true);
  for (std::size_t x : pivots) {
    const double pivot = a(x, x);
    if (pivot == 0.0) {
      throw SingularMatrixError("zero pivot at index " + std::to_string(x));
    }
    alive[x] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || a(i, x) == 0.0) {
        continue;
      }
      const double factor = a(i, x) / pivot;
      for (std::size_t j = 0; j < n; ++j) {
        if (alive[j]) {
          a(i, j) -= factor * a(x, j);
        }
      }
    }
  }

  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < n; ++i) {
    if (kept[i]) {
      remaining.push_back(i);
    }
  }
  return a.submatrix(remaining);
}

DenseMatrix dense_inverse(const DenseMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix a = m;
  DenseMatrix inv = DenseMatrix::identity(n);
  double scale = 0.0;
  for (double x : m.data()) {
    scale = std::max(scale, std::abs(x));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(best, col))) {
        best = r;
      }
    }
    if (std::abs(a(best, col)) <= 1e-14 * scale) {
      throw SingularMatrixError("matrix is singular to working precision");
    }
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(best, j));
        std::swap(inv(col, j), inv(best, j));
      }
    }
    const double p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0.0) {
        continue;
      }
      const double f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += m(i, k) * inv(k, j);
      }
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  if (!(worst <= 1e-9)) {
    throw SingularMatrixError("inverse check failed: max |M M^-1 - I| = " + std::to_string(worst));
  }
  return inv;
}

SddmVerdict is_sddm(const DenseMatrix& m, double tol) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double slack_tol = tol * std::max(1.0, std::abs(m(i, i)));
    double off_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      if (std::abs(m(i, j) - m(j, i)) > slack_tol) {
        return {false, i, "not symmetric"};
      }
      if (m(i, j) > slack_tol) {
        return {false, i, "positive off-diagonal entry"};
      }
      off_sum += m(i, j);
    }
    if (m(i, i) < -off_sum - slack_tol) {
      return {false, i, "diagonal dominance violated"};
    }
  }
  return {};
}

std::vector<double> jacobi_eigenvalues(const DenseMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix a = m;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        off += a(i, j) * a(i, j);
      }
    }
    if (off < 1e-30 * std::max(1.0, frobenius_norm(a))) {
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) {
          continue;
        }
        const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) {
    eig[i] = a(i, i);
  }
  std::sort(eig.begin(), eig.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
  return eig;
}

MonteCarloMean monte_carlo_contraction_mean(const Graph& g, VertexId x, std::size_t trials,
                                            std::uint64_t seed) {
  if (trials == 0) {
    throw DomainError("need at least one trial");
  }
  if (g.degree(x) == 0) {
    throw DegenerateVertexError("vertex " + std::to_string(x) + " has no neighbors");
  }
  std::vector<VertexId> order;
  for (VertexId v : g.vertices()) {
    if (v != x) {
      order.push_back(v);
    }
  }
  const std::size_t n = order.size();

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<DenseMatrix> sums(chunks, DenseMatrix(n));
  std::vector<DenseMatrix> squares(chunks, DenseMatrix(n));

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(trials, begin + kChunk);
    for (std::size_t t = begin; t < end; ++t) {
      Graph h = g;
      SplitMix64 rng = stream_rng(seed, t);
      contract_vertex_in_place(h, x, rng);
      const DenseMatrix sample = to_dense(h, order);
      for (std::size_t k = 0; k < n * n; ++k) {
        const double v = sample.data()[k];
        sums[c](k / n, k % n) += v;
        squares[c](k / n, k % n) += v * v;
      }
    }
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(chunks, std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      run_chunk(c);
    }
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) {
          run_chunk(c);
        }
      });
    }
  }

  DenseMatrix sum(n);
  DenseMatrix sq(n);
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sq += squares[c];
  }
  const double count = static_cast<double>(trials);
  MonteCarloMean out{order, sum * (1.0 / count), DenseMatrix(n), trials};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double mu = out.mean(i, j);
      const double var = trials > 1 ? std::max(0.0, (sq(i, j) - count * mu * mu) / (count - 1.0))
                                    : 0.0;
      out.std_error(i, j) = std::sqrt(var / count);
    }
  }
  return out;
}

double gram_distance(const Embedding& a, const Embedding& b) {
  if (a.ids != b.ids || a.dim != b.dim) {
    throw DomainError("embeddings differ in vertex set or dimension");
  }
  const std::size_t n = a.ids.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double ga = 0.0;
      double gb = 0.0;
      for (std::size_t k = 0; k < a.dim; ++k) {
        ga += a.values[i * a.dim + k] * a.values[j * a.dim + k];
        gb += b.values[i * b.dim + k] * b.values[j * b.dim + k];
      }
      sum += (ga - gb) * (ga - gb);
    }
  }
  return std::sqrt(sum);
}

void OracleReport::finalize() {
  const double err = metric == "rel_frobenius" ? rel_frobenius_error : max_abs_error;
  pass = std::isfinite(err) && err <= tolerance;
}

std::string OracleReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["pass"] = pass;
  j["metric"] = metric;
  j["tolerance"] = tolerance;
  j["max_abs_error"] = max_abs_error;
  j["rel_frobenius_error"] = rel_frobenius_error;
  j["trials"] = trials;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  for (const auto& [key, value] : details) {
    extra[key] = value;
  }
  j["details"] = extra;
  return j.dump();
}

}  // namespace gcoarse::oracle
