#include "gcoarse/synthetic.hpp"

#include <cmath>
#include <unordered_set>
#include <vector>

namespace gcoarse::synthetic {

namespace {

double log_uniform(double lo, double hi, SplitMix64& rng) {
  return lo * std::exp(rng.next_unit() * std::log(hi / lo));
}

}  // namespace

Graph random_connected_graph(const RandomGraphSpec& spec, SplitMix64& rng) {
  Graph g;
  const std::size_t n = spec.vertices;
  auto id = [&](std::size_t i) { return spec.first_id + static_cast<VertexId>(i) * spec.id_stride; };
  for (std::size_t i = 0; i < n; ++i) {
    g.add_vertex(id(i));
  }
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t parent = rng.next_below(i);
    g.add_edge(id(i), id(parent), log_uniform(spec.min_weight, spec.max_weight, rng));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.next_unit() < spec.extra_edge_probability && !g.has_edge(id(i), id(j))) {
        g.add_edge(id(i), id(j), log_uniform(spec.min_weight, spec.max_weight, rng));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.next_unit() < spec.slack_probability) {
      g.add_slack(id(i), rng.next_unit() * spec.max_slack);
    }
  }
  return g;
}

TerminalSet random_terminals(const Graph& g, double p, SplitMix64& rng) {
  const auto ids = g.vertices();
  std::vector<VertexId> picked;
  for (VertexId v : ids) {
    if (rng.next_unit() < p) {
      picked.push_back(v);
    }
  }
  if (picked.empty() && !ids.empty()) {
    picked.push_back(ids[rng.next_below(ids.size())]);
  }
  return TerminalSet(std::move(picked));
}

Graph two_block_graph(std::size_t n, double p_in, double p_out, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g;
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    g.add_vertex(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = (i < half) == (j < half);
      if (rng.next_unit() < (same ? p_in : p_out)) {
        g.add_edge(i, j, 1.0);
      }
    }
  }
  return g;
}

Graph random_sparse_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g;
  std::vector<VertexId> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    perm[i] = i;
  }
  shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g.add_edge(perm[i], perm[i + 1], 1.0);
  }
  while (g.num_edges() < m) {
    const VertexId u = rng.next_below(n);
    const VertexId v = rng.next_below(n);
    if (u != v && !g.has_edge(u, v)) {
      g.add_edge(u, v, 1.0);
    }
  }
  return g;
}

DenseMatrix random_sddm(std::size_t n, double density, SplitMix64& rng) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.next_unit() < density) {
        const double w = 2.0 * rng.next_unit();
        m(i, j) = -w;
        m(j, i) = -w;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        mass -= m(i, j);
      }
    }
    m(i, i) = mass + 0.1 + rng.next_unit();
  }
  return m;
}

}  // namespace gcoarse::synthetic
