#include "gcoarse/coarsen.hpp"

#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "gcoarse/errors.hpp"

namespace gcoarse {

namespace {

std::uint64_t schur_step(Graph& g, VertexId x) {
  const auto span = g.neighbors(x);
  const std::vector<Neighbor> nbrs(span.begin(), span.end());
  const double slack_x = g.slack(x);
  const double pivot = g.augmented_degree(x);
  if (!(pivot > 0.0)) {
    throw DegenerateVertexError("vertex " + std::to_string(x) +
                                " has zero degree and zero slack");
  }

  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      const double w = nbrs[i].weight * nbrs[j].weight / pivot;
      if (w > 0.0) {
        g.add_edge(nbrs[i].id, nbrs[j].id, w);
      }
    }
  }
  if (slack_x > 0.0) {
    for (const Neighbor& nb : nbrs) {
      g.add_slack(nb.id, nb.weight * slack_x / pivot);
    }
  }
  g.remove_vertex(x);

  const std::uint64_t deg = nbrs.size();
  return deg == 0 ? 0 : deg + deg * (deg - 1) / 2;
}

VertexId contract_step(Graph& g, VertexId x, SplitMix64& rng) {
  const auto span = g.neighbors(x);
  const std::vector<Neighbor> nbrs(span.begin(), span.end());
  if (nbrs.empty()) {
    throw DegenerateVertexError("vertex " + std::to_string(x) +
                                " has no neighbor to contract into");
  }
  double degree = 0.0;
  for (const Neighbor& nb : nbrs) {
    degree += nb.weight;
  }
  const double slack_x = g.slack(x);
  const double augmented = degree + slack_x;

  if (slack_x > 0.0) {
    for (const Neighbor& nb : nbrs) {
      g.add_slack(nb.id, nb.weight * slack_x / augmented);
    }
  }

  // Prefix-sum scan; the last neighbor absorbs any rounding at the top end.
  const double target = rng.next_unit() * degree;
  std::size_t chosen = nbrs.size() - 1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    cumulative += nbrs[i].weight;
    if (target < cumulative) {
      chosen = i;
      break;
    }
  }

  const VertexId u = nbrs[chosen].id;
  const double w_xu = nbrs[chosen].weight;
  const double scale = degree / augmented;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (i == chosen) {
      continue;
    }
    const double w_xv = nbrs[i].weight;
    const double w = w_xu * w_xv / (w_xu + w_xv) * scale;
    if (w > 0.0) {
      g.add_edge(u, nbrs[i].id, w);
    }
  }
  g.remove_vertex(x);
  return u;
}

using StepFn = std::function<std::uint64_t(Graph&, VertexId, std::size_t step)>;

CoarsenResult eliminate_until(const Graph& g, const TerminalSet& terminals,
                              const DegreeThreshold& delta, const StepFn& step,
                              bool enforce_edge_bound, const StepObserver& observer) {
  terminals.validate_against(g);
  const auto start = std::chrono::steady_clock::now();

  CoarsenResult result{g, {}};
  Graph& work = result.graph;
  CoarsenStats& stats = result.stats;
  stats.initial_vertices = g.num_vertices();
  stats.initial_edges = g.num_edges();
  stats.max_edges_seen = g.num_edges();

  DegreeBucketQueue queue(work, terminals);
  std::vector<VertexId> touched;
  std::size_t k = 0;
  while (auto popped = queue.pop_min_below(delta)) {
    const VertexId x = *popped;
    const std::size_t deg = work.degree(x);
    const std::size_t remaining_nonterminals = queue.size() + 1;
    if (deg * remaining_nonterminals > 2 * work.num_edges()) {
      ++stats.degree_bound_violations;
    }

    if (deg == 0) {
      if (work.slack(x) == 0.0) {
        stats.warnings.push_back("vertex " + std::to_string(x) +
                                 " is isolated with zero slack; deleted");
      }
      work.remove_vertex(x);
      ++stats.degenerate_removed;
    } else {
      touched.clear();
      for (const Neighbor& nb : work.neighbors(x)) {
        touched.push_back(nb.id);
      }
      stats.adjacency_work += step(work, x, k);
      for (VertexId v : touched) {
        if (queue.contains(v)) {
          queue.update(v, work.degree(v));
        }
      }
    }

    ++stats.eliminated;
    stats.step_degrees.push_back(deg);
    stats.max_edges_seen = std::max(stats.max_edges_seen, work.num_edges());
    if (enforce_edge_bound && work.num_edges() > stats.initial_edges) {
      throw std::logic_error("random contraction increased the edge count");
    }
    if (observer) {
      observer(work, x);
    }
    ++k;
  }

  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

std::string to_string(CoarsenMethod method) {
  return method == CoarsenMethod::schur ? "schur" : "contract";
}

CoarsenMethod parse_coarsen_method(const std::string& text) {
  if (text == "schur") {
    return CoarsenMethod::schur;
  }
  if (text == "contract") {
    return CoarsenMethod::contract;
  }
  throw DomainError("unknown coarsening method '" + text + "'");
}

std::uint64_t eliminate_vertex_schur_in_place(Graph& g, VertexId x) {
  if (!g.contains(x)) {
    throw DomainError("vertex " + std::to_string(x) + " is not in the graph");
  }
  return schur_step(g, x);
}

Graph eliminate_vertex_schur(Graph g, VertexId x) {
  eliminate_vertex_schur_in_place(g, x);
  return g;
}

VertexId contract_vertex_in_place(Graph& g, VertexId x, SplitMix64& rng) {
  if (!g.contains(x)) {
    throw DomainError("vertex " + std::to_string(x) + " is not in the graph");
  }
  return contract_step(g, x, rng);
}

Graph contract_vertex(Graph g, VertexId x, SplitMix64& rng) {
  contract_vertex_in_place(g, x, rng);
  return g;
}

CoarsenResult schur_complement(const Graph& g, const TerminalSet& terminals,
                               const DegreeThreshold& delta, const StepObserver& observer) {
  return eliminate_until(
      g, terminals, delta, [](Graph& work, VertexId x, std::size_t) { return schur_step(work, x); },
      false, observer);
}

CoarsenResult random_contraction(const Graph& g, const TerminalSet& terminals,
                                 const DegreeThreshold& delta, std::uint64_t seed,
                                 const StepObserver& observer) {
  return eliminate_until(
      g, terminals, delta,
      [seed](Graph& work, VertexId x, std::size_t k) -> std::uint64_t {
        const std::uint64_t deg = work.degree(x);
        SplitMix64 rng = stream_rng(seed, k);
        contract_step(work, x, rng);
        return deg;
      },
      true, observer);
}

CoarsenResult coarsen(const Graph& g, const TerminalSet& terminals, const CoarsenConfig& config,
                      const StepObserver& observer) {
  if (config.method == CoarsenMethod::schur) {
    return schur_complement(g, terminals, config.delta, observer);
  }
  return random_contraction(g, terminals, config.delta, config.seed, observer);
}

std::string run_report_json(const CoarsenResult& result, const CoarsenConfig& config,
                            bool include_timing) {
  const CoarsenStats& s = result.stats;
  std::size_t max_step_degree = 0;
  for (std::size_t d : s.step_degrees) {
    max_step_degree = std::max(max_step_degree, d);
  }
  nlohmann::ordered_json report;
  report["method"] = to_string(config.method);
  report["delta"] = config.delta.to_string();
  if (config.method == CoarsenMethod::contract) {
    report["seed"] = config.seed;
  }
  report["initial_vertices"] = s.initial_vertices;
  report["initial_edges"] = s.initial_edges;
  report["vertices_eliminated"] = s.eliminated;
  report["degenerate_removed"] = s.degenerate_removed;
  report["final_vertices"] = result.graph.num_vertices();
  report["final_edges"] = result.graph.num_edges();
  report["max_edges_seen"] = s.max_edges_seen;
  report["adjacency_work"] = s.adjacency_work;
  report["max_step_degree"] = max_step_degree;
  report["step_degrees"] = s.step_degrees;
  report["warnings"] = s.warnings;
  if (include_timing) {
    report["wall_seconds"] = s.wall_seconds;
  }
  return report.dump(2) + "\n";
}

}  // namespace gcoarse
