#include "gcoarse/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gcoarse/coarsen.hpp"
#include "gcoarse/embed.hpp"
#include "gcoarse/errors.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/synthetic.hpp"

namespace gcoarse {

namespace {

using oracle::OracleReport;

constexpr double kExactTolerance = 1e-9;
constexpr double kExpectationTolerance = 0.02;
constexpr double kInverseTolerance = 1e-8;
constexpr double kGramTolerance = 1e-6;
constexpr double kSpectralGap = 1e-6;
constexpr double kTailTarget = 1e-6;

OracleReport make_report(std::string name, double tolerance,
                         std::string metric = "max_abs") {
  OracleReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.metric = std::move(metric);
  return r;
}

std::size_t pick(std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; }

std::size_t uniform_size(std::size_t lo, std::size_t hi, SplitMix64& rng) {
  return hi <= lo ? lo : lo + rng.next_below(hi - lo + 1);
}

std::vector<std::size_t> positions_of(const std::vector<VertexId>& sorted_ids,
                                      const std::vector<VertexId>& subset) {
  std::vector<std::size_t> pos;
  pos.reserve(subset.size());
  for (VertexId v : subset) {
    pos.push_back(static_cast<std::size_t>(
        std::lower_bound(sorted_ids.begin(), sorted_ids.end(), v) - sorted_ids.begin()));
  }
  return pos;
}

struct Instance {
  Graph graph;
  TerminalSet terminals;
};

// Connected weighted graph with random slack and random terminals; shared by
// the exactness, closure and work-bound checks.
Instance coarsening_instance(std::uint64_t seed, std::size_t index, std::size_t max_n) {
  SplitMix64 rng = stream_rng(seed, index);
  synthetic::RandomGraphSpec spec;
  spec.vertices = uniform_size(2, max_n, rng);
  spec.extra_edge_probability = 0.05 + 0.35 * rng.next_unit();
  spec.slack_probability = index % 4 == 0 ? 0.0 : 0.3;
  spec.first_id = 1 + index;
  spec.id_stride = 3;
  Graph g = synthetic::random_connected_graph(spec, rng);
  TerminalSet t = synthetic::random_terminals(g, 0.1 + 0.5 * rng.next_unit(), rng);
  return {std::move(g), std::move(t)};
}

std::vector<OracleReport> check_schur_oracle(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 200);
  const std::size_t max_n = pick(opt.max_vertices, 50);
  OracleReport r = make_report("schur-oracle", kExactTolerance);
  std::size_t preserved = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const Instance inst = coarsening_instance(opt.seed, i, max_n);
    const CoarsenResult out =
        schur_complement(inst.graph, inst.terminals, DegreeThreshold::infinity());
    if (out.graph.vertices() != inst.terminals.ids()) {
      r.max_abs_error = std::numeric_limits<double>::infinity();
      continue;
    }
    ++preserved;
    const auto ids = inst.graph.vertices();
    const DenseMatrix m = to_dense(inst.graph);
    const DenseMatrix expected = oracle::dense_schur(m, positions_of(ids, inst.terminals.ids()));
    const DenseMatrix actual = to_dense(out.graph);
    r.max_abs_error = std::max(r.max_abs_error, max_abs_difference(actual, expected));
    // Scaled by the input: a Laplacian reduced to one terminal is the zero
    // matrix, which has no useful relative error of its own.
    r.rel_frobenius_error =
        std::max(r.rel_frobenius_error, frobenius_norm(actual - expected) / frobenius_norm(m));
  }
  r.trials = instances;
  r.details = {{"instances", static_cast<double>(instances)},
               {"max_vertices", static_cast<double>(max_n)},
               {"terminal_sets_preserved", static_cast<double>(preserved)}};
  r.finalize();
  return {r};
}

std::vector<OracleReport> check_sddm_closure(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 200);
  const std::size_t max_n = pick(opt.max_vertices, 50);
  std::size_t steps = 0;
  std::size_t failures = 0;
  auto observer = [&](const Graph& work, VertexId) {
    ++steps;
    if (!oracle::is_sddm(to_dense(work))) {
      ++failures;
    }
  };
  for (std::size_t i = 0; i < instances; ++i) {
    const Instance inst = coarsening_instance(opt.seed, i, max_n);
    schur_complement(inst.graph, inst.terminals, DegreeThreshold::infinity(), observer);
    random_contraction(inst.graph, inst.terminals, DegreeThreshold::infinity(),
                       stream_rng(opt.seed, i).next(), observer);
  }
  OracleReport r = make_report("sddm-closure", 0.0);
  r.max_abs_error = static_cast<double>(failures);
  r.trials = steps;
  r.details = {{"instances", static_cast<double>(instances)},
               {"steps_checked", static_cast<double>(steps)},
               {"failures", static_cast<double>(failures)},
               {"sddm_tolerance", 1e-10}};
  r.finalize();
  return {r};
}

std::vector<OracleReport> check_expectation(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 20);
  const std::size_t max_n = pick(opt.max_vertices, 8);
  const std::size_t trials = std::max<std::size_t>(1, opt.trials);
  OracleReport rel = make_report("expectation", kExpectationTolerance, "rel_frobenius");
  // Frobenius error over its 3-standard-error envelope; must stay <= 1.
  OracleReport sigma = make_report("expectation-3sigma", 1.0);
  rel.trials = trials;
  sigma.trials = trials;
  for (std::size_t i = 0; i < instances; ++i) {
    SplitMix64 rng = stream_rng(opt.seed, i);
    synthetic::RandomGraphSpec spec;
    spec.vertices = uniform_size(3, max_n, rng);
    spec.extra_edge_probability = 0.2 + 0.5 * rng.next_unit();
    spec.slack_probability = 0.5;
    const Graph g = synthetic::random_connected_graph(spec, rng);
    const auto ids = g.vertices();
    const VertexId x = ids[rng.next_below(ids.size())];

    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (ids[k] != x) {
        keep.push_back(k);
      }
    }
    const DenseMatrix expected = oracle::dense_schur(to_dense(g), keep);
    const oracle::MonteCarloMean mc =
        oracle::monte_carlo_contraction_mean(g, x, trials, rng.next());

    const double abs_err = frobenius_norm(mc.mean - expected);
    const double envelope = 3.0 * frobenius_norm(mc.std_error) + 1e-12;
    rel.max_abs_error = std::max(rel.max_abs_error, max_abs_difference(mc.mean, expected));
    rel.rel_frobenius_error =
        std::max(rel.rel_frobenius_error, relative_frobenius_error(mc.mean, expected));
    sigma.max_abs_error = std::max(sigma.max_abs_error, abs_err / envelope);
  }
  rel.details = {{"instances", static_cast<double>(instances)},
                 {"max_vertices", static_cast<double>(max_n)}};
  sigma.details = rel.details;
  rel.finalize();
  sigma.finalize();
  return {rel, sigma};
}

std::vector<OracleReport> check_inverse_identity(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 100);
  const std::size_t max_n = pick(opt.max_vertices, 12);
  OracleReport r = make_report("inverse-identity", kInverseTolerance);
  for (std::size_t i = 0; i < instances; ++i) {
    SplitMix64 rng = stream_rng(opt.seed, i);
    const std::size_t n = uniform_size(2, max_n, rng);
    const DenseMatrix m = synthetic::random_sddm(n, 0.2 + 0.6 * rng.next_unit(), rng);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k) {
      if (rng.next_unit() < 0.5) {
        keep.push_back(k);
      }
    }
    if (keep.empty()) {
      keep.push_back(rng.next_below(n));
    }
    const DenseMatrix lhs = oracle::dense_inverse(oracle::dense_schur(m, keep));
    const DenseMatrix rhs = oracle::dense_inverse(m).submatrix(keep);
    r.max_abs_error = std::max(r.max_abs_error, max_abs_difference(lhs, rhs));
    r.rel_frobenius_error = std::max(r.rel_frobenius_error, relative_frobenius_error(lhs, rhs));
  }
  r.trials = instances;
  r.details = {{"instances", static_cast<double>(instances)},
               {"max_vertices", static_cast<double>(max_n)}};
  r.finalize();
  return {r};
}

std::vector<OracleReport> check_embedding_identity(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 50);
  const std::size_t max_n = pick(opt.max_vertices, 30);
  constexpr std::array<double, 3> kThetas{0.3, 0.5, 0.9};
  constexpr std::array<std::size_t, 2> kDims{2, 4};

  OracleReport gram = make_report("embedding-identity", kGramTolerance);
  OracleReport prelog = make_report("prelog-identity", kExactTolerance);
  std::size_t too_few_terminals = 0;
  std::size_t resampled = 0;
  std::size_t comparisons = 0;
  double min_gap = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < instances; ++i) {
    SplitMix64 rng = stream_rng(opt.seed, i);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 50) {
        throw Error("could not draw a spectrally separated instance");
      }
      synthetic::RandomGraphSpec spec;
      spec.vertices = uniform_size(std::min<std::size_t>(6, max_n), max_n, rng);
      spec.extra_edge_probability = 0.1 + 0.4 * rng.next_unit();
      const Graph g = synthetic::random_connected_graph(spec, rng);
      TerminalSet t = synthetic::random_terminals(g, 0.6, rng);
      if (t.size() <= kDims.back()) {
        ++too_few_terminals;
        continue;
      }
      const auto ids = g.vertices();
      const auto t_pos = positions_of(ids, t.ids());
      const std::uint64_t m = g.num_edges();

      struct Pair {
        DenseMatrix lhs;
        DenseMatrix rhs;
      };
      std::vector<Pair> pairs;
      bool separated = true;
      for (double theta : kThetas) {
        const DenseMatrix full = limit_poly_g(g, theta);
        const Graph h =
            schur_complement(apply_theta(g, theta), t, DegreeThreshold::infinity()).graph;
        const DenseMatrix lhs = truncated_log(full.submatrix(t_pos), m);
        const DenseMatrix rhs_raw = limit_poly_h(h, weighted_degrees(g, t.ids()));
        prelog.max_abs_error =
            std::max(prelog.max_abs_error, max_abs_difference(rhs_raw, full.submatrix(t_pos)));
        const auto spectrum = ranked_eigenvalues(lhs);
        for (std::size_t d : kDims) {
          const double gap = std::abs(spectrum[d - 1]) - std::abs(spectrum[d]);
          if (!(gap > kSpectralGap)) {
            separated = false;
          }
        }
        pairs.push_back({lhs, truncated_log(rhs_raw, m)});
      }
      if (!separated) {
        ++resampled;
        continue;
      }
      for (const Pair& p : pairs) {
        const auto spectrum = ranked_eigenvalues(p.lhs);
        for (std::size_t d : kDims) {
          min_gap = std::min(min_gap, std::abs(spectrum[d - 1]) - std::abs(spectrum[d]));
          const Embedding a = truncated_svd(p.lhs, d, t.ids());
          const Embedding b = truncated_svd(p.rhs, d, t.ids());
          const double dist = oracle::gram_distance(a, b);
          gram.max_abs_error = std::max(gram.max_abs_error, dist);
          gram.rel_frobenius_error =
              std::max(gram.rel_frobenius_error, dist / std::max(frobenius_norm(a.gram()), 1e-300));
          ++comparisons;
        }
      }
      break;
    }
  }
  gram.trials = comparisons;
  prelog.trials = instances * kThetas.size();
  gram.details = {{"instances", static_cast<double>(instances)},
                  {"resampled_small_terminal_set", static_cast<double>(too_few_terminals)},
                  {"resampled_spectral_gap", static_cast<double>(resampled)},
                  {"min_spectral_gap", min_gap},
                  {"required_gap", kSpectralGap}};
  prelog.details = {{"instances", static_cast<double>(instances)}};
  gram.finalize();
  prelog.finalize();
  return {gram, prelog};
}

std::vector<OracleReport> check_contraction_bounds(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 200);
  const std::size_t max_n = pick(opt.max_vertices, 50);
  // Checked error: work / (2 m H_n), which the min-degree argument keeps <= 1.
  OracleReport r = make_report("contraction-bounds", 1.0);
  double fitted_c = 0.0;
  std::size_t edge_violations = 0;
  std::size_t degree_violations = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    const Instance inst = coarsening_instance(opt.seed, i, max_n);
    const CoarsenResult out = random_contraction(inst.graph, inst.terminals,
                                                 DegreeThreshold::infinity(),
                                                 stream_rng(opt.seed, i).next());
    const double m = static_cast<double>(inst.graph.num_edges());
    const std::size_t n = inst.graph.num_vertices();
    double harmonic = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      harmonic += 1.0 / static_cast<double>(k);
    }
    const double work = static_cast<double>(out.stats.adjacency_work);
    if (m > 0) {
      r.max_abs_error = std::max(r.max_abs_error, work / (2.0 * m * harmonic));
      if (n >= 2) {
        fitted_c = std::max(fitted_c, work / (m * std::log(static_cast<double>(n))));
      }
    }
    if (out.stats.max_edges_seen > out.stats.initial_edges) {
      ++edge_violations;
    }
    degree_violations += out.stats.degree_bound_violations;
  }
  if (edge_violations > 0 || degree_violations > 0) {
    r.max_abs_error = std::numeric_limits<double>::infinity();
  }
  r.trials = instances;
  r.details = {{"instances", static_cast<double>(instances)},
               {"fitted_c", fitted_c},
               {"edge_bound_violations", static_cast<double>(edge_violations)},
               {"degree_bound_violations", static_cast<double>(degree_violations)}};
  r.finalize();
  return {r};
}

std::vector<OracleReport> check_tail_convergence(const VerifyOptions& opt) {
  const std::size_t instances = pick(opt.instances, 20);
  const std::size_t max_n = pick(opt.max_vertices, 30);
  constexpr std::array<double, 3> kThetas{0.3, 0.5, 0.9};
  OracleReport tail = make_report("tail-convergence", kTailTarget);
  OracleReport mono = make_report("tail-monotone", 0.0);
  std::size_t max_window = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    SplitMix64 rng = stream_rng(opt.seed, i);
    synthetic::RandomGraphSpec spec;
    spec.vertices = uniform_size(3, max_n, rng);
    spec.extra_edge_probability = 0.1 + 0.4 * rng.next_unit();
    const Graph g = synthetic::random_connected_graph(spec, rng);
    const double theta = kThetas[i % kThetas.size()];

    double inv_sum = 0.0;
    double d_min = std::numeric_limits<double>::infinity();
    for (VertexId v : g.vertices()) {
      const double d = g.weighted_degree(v);
      inv_sum += 1.0 / d;
      d_min = std::min(d_min, d);
    }
    // ||D^{-1}(A D^{-1})^i||_F <= ||D^{-1/2}||_F ||D^{-1/2}||_2 for every i.
    const double c = std::sqrt(inv_sum / d_min);
    const double w_star = std::ceil(std::log(kTailTarget * (1.0 - theta) / c) / std::log(theta));
    const std::size_t window = static_cast<std::size_t>(std::max(1.0, w_star));
    max_window = std::max(max_window, window);

    const DenseMatrix limit = limit_poly_g(g, theta);
    double previous = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (std::size_t w = 1; w <= window; ++w) {
      last = frobenius_norm(netmf_poly(g, WalkParams::geometric(theta, w)) - limit);
      if (last > previous) {
        ++violations;
      }
      previous = last;
    }
    tail.max_abs_error = std::max(tail.max_abs_error, last);
  }
  tail.trials = instances;
  mono.trials = instances;
  mono.max_abs_error = static_cast<double>(violations);
  tail.details = {{"instances", static_cast<double>(instances)},
                  {"max_window", static_cast<double>(max_window)}};
  mono.details = {{"instances", static_cast<double>(instances)},
                  {"increases", static_cast<double>(violations)}};
  tail.finalize();
  mono.finalize();
  return {tail, mono};
}

}  // namespace

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names{
      "schur-oracle",       "sddm-closure",       "expectation",     "inverse-identity",
      "embedding-identity", "contraction-bounds", "tail-convergence"};
  return names;
}

bool is_verify_check(const std::string& name) {
  const auto& names = verify_check_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<oracle::OracleReport> run_verify_check(const std::string& name,
                                                   const VerifyOptions& options) {
  if (name == "schur-oracle") return check_schur_oracle(options);
  if (name == "sddm-closure") return check_sddm_closure(options);
  if (name == "expectation") return check_expectation(options);
  if (name == "inverse-identity") return check_inverse_identity(options);
  if (name == "embedding-identity") return check_embedding_identity(options);
  if (name == "contraction-bounds") return check_contraction_bounds(options);
  if (name == "tail-convergence") return check_tail_convergence(options);
  throw DomainError("unknown check '" + name + "'");
}

}  // namespace gcoarse
