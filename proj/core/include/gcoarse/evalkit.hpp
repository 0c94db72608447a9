#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcoarse/coarsen.hpp"
#include "gcoarse/embed.hpp"
#include "gcoarse/graph.hpp"

namespace gcoarse {

struct EdgeSplit {
  /// Input graph minus the positive edges; stays connected.
  Graph train_graph;
  /// Removed terminal-terminal edges, each with u < v.
  std::vector<VertexPair> positives;
  /// Distinct non-adjacent terminal pairs, as many as positives.
  std::vector<VertexPair> negatives;
  std::uint64_t seed = 0;
};

/// Shuffles the terminal-terminal edges of g with the seed and removes each
/// one whose removal keeps the graph connected, until floor(ratio * count)
/// edges are gone or the candidates run out. Returns the removed edges in
/// removal order. `g` is left as the reduced graph.
///
/// Throws DomainError for ratio outside (0,1) and PreconditionError if g is
/// not connected.
std::vector<VertexPair> select_removable_edges(Graph& g, const TerminalSet& terminals,
                                               double ratio, std::uint64_t seed);

/// `count` distinct terminal pairs (u < v) that are not edges of g, drawn
/// uniformly. Throws Error after 100 * count draws without finishing.
std::vector<VertexPair> sample_negative_pairs(const Graph& g, const TerminalSet& terminals,
                                              std::size_t count, std::uint64_t seed);

/// select_removable_edges followed by negative sampling on the input graph.
/// Throws PreconditionError when no edge can be removed.
EdgeSplit split_edges(const Graph& g, const TerminalSet& terminals, double ratio,
                      std::uint64_t seed);

enum class EdgeOperator { hadamard, weighted_l2 };

std::string to_string(EdgeOperator op);
EdgeOperator parse_edge_operator(const std::string& text);

/// One feature row per pair, flattened row-major (pairs.size() x dim).
/// Throws DomainError when an endpoint has no embedding row.
std::vector<double> edge_features(const Embedding& r, std::span<const VertexPair> pairs,
                                  EdgeOperator op);

struct LogRegHyper {
  double l2 = 1e-4;
  std::size_t epochs = 500;
  double step = 0.1;
  /// Step at epoch t is step / (1 + decay * t).
  double decay = 0.01;
  bool standardize = true;
};

struct LinkModel {
  std::vector<double> weights;
  double bias = 0.0;
  EdgeOperator op = EdgeOperator::hadamard;
  LogRegHyper hyper;
  /// Standardization applied before the linear score (identity when off).
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  double final_gradient_norm = 0.0;

  /// Probability of the positive class for one raw feature row.
  double predict(std::span<const double> features) const;
};

/// Mean logistic loss plus (l2 / 2) ||w||^2 over rows of `x` (n x dim).
/// `params` holds the weights followed by the bias; `gradient` is resized
/// to match.
double logistic_loss(std::span<const double> x, std::span<const int> labels, std::size_t dim,
                     std::span<const double> params, double l2, std::vector<double>* gradient);

/// Full-batch gradient descent on the regularized logistic loss. Labels are
/// 0/1. Throws PreconditionError unless both classes are present.
LinkModel train_logreg(std::span<const double> x, std::span<const int> labels, std::size_t dim,
                       const LogRegHyper& hyper = {});

/// Mann-Whitney AUC with average ranks for ties. Throws PreconditionError
/// unless both classes are present.
double auc_score(std::span<const double> scores, std::span<const int> labels);

struct EvalConfig {
  double ratio = 0.5;
  /// Explicit terminals; otherwise each vertex is a terminal with
  /// probability terminal_fraction (1 keeps every vertex).
  std::optional<TerminalSet> terminals;
  double terminal_fraction = 1.0;
  /// Coarsen the training graph onto the terminals before embedding.
  std::optional<CoarsenConfig> coarsen;
  double theta = 0.5;
  std::size_t window = 1;
  std::size_t dim = 128;
  EdgeOperator op = EdgeOperator::hadamard;
  LogRegHyper hyper;
  std::uint64_t seed = 0;
};

struct Prediction {
  VertexPair pair;
  double score = 0.0;
  int label = 0;
};

struct EvalResult {
  double auc = 0.0;
  std::size_t terminals = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t train_examples = 0;
  std::size_t test_examples = 0;
  std::size_t embedded_vertices = 0;
  std::size_t embedding_dim = 0;
  double final_gradient_norm = 0.0;
  double train_accuracy = 0.0;
  std::vector<Prediction> test_predictions;
  EdgeSplit split;
};

/// split -> optional coarsening -> embedding -> edge features -> logistic
/// regression -> AUC on a stratified half of the examples.
///
/// Per-stage seeds are stream_rng(seed, k).next() with k = 0 terminals,
/// 1 split, 2 coarsening, 3 train/test shuffle.
EvalResult run_link_prediction(const Graph& g, const EvalConfig& config);

/// Ordered JSON report, pretty-printed, ending in a newline.
std::string eval_report_json(const EvalResult& result, const EvalConfig& config);

/// `u <TAB> v` per line.
void write_pairs(std::span<const VertexPair> pairs, std::ostream& out);

/// `u <TAB> v <TAB> score <TAB> label` per line.
void write_predictions(std::span<const Prediction> predictions, std::ostream& out);

}  // namespace gcoarse
