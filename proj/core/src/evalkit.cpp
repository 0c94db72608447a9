#include "gcoarse/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <set>
#include <unordered_set>

#include "gcoarse/edge_list.hpp"
#include "gcoarse/errors.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/rng.hpp"
#include <json.hpp>

namespace gcoarse {

namespace {

bool reachable(const Graph& g, VertexId from, VertexId to) {
  std::unordered_set<VertexId> seen{from};
  std::deque<VertexId> frontier{from};
  while (!frontier.empty()) {
    const VertexId x = frontier.front();
    frontier.pop_front();
    for (const Neighbor& nb : g.neighbors(x)) {
      if (nb.id == to) {
        return true;
      }
      if (seen.insert(nb.id).second) {
        frontier.push_back(nb.id);
      }
    }
  }
  return false;
}

VertexPair ordered(VertexId a, VertexId b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void require_both_classes(std::span<const int> labels) {
  const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), 0) != labels.end();
  if (!has_pos || !has_neg) {
    throw PreconditionError("labels must contain both classes");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw DomainError("labels must be 0 or 1");
    }
  }
}

TerminalSet pick_terminals(const Graph& g, const EvalConfig& config) {
  if (config.terminals) {
    config.terminals->validate_against(g);
    return *config.terminals;
  }
  if (!(config.terminal_fraction > 0.0 && config.terminal_fraction <= 1.0)) {
    throw DomainError("terminal fraction must lie in (0, 1]");
  }
  std::vector<VertexId> ids = g.vertices();
  const auto count = static_cast<std::size_t>(
      std::llround(config.terminal_fraction * static_cast<double>(ids.size())));
  SplitMix64 rng = stream_rng(config.seed, 0);
  shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::max<std::size_t>(count, 1));
  return TerminalSet(std::move(ids));
}

}  // namespace

std::vector<VertexPair> select_removable_edges(Graph& g, const TerminalSet& terminals,
                                               double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw DomainError("split ratio must lie in (0, 1)");
  }
  if (!is_connected(g)) {
    throw PreconditionError("input graph is not connected");
  }
  std::vector<VertexPair> candidates;
  for (const auto& e : g.edges()) {
    if (terminals.contains(e.u) && terminals.contains(e.v)) {
      candidates.push_back({e.u, e.v});
    }
  }
  SplitMix64 rng = stream_rng(seed, 0);
  shuffle(candidates.begin(), candidates.end(), rng);
  const auto target =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(candidates.size())));

  std::vector<VertexPair> removed;
  for (const VertexPair& p : candidates) {
    if (removed.size() >= target) {
      break;
    }
    const double w = g.remove_edge(p.u, p.v);
    if (reachable(g, p.u, p.v)) {
      removed.push_back(p);
    } else {
      g.add_edge(p.u, p.v, w);
    }
  }
  return removed;
}

std::vector<VertexPair> sample_negative_pairs(const Graph& g, const TerminalSet& terminals,
                                              std::size_t count, std::uint64_t seed) {
  const auto& ids = terminals.ids();
  std::vector<VertexPair> out;
  if (count == 0) {
    return out;
  }
  if (ids.size() < 2) {
    throw PreconditionError("need at least two terminals to sample pairs");
  }
  SplitMix64 rng = stream_rng(seed, 1);
  std::set<VertexPair> chosen;
  const std::size_t max_draws = 100 * count;
  for (std::size_t draw = 0; draw < max_draws && out.size() < count; ++draw) {
    const VertexId a = ids[rng.next_below(ids.size())];
    const VertexId b = ids[rng.next_below(ids.size())];
    if (a == b || g.has_edge(a, b)) {
      continue;
    }
    const VertexPair p = ordered(a, b);
    if (chosen.insert(p).second) {
      out.push_back(p);
    }
  }
  if (out.size() < count) {
    throw Error("could not sample " + std::to_string(count) + " distinct non-adjacent pairs in " +
                std::to_string(max_draws) + " draws");
  }
  return out;
}

EdgeSplit split_edges(const Graph& g, const TerminalSet& terminals, double ratio,
                      std::uint64_t seed) {
  terminals.validate_against(g);
  EdgeSplit split;
  split.seed = seed;
  split.train_graph = g;
  split.positives = select_removable_edges(split.train_graph, terminals, ratio, seed);
  if (split.positives.empty()) {
    throw PreconditionError("no removable edges");
  }
  split.negatives = sample_negative_pairs(g, terminals, split.positives.size(), seed);
  return split;
}

std::string to_string(EdgeOperator op) {
  return op == EdgeOperator::hadamard ? "hadamard" : "weighted_l2";
}

EdgeOperator parse_edge_operator(const std::string& text) {
  if (text == "hadamard") return EdgeOperator::hadamard;
  if (text == "weighted_l2" || text == "weighted-l2") return EdgeOperator::weighted_l2;
  throw DomainError("unknown edge operator '" + text + "'");
}

std::vector<double> edge_features(const Embedding& r, std::span<const VertexPair> pairs,
                                  EdgeOperator op) {
  std::vector<double> out;
  out.reserve(pairs.size() * r.dim);
  for (const VertexPair& p : pairs) {
    const auto iu = r.index_of(p.u);
    const auto iv = r.index_of(p.v);
    if (!iu || !iv) {
      throw DomainError("vertex " + std::to_string(iu ? p.v : p.u) + " has no embedding row");
    }
    const auto a = r.row(*iu);
    const auto b = r.row(*iv);
    for (std::size_t k = 0; k < r.dim; ++k) {
      if (op == EdgeOperator::hadamard) {
        out.push_back(a[k] * b[k]);
      } else {
        const double diff = a[k] - b[k];
        out.push_back(diff * diff);
      }
    }
  }
  return out;
}

double LinkModel::predict(std::span<const double> features) const {
  double z = bias;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    z += weights[k] * (features[k] - feature_mean[k]) / feature_scale[k];
  }
  return sigmoid(z);
}

double logistic_loss(std::span<const double> x, std::span<const int> labels, std::size_t dim,
                     std::span<const double> params, double l2, std::vector<double>* gradient) {
  const std::size_t n = labels.size();
  if (x.size() != n * dim || params.size() != dim + 1) {
    throw DomainError("logistic_loss: shape mismatch");
  }
  if (gradient) {
    gradient->assign(dim + 1, 0.0);
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.data() + i * dim;
    double z = params[dim];
    for (std::size_t k = 0; k < dim; ++k) {
      z += params[k] * row[k];
    }
    loss += softplus(z) - labels[i] * z;
    if (gradient) {
      const double r = sigmoid(z) - labels[i];
      for (std::size_t k = 0; k < dim; ++k) {
        (*gradient)[k] += r * row[k];
      }
      (*gradient)[dim] += r;
    }
  }
  const double inv_n = n == 0 ? 0.0 : 1.0 / static_cast<double>(n);
  loss *= inv_n;
  double norm2 = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    norm2 += params[k] * params[k];
  }
  loss += 0.5 * l2 * norm2;
  if (gradient) {
    for (std::size_t k = 0; k < dim; ++k) {
      (*gradient)[k] = (*gradient)[k] * inv_n + l2 * params[k];
    }
    (*gradient)[dim] *= inv_n;
  }
  return loss;
}

LinkModel train_logreg(std::span<const double> x, std::span<const int> labels, std::size_t dim,
                       const LogRegHyper& hyper) {
  require_both_classes(labels);
  const std::size_t n = labels.size();
  if (x.size() != n * dim) {
    throw DomainError("feature matrix does not match the label count");
  }
  LinkModel model;
  model.hyper = hyper;
  model.feature_mean.assign(dim, 0.0);
  model.feature_scale.assign(dim, 1.0);
  if (hyper.standardize) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        model.feature_mean[k] += x[i * dim + k];
      }
    }
    for (double& mu : model.feature_mean) {
      mu /= static_cast<double>(n);
    }
    std::vector<double> var(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = x[i * dim + k] - model.feature_mean[k];
        var[k] += d * d;
      }
    }
    for (std::size_t k = 0; k < dim; ++k) {
      const double sd = std::sqrt(var[k] / static_cast<double>(n));
      model.feature_scale[k] = sd > 0 ? sd : 1.0;
    }
  }
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      z[i * dim + k] = (x[i * dim + k] - model.feature_mean[k]) / model.feature_scale[k];
    }
  }

  std::vector<double> params(dim + 1, 0.0);
  std::vector<double> grad;
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    logistic_loss(z, labels, dim, params, hyper.l2, &grad);
    const double step = hyper.step / (1.0 + hyper.decay * static_cast<double>(epoch));
    for (std::size_t k = 0; k <= dim; ++k) {
      params[k] -= step * grad[k];
    }
  }
  logistic_loss(z, labels, dim, params, hyper.l2, &grad);
  double gnorm = 0.0;
  for (double gk : grad) {
    gnorm += gk * gk;
  }
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw Error("logistic regression diverged");
    }
  }
  model.final_gradient_norm = std::sqrt(gnorm);
  model.bias = params[dim];
  params.pop_back();
  model.weights = std::move(params);
  return model;
}

double auc_score(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw DomainError("scores and labels differ in length");
  }
  require_both_classes(labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  double n_pos = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      ++j;
    }
    // Ranks i+1..j share their average.
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        rank_sum += avg;
        n_pos += 1.0;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

EvalResult run_link_prediction(const Graph& g, const EvalConfig& config) {
  const TerminalSet terminals = pick_terminals(g, config);
  EvalResult result;
  result.terminals = terminals.size();
  result.split = split_edges(g, terminals, config.ratio, stream_rng(config.seed, 1).next());
  const EdgeSplit& split = result.split;
  result.positives = split.positives.size();
  result.negatives = split.negatives.size();

  Embedding emb;
  if (config.coarsen) {
    CoarsenConfig cc = *config.coarsen;
    cc.seed = stream_rng(config.seed, 2).next();
    const Graph scaled = apply_theta(split.train_graph, config.theta);
    const Graph h = coarsen(scaled, terminals, cc).graph;
    EmbedOptions opt;
    opt.mode = EmbedMode::netmfsc;
    opt.walk = WalkParams::geometric(config.theta, config.window);
    opt.dim = config.dim;
    opt.original_degrees = weighted_degrees(split.train_graph);
    emb = embed_graph(h, opt);
  } else {
    EmbedOptions opt;
    opt.mode = EmbedMode::netmf;
    opt.walk = WalkParams::geometric(config.theta, config.window);
    opt.dim = config.dim;
    emb = embed_graph(split.train_graph, opt);
  }
  result.embedded_vertices = emb.ids.size();
  result.embedding_dim = emb.dim;

  // Stratified halves: each class is shuffled and split on its own.
  SplitMix64 rng = stream_rng(config.seed, 3);
  std::vector<VertexPair> pos = split.positives;
  std::vector<VertexPair> neg = split.negatives;
  shuffle(pos.begin(), pos.end(), rng);
  shuffle(neg.begin(), neg.end(), rng);
  std::vector<VertexPair> train_pairs;
  std::vector<int> train_labels;
  std::vector<VertexPair> test_pairs;
  std::vector<int> test_labels;
  auto deal = [&](const std::vector<VertexPair>& pairs, int label) {
    const std::size_t n_train = pairs.size() - pairs.size() / 2;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto& dst = i < n_train ? train_pairs : test_pairs;
      auto& lab = i < n_train ? train_labels : test_labels;
      dst.push_back(pairs[i]);
      lab.push_back(label);
    }
  };
  deal(pos, 1);
  deal(neg, 0);
  result.train_examples = train_pairs.size();
  result.test_examples = test_pairs.size();

  const std::vector<double> x_train = edge_features(emb, train_pairs, config.op);
  const std::vector<double> x_test = edge_features(emb, test_pairs, config.op);
  const LinkModel model = train_logreg(x_train, train_labels, emb.dim, config.hyper);
  result.final_gradient_norm = model.final_gradient_norm;

  std::size_t correct = 0;
  for (std::size_t i = 0; i < train_pairs.size(); ++i) {
    const double p = model.predict({x_train.data() + i * emb.dim, emb.dim});
    correct += static_cast<std::size_t>((p >= 0.5) == (train_labels[i] == 1));
  }
  result.train_accuracy = static_cast<double>(correct) / static_cast<double>(train_pairs.size());

  std::vector<double> scores;
  for (std::size_t i = 0; i < test_pairs.size(); ++i) {
    const double p = model.predict({x_test.data() + i * emb.dim, emb.dim});
    scores.push_back(p);
    result.test_predictions.push_back({test_pairs[i], p, test_labels[i]});
  }
  result.auc = auc_score(scores, test_labels);
  return result;
}

std::string eval_report_json(const EvalResult& result, const EvalConfig& config) {
  nlohmann::ordered_json j;
  j["auc"] = result.auc;
  j["seed"] = config.seed;
  j["ratio"] = config.ratio;
  j["operator"] = to_string(config.op);
  j["theta"] = config.theta;
  j["window"] = config.window;
  j["dim"] = result.embedding_dim;
  if (config.coarsen) {
    j["coarsen"] = {{"method", to_string(config.coarsen->method)},
                    {"delta", config.coarsen->delta.to_string()}};
  } else {
    j["coarsen"] = nullptr;
  }
  j["terminals"] = result.terminals;
  j["positives"] = result.positives;
  j["negatives"] = result.negatives;
  j["train_examples"] = result.train_examples;
  j["test_examples"] = result.test_examples;
  j["embedded_vertices"] = result.embedded_vertices;
  j["train_accuracy"] = result.train_accuracy;
  j["final_gradient_norm"] = result.final_gradient_norm;
  return j.dump(2) + "\n";
}

void write_pairs(std::span<const VertexPair> pairs, std::ostream& out) {
  for (const VertexPair& p : pairs) {
    out << p.u << '\t' << p.v << '\n';
  }
  if (!out) {
    throw Error("failed to write pair list");
  }
}

void write_predictions(std::span<const Prediction> predictions, std::ostream& out) {
  for (const Prediction& p : predictions) {
    out << p.pair.u << '\t' << p.pair.v << '\t' << format_double(p.score) << '\t' << p.label
        << '\n';
  }
  if (!out) {
    throw Error("failed to write predictions");
  }
}

}  // namespace gcoarse
