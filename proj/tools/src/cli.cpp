#include "gcoarse_cli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gcoarse/coarsen.hpp"
#include "gcoarse/edge_list.hpp"
#include "gcoarse/embed.hpp"
#include "gcoarse/errors.hpp"
#include "gcoarse/evalkit.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/synthetic.hpp"
#include "gcoarse/verify.hpp"

namespace gcoarse::cli {

namespace {

namespace fs = std::filesystem;

// Bad flags or flag combinations; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File-system problems; reported with exit status 1.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read '" + path + "'");
  }
}

void require_writable(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw IoError("cannot write '" + path + "': directory '" + parent.string() +
                  "' does not exist");
  }
  if (fs::is_directory(path)) {
    throw IoError("cannot write '" + path + "': is a directory");
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read '" + path + "'");
  }
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out.flush()) {
    throw IoError("failed writing '" + path + "'");
  }
}

// Prefixes parse errors with the offending file.
template <class F>
auto read_with_path(const std::string& path, F&& reader) {
  std::ifstream in = open_in(path);
  try {
    return reader(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

Graph read_graph(const std::string& path) {
  return read_with_path(path, [](std::istream& in) { return parse_edge_list(in); });
}

TerminalSet read_terminals(const std::string& path) {
  return TerminalSet(
      read_with_path(path, [](std::istream& in) { return parse_vertex_list(in); }));
}

DegreeMap read_degrees(const std::string& path) {
  return read_with_path(path, [](std::istream& in) { return parse_degree_map(in); });
}

DegreeThreshold parse_delta(const std::string& text) {
  try {
    return DegreeThreshold::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--delta: ") + e.what());
  }
}

void check_theta(double theta, const char* flag) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw UsageError(std::string(flag) + " must lie in (0, 1)");
  }
}

// Each subcommand validates in the first phase (usage errors only) and
// returns the second phase, which does the work.
using Action = std::function<int(std::ostream&)>;

struct CoarsenArgs {
  std::string input;
  std::string terminals;
  std::string output;
  std::string report;
  std::string degrees_out;
  std::string method = "schur";
  std::string delta = "30";
  std::optional<double> theta;
  std::uint64_t seed = 0;
  bool timing = false;
};

Action plan_coarsen(const CoarsenArgs& a) {
  CoarsenConfig cfg;
  try {
    cfg.method = parse_coarsen_method(a.method);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--method: ") + e.what());
  }
  cfg.delta = parse_delta(a.delta);
  cfg.seed = a.seed;
  if (a.theta) {
    check_theta(*a.theta, "--theta");
  }
  return [a, cfg](std::ostream& out) {
    require_readable(a.input);
    require_readable(a.terminals);
    require_writable(a.output);
    if (!a.report.empty()) require_writable(a.report);
    if (!a.degrees_out.empty()) require_writable(a.degrees_out);

    Graph g = read_graph(a.input);
    const TerminalSet t = read_terminals(a.terminals);
    const Graph input = a.theta ? apply_theta(g, *a.theta) : std::move(g);
    const CoarsenResult result = coarsen(input, t, cfg);

    std::string degrees;
    if (!a.degrees_out.empty()) {
      std::ostringstream s;
      write_degree_map(weighted_degrees(input, result.graph.vertices()), s);
      degrees = s.str();
    }
    const std::string report = run_report_json(result, cfg, a.timing);
    write_file(a.output, write_edge_list(result.graph));
    if (!a.degrees_out.empty()) write_file(a.degrees_out, degrees);
    if (a.report.empty()) {
      out << report;
    } else {
      write_file(a.report, report);
    }
    return kExitOk;
  };
}

struct EmbedArgs {
  std::string input;
  std::string output;
  std::string mode = "netmf";
  std::string orig_degrees;
  double theta = 0.5;
  std::size_t window = 10;
  std::size_t dim = 128;
  std::optional<std::uint64_t> log_scale;
  bool limit = false;
};

Action plan_embed(const EmbedArgs& a) {
  EmbedOptions opt;
  try {
    opt.mode = parse_embed_mode(a.mode);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
  if (opt.mode == EmbedMode::netmfsc && a.orig_degrees.empty()) {
    throw UsageError("--mode netmfsc requires --orig-degrees");
  }
  check_theta(a.theta, "--theta");
  if (a.window == 0) throw UsageError("--window must be positive");
  if (a.dim == 0) throw UsageError("--dim must be positive");
  if (a.log_scale && *a.log_scale == 0) throw UsageError("--log-scale must be positive");
  opt.walk = WalkParams::geometric(a.theta, a.window);
  opt.dim = a.dim;
  opt.limit = a.limit;
  opt.log_scale = a.log_scale;
  return [a, opt](std::ostream&) mutable {
    require_readable(a.input);
    if (!a.orig_degrees.empty()) require_readable(a.orig_degrees);
    require_writable(a.output);
    const Graph g = read_graph(a.input);
    if (!a.orig_degrees.empty()) {
      opt.original_degrees = read_degrees(a.orig_degrees);
    }
    const Embedding e = embed_graph(g, opt);
    std::ostringstream s;
    write_embedding(e, s);
    write_file(a.output, s.str());
    return kExitOk;
  };
}

struct VerifyArgs {
  std::string check;
  std::string output;
  VerifyOptions options;
};

Action plan_verify(const VerifyArgs& a) {
  std::vector<std::string> checks;
  if (a.check == "all") {
    checks = verify_check_names();
  } else if (is_verify_check(a.check)) {
    checks = {a.check};
  } else {
    throw UsageError("unknown check '" + a.check + "'");
  }
  if (a.options.trials == 0) throw UsageError("--trials must be positive");
  return [a, checks](std::ostream& out) {
    if (!a.output.empty()) require_writable(a.output);
    std::string lines;
    bool all_pass = true;
    for (const std::string& name : checks) {
      for (const oracle::OracleReport& r : run_verify_check(name, a.options)) {
        lines += r.to_json_line() + "\n";
        all_pass = all_pass && r.pass;
      }
    }
    if (a.output.empty()) {
      out << lines;
    } else {
      write_file(a.output, lines);
    }
    return all_pass ? kExitOk : kExitFailure;
  };
}

struct EvalArgs {
  std::string input;
  std::string terminals;
  std::string report;
  std::string predictions;
  std::string positives;
  std::string negatives;
  std::string coarsen = "none";
  std::string delta = "30";
  std::string op = "hadamard";
  EvalConfig config;
};

Action plan_eval(const EvalArgs& a) {
  EvalConfig cfg = a.config;
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0)) throw UsageError("--ratio must lie in (0, 1)");
  if (!(cfg.terminal_fraction > 0.0 && cfg.terminal_fraction <= 1.0)) {
    throw UsageError("--terminal-fraction must lie in (0, 1]");
  }
  check_theta(cfg.theta, "--theta");
  if (cfg.window == 0) throw UsageError("--window must be positive");
  if (cfg.dim == 0) throw UsageError("--dim must be positive");
  try {
    cfg.op = parse_edge_operator(a.op);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--operator: ") + e.what());
  }
  if (a.coarsen != "none") {
    CoarsenConfig cc;
    try {
      cc.method = parse_coarsen_method(a.coarsen);
    } catch (const DomainError& e) {
      throw UsageError(std::string("--coarsen: ") + e.what());
    }
    cc.delta = parse_delta(a.delta);
    cfg.coarsen = cc;
  }
  return [a, cfg](std::ostream& out) mutable {
    require_readable(a.input);
    if (!a.terminals.empty()) require_readable(a.terminals);
    for (const std::string* p : {&a.report, &a.predictions, &a.positives, &a.negatives}) {
      if (!p->empty()) require_writable(*p);
    }
    const Graph g = read_graph(a.input);
    if (!a.terminals.empty()) {
      cfg.terminals = read_terminals(a.terminals);
    }
    const EvalResult result = run_link_prediction(g, cfg);
    const std::string report = eval_report_json(result, cfg);
    auto dump = [](auto&& writer) {
      std::ostringstream s;
      writer(s);
      return s.str();
    };
    if (!a.predictions.empty()) {
      write_file(a.predictions,
                 dump([&](std::ostream& s) { write_predictions(result.test_predictions, s); }));
    }
    if (!a.positives.empty()) {
      write_file(a.positives, dump([&](std::ostream& s) { write_pairs(result.split.positives, s); }));
    }
    if (!a.negatives.empty()) {
      write_file(a.negatives, dump([&](std::ostream& s) { write_pairs(result.split.negatives, s); }));
    }
    if (a.report.empty()) {
      out << report;
    } else {
      write_file(a.report, report);
    }
    return kExitOk;
  };
}

struct GenerateArgs {
  std::string kind = "two-block";
  std::string output;
  std::size_t n = 400;
  double p_in = 0.1;
  double p_out = 0.01;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

Action plan_generate(const GenerateArgs& a) {
  if (a.kind != "two-block" && a.kind != "sparse") {
    throw UsageError("unknown generator '" + a.kind + "'");
  }
  if (a.n < 2) throw UsageError("--n must be at least 2");
  for (double p : {a.p_in, a.p_out}) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("edge probabilities must lie in [0, 1]");
  }
  return [a](std::ostream&) {
    require_writable(a.output);
    const Graph g = a.kind == "two-block"
                        ? synthetic::two_block_graph(a.n, a.p_in, a.p_out, a.seed)
                        : synthetic::random_sparse_graph(a.n, a.m, a.seed);
    write_file(a.output, write_edge_list(g));
    return kExitOk;
  };
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph coarsening, embedding and evaluation toolkit", "gcoarse"};
  app.require_subcommand(1);

  CoarsenArgs ca;
  auto* c = app.add_subcommand("coarsen", "Eliminate non-terminals (Schur or random contraction)");
  c->add_option("--input", ca.input, "Edge-list TSV")->required();
  c->add_option("--terminals", ca.terminals, "One terminal vertex ID per line")->required();
  c->add_option("--output", ca.output, "Coarsened edge-list TSV")->required();
  c->add_option("--report", ca.report, "JSON run report (default: stdout)");
  c->add_option("--degrees-out", ca.degrees_out, "Weighted degrees of the input over the output vertices");
  c->add_option("--method", ca.method, "schur | contract")->capture_default_str();
  c->add_option("--delta", ca.delta, "Degree threshold (integer or inf)")->capture_default_str();
  c->add_option("--theta", ca.theta, "Rescale to D - theta A before coarsening");
  c->add_option("--seed", ca.seed, "Random seed")->capture_default_str();
  c->add_flag("--report-timing", ca.timing, "Include wall time in the report");

  EmbedArgs ea;
  auto* e = app.add_subcommand("embed", "NetMF / NetMFSC embedding");
  e->add_option("--input", ea.input, "Edge-list TSV")->required();
  e->add_option("--output", ea.output, "Embedding TSV")->required();
  e->add_option("--mode", ea.mode, "netmf | netmfsc")->capture_default_str();
  e->add_option("--orig-degrees", ea.orig_degrees, "Original weighted degrees (netmfsc)");
  e->add_option("--theta", ea.theta, "Geometric walk weight")->capture_default_str();
  e->add_option("--window", ea.window, "Window size W")->capture_default_str();
  e->add_option("--dim", ea.dim, "Embedding dimension")->capture_default_str();
  e->add_option("--log-scale", ea.log_scale, "Scale m inside log+ (default: edge count)");
  e->add_flag("--limit", ea.limit, "Use the W -> inf closed form");

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "Run oracle checks and print JSON lines");
  v->add_option("--check", va.check, "Check name or 'all'")->required();
  v->add_option("--n", va.options.max_vertices, "Maximum instance size (0: check default)");
  v->add_option("--instances", va.options.instances, "Instance count (0: check default)");
  v->add_option("--trials", va.options.trials, "Monte-Carlo trials")->capture_default_str();
  v->add_option("--seed", va.options.seed, "Random seed")->capture_default_str();
  v->add_option("--output", va.output, "JSONL output (default: stdout)");

  EvalArgs la;
  auto* l = app.add_subcommand("eval", "Link-prediction AUC on terminal pairs");
  l->add_option("--input", la.input, "Edge-list TSV")->required();
  l->add_option("--terminals", la.terminals, "Terminal list (default: random fraction)");
  l->add_option("--terminal-fraction", la.config.terminal_fraction, "Share of vertices kept as terminals")
      ->capture_default_str();
  l->add_option("--ratio", la.config.ratio, "Share of terminal edges to hold out")->capture_default_str();
  l->add_option("--coarsen", la.coarsen, "none | schur | contract")->capture_default_str();
  l->add_option("--delta", la.delta, "Degree threshold for coarsening")->capture_default_str();
  l->add_option("--theta", la.config.theta, "Geometric walk weight")->capture_default_str();
  l->add_option("--window", la.config.window, "Window size W")->capture_default_str();
  l->add_option("--dim", la.config.dim, "Embedding dimension")->capture_default_str();
  l->add_option("--operator", la.op, "hadamard | weighted_l2")->capture_default_str();
  l->add_option("--l2", la.config.hyper.l2, "Logistic-regression L2 penalty")->capture_default_str();
  l->add_option("--epochs", la.config.hyper.epochs, "Gradient-descent epochs")->capture_default_str();
  l->add_option("--seed", la.config.seed, "Random seed")->capture_default_str();
  l->add_option("--report", la.report, "JSON report (default: stdout)");
  l->add_option("--predictions", la.predictions, "Test predictions TSV");
  l->add_option("--positives", la.positives, "Held-out edges TSV");
  l->add_option("--negatives", la.negatives, "Negative pairs TSV");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a synthetic edge list");
  gen->add_option("kind", ga.kind, "two-block | sparse")->capture_default_str();
  gen->add_option("--output", ga.output, "Edge-list TSV")->required();
  gen->add_option("--n", ga.n, "Vertices")->capture_default_str();
  gen->add_option("--p-in", ga.p_in, "Intra-block edge probability")->capture_default_str();
  gen->add_option("--p-out", ga.p_out, "Inter-block edge probability")->capture_default_str();
  gen->add_option("--m", ga.m, "Edges (sparse)")->capture_default_str();
  gen->add_option("--seed", ga.seed, "Random seed")->capture_default_str();

  Action action;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (c->parsed()) action = plan_coarsen(ca);
    else if (e->parsed()) action = plan_embed(ea);
    else if (v->parsed()) action = plan_verify(va);
    else if (l->parsed()) action = plan_eval(la);
    else action = plan_generate(ga);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    return action(out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace gcoarse::cli
