#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gcoarse/edge_list.hpp"
#include "gcoarse/synthetic.hpp"
#include "gcoarse_cli/cli.hpp"

namespace gcoarse::cli {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gcoarse_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  void write_path_graph() {
    write("p.tsv", "1\t2\t1\n2\t3\t1\n3\t4\t1\n4\t5\t2\n");
    write("t.txt", "1\n5\n");
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(Cli, CoarsenHappyPath) {
  write_path_graph();
  EXPECT_EQ(run({"coarsen", "--input", path("p.tsv"), "--terminals", path("t.txt"), "--method",
                 "contract", "--delta", "inf", "--seed", "7", "--output", path("h.tsv")}),
            kExitOk)
      << err_.str();
  ASSERT_TRUE(fs::exists(path("h.tsv")));
  const Graph h = parse_edge_list(read("h.tsv"));
  EXPECT_EQ(h.vertices(), (std::vector<VertexId>{1, 5}));
  const auto report = nlohmann::json::parse(out_.str());
  EXPECT_EQ(report["vertices_eliminated"], 3);
}

TEST_F(Cli, CoarsenIsByteIdentical) {
  write_path_graph();
  const std::vector<std::string> base{"coarsen", "--input", path("p.tsv"), "--terminals",
                                      path("t.txt"), "--method", "contract", "--seed", "3"};
  auto with = [&](std::string out, std::string rep) {
    auto a = base;
    a.insert(a.end(), {"--output", path(out), "--report", path(rep)});
    return a;
  };
  ASSERT_EQ(run(with("a.tsv", "a.json")), kExitOk);
  ASSERT_EQ(run(with("b.tsv", "b.json")), kExitOk);
  EXPECT_EQ(read("a.tsv"), read("b.tsv"));
  EXPECT_EQ(read("a.json"), read("b.json"));
}

TEST_F(Cli, CoarsenMissingInputNamesPath) {
  write("t.txt", "1\n");
  const std::string missing = path("missing.tsv");
  EXPECT_EQ(run({"coarsen", "--input", missing, "--terminals", path("t.txt"), "--output",
                 path("h.tsv")}),
            kExitFailure);
  EXPECT_NE(err_.str().find(missing), std::string::npos);
  EXPECT_FALSE(fs::exists(path("h.tsv")));
}

TEST_F(Cli, CoarsenZeroDeltaIsUsageError) {
  write_path_graph();
  EXPECT_EQ(run({"coarsen", "--input", path("p.tsv"), "--terminals", path("t.txt"), "--delta",
                 "0", "--output", path("h.tsv")}),
            kExitUsage);
  EXPECT_FALSE(fs::exists(path("h.tsv")));
}

TEST_F(Cli, CoarsenParseErrorNamesFileAndLine) {
  write("bad.tsv", "1\t2\t1\n1\t2\n");
  write("t.txt", "1\n");
  EXPECT_EQ(run({"coarsen", "--input", path("bad.tsv"), "--terminals", path("t.txt"), "--output",
                 path("h.tsv")}),
            kExitFailure);
  EXPECT_NE(err_.str().find("bad.tsv"), std::string::npos);
  EXPECT_NE(err_.str().find("line 2"), std::string::npos);
}

TEST_F(Cli, CoarsenThenEmbedNetmfsc) {
  const Graph g = synthetic::two_block_graph(40, 0.4, 0.1, 1);
  write("g.tsv", write_edge_list(g));
  write("t.txt", "0\n3\n5\n8\n21\n30\n33\n");
  ASSERT_EQ(run({"coarsen", "--input", path("g.tsv"), "--terminals", path("t.txt"), "--theta",
                 "0.5", "--delta", "inf", "--output", path("h.tsv"), "--degrees-out",
                 path("d.tsv"), "--report", path("r.json")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(run({"embed", "--input", path("h.tsv"), "--mode", "netmfsc", "--orig-degrees",
                 path("d.tsv"), "--window", "3", "--dim", "2", "--output", path("e.tsv")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(read("e.tsv").rfind("# d=2\n", 0), 0u);
}

TEST_F(Cli, EmbedLineSettingOnHundredVertices) {
  write("g.tsv", write_edge_list(synthetic::random_sparse_graph(100, 300, 2)));
  EXPECT_EQ(run({"embed", "--input", path("g.tsv"), "--window", "1", "--dim", "16", "--output",
                 path("e.tsv")}),
            kExitOk)
      << err_.str();
  EXPECT_TRUE(fs::exists(path("e.tsv")));
}

TEST_F(Cli, EmbedErrors) {
  write("g.tsv", "1\t2\t1\n2\t3\t1\n");
  EXPECT_EQ(run({"embed", "--input", path("g.tsv"), "--dim", "4", "--output", path("e.tsv")}),
            kExitFailure);
  EXPECT_FALSE(fs::exists(path("e.tsv")));
  EXPECT_EQ(run({"embed", "--input", path("g.tsv"), "--mode", "netmfsc", "--output",
                 path("e.tsv")}),
            kExitUsage);
}

TEST_F(Cli, VerifyChecks) {
  EXPECT_EQ(run({"verify", "--check", "schur-oracle", "--n", "40", "--instances", "20"}), kExitOk);
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_LE(j["max_abs_error"].get<double>(), 1e-9);
  EXPECT_EQ(run({"verify", "--check", "expectation", "--n", "8", "--instances", "2", "--trials",
                 "100000", "--seed", "1"}),
            kExitOk);
  std::istringstream lines(out_.str());
  std::string line;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(nlohmann::json::parse(line)["pass"].get<bool>()) << line;
  }
  EXPECT_EQ(run({"verify", "--check", "bogus"}), kExitUsage);
}

TEST_F(Cli, EvalPipeline) {
  write("g.tsv", write_edge_list(synthetic::two_block_graph(80, 0.3, 0.03, 5)));
  EXPECT_EQ(run({"eval", "--input", path("g.tsv"), "--terminal-fraction", "0.5", "--coarsen",
                 "contract", "--delta", "inf", "--dim", "8", "--seed", "2", "--predictions",
                 path("pred.tsv"), "--positives", path("pos.tsv"), "--negatives", path("neg.tsv")}),
            kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(out_.str());
  EXPECT_GE(j["auc"].get<double>(), 0.0);
  EXPECT_LE(j["auc"].get<double>(), 1.0);
  EXPECT_EQ(j["seed"], 2);
  EXPECT_TRUE(fs::exists(path("pred.tsv")));
  EXPECT_EQ(read("pos.tsv").size() > 0, true);
}

TEST_F(Cli, EvalErrors) {
  write("tree.tsv", "0\t1\t1\n1\t2\t1\n1\t3\t1\n");
  EXPECT_EQ(run({"eval", "--input", path("tree.tsv"), "--dim", "2"}), kExitFailure);
  EXPECT_NE(err_.str().find("no removable edges"), std::string::npos);
  EXPECT_EQ(run({"eval", "--input", path("tree.tsv"), "--ratio", "1.5"}), kExitUsage);
  EXPECT_EQ(run({"eval", "--input", path("tree.tsv"), "--ratio", "0"}), kExitUsage);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(run({"coarsen", "--input", "x"}), kExitUsage);
  EXPECT_EQ(run({"--help"}), kExitOk);
}

TEST_F(Cli, OutputDirectoryMustExist) {
  write_path_graph();
  EXPECT_EQ(run({"coarsen", "--input", path("p.tsv"), "--terminals", path("t.txt"), "--output",
                 path("nodir/h.tsv")}),
            kExitFailure);
}

TEST_F(Cli, GenerateTwoBlock) {
  EXPECT_EQ(run({"generate", "two-block", "--n", "40", "--seed", "1", "--output", path("g.tsv")}),
            kExitOk);
  EXPECT_EQ(parse_edge_list(read("g.tsv")).num_vertices(), 40u);
}

}  // namespace
}  // namespace gcoarse::cli
