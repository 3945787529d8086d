#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flowdec/cli.hpp"

using namespace flowdec;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = flowdec::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("flowdec_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }
  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

const char* kCh2 = "# CH_2 with a minimal flow\n4\n0 1 1\n0 1 1\n0 2 2\n1 2 0\n1 3 2\n2 3 1\n2 3 1\n";

}  // namespace

TEST(GraphFile, RoundTripIsByteExact) {
  GraphFile f = parse_graph(kCh2);
  EXPECT_EQ(f.comments, (std::vector<std::string>{" CH_2 with a minimal flow"}));
  EXPECT_EQ(f.network.value(), 4);
  EXPECT_EQ(serialize_graph(f.network, f.comments), kCh2);
}

TEST(GraphFile, ParseErrorsNameTheLine) {
  try {
    parse_graph("2\n0 1 3\n0 1 x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_EQ(e.index(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_graph("2\n0 1\n"), Error);
  EXPECT_THROW(parse_graph("# only a comment\n"), Error);
  EXPECT_THROW(parse_graph("2\n0 7 1\n"), Error);
  EXPECT_THROW(parse_graph("3\n0 1 1\n1 2 2\n"), Error);  // conservation
}

TEST(GraphFile, HugeValuesAreOverflow) {
  try {
    parse_graph("2\n0 1 123456789012345678901234567890\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IntegerOverflow);
  }
}

TEST(DecompositionFile, RoundTripAndVertexWalk) {
  GraphFile f = parse_graph(kCh2);
  Decomposition d{{{{0, 4}, 1, -1}, {{2, 5}, 2, -1}}, Algorithm::Witness};
  const std::string text = serialize_decomposition(d, &f.network.graph());
  EXPECT_EQ(text, "1 : 0,4  # 0 1 3\n2 : 2,5  # 0 2 3\n");
  Decomposition back = parse_decomposition(text, &f.network.graph());
  EXPECT_EQ(back.paths, d.paths);
  EXPECT_EQ(serialize_decomposition(back, &f.network.graph()), text);
  EXPECT_THROW(parse_decomposition("1 : 0,99\n", &f.network.graph()), Error);
  EXPECT_THROW(parse_decomposition("1 0,4\n"), Error);
  EXPECT_THROW(parse_decomposition("1 : 0,,4\n"), Error);
}

TEST_F(TempDir, AnalyzeCh2) {
  const auto file = write("ch2.txt", kCh2);
  CliRun r = invoke({"analyze", file, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["width"], 3);
  EXPECT_EQ(j["fwidth"], 4);
  EXPECT_EQ(j["pw"]["lower"], 4);
  EXPECT_EQ(j["pw"]["exact"], true);
  EXPECT_EQ(j["width_stable"], false);
  CliRun text = invoke({"analyze", file});
  EXPECT_NE(text.out.find("width_stable    false"), std::string::npos);
}

TEST_F(TempDir, AnalyzeSinglePath) {
  CliRun r = invoke({"analyze", write("p.txt", "3\n0 1 7\n1 2 7\n"), "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["width"], 1);
  EXPECT_EQ(j["fwidth"], 1);
  EXPECT_EQ(j["width_stable"], true);
}

TEST_F(TempDir, AnalyzeMalformed) {
  CliRun r = invoke({"analyze", write("bad.txt", "2\n0 1 5\n0 1\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_EQ(invoke({"analyze", path("missing.txt")}).code, 2);
}

TEST_F(TempDir, DecomposeThreeAlgorithms) {
  const auto file = write("two.txt", "2\n0 1 5\n0 1 3\n");
  CliRun pf = invoke({"decompose", file, "--algo", "parityfix"});
  ASSERT_EQ(pf.code, 0);
  EXPECT_EQ(pf.out.substr(0, pf.out.find("# algo")), "1 : 0  # 0 1\n1 : 1  # 0 1\n2 : 1  # 0 1\n4 : 0  # 0 1\n");
  EXPECT_NE(pf.out.find("# 1 1 2"), std::string::npos);
  CliRun gr = invoke({"decompose", file, "--algo", "greedy", "--json"});
  EXPECT_EQ(nlohmann::json::parse(gr.out)["size"], 2);
  CliRun ex = invoke({"decompose", file, "--algo", "exact", "--json"});
  auto j = nlohmann::json::parse(ex.out);
  EXPECT_EQ(j["size"], 2);
  EXPECT_EQ(j["optimal"], true);
  EXPECT_EQ(j["ratio"], "1.0000");
  EXPECT_EQ(invoke({"decompose", file, "--algo", "nope"}).code, 2);
}

TEST_F(TempDir, DecomposeBudgetExitCode) {
  ASSERT_EQ(invoke({"gen", "adversarial", "3", "3", "--out", path("adv.txt")}).code, 0);
  CliRun r = invoke({"decompose", path("adv.txt"), "--algo", "exact", "--budget", "100", "--out", path("adv.dec")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(invoke({"verify", path("adv.txt"), path("adv.dec")}).code, 0);
}

TEST_F(TempDir, VerifyExitCodes) {
  const auto file = write("two.txt", "2\n0 1 5\n0 1 3\n");
  ASSERT_EQ(invoke({"decompose", file, "--algo", "parityfix", "--out", path("d.txt")}).code, 0);
  EXPECT_EQ(invoke({"verify", file, path("d.txt")}).code, 0);
  CliRun tampered = invoke({"verify", file, write("t.txt", "5 : 0\n4 : 1\n")});
  EXPECT_EQ(tampered.code, 1);
  EXPECT_NE(tampered.out.find("OverSum"), std::string::npos);
  EXPECT_EQ(invoke({"verify", file, write("u.txt", "5 : 0\n3 : 7\n")}).code, 2);
}

TEST_F(TempDir, GenFamilies) {
  ASSERT_EQ(invoke({"gen", "genset", "1", "2", "3", "--out", path("g.txt")}).code, 0);
  GraphFile g = parse_graph(read(path("g.txt")));
  EXPECT_EQ(g.network.graph().vertex_count(), 4);
  EXPECT_EQ(g.network.graph().edge_count(), 6);
  EXPECT_EQ(g.network.value(), 7);
  CliRun pc = invoke({"gen", "pc", "5"});
  GraphFile p = parse_graph(pc.out);
  EXPECT_EQ(p.network.graph().vertex_count(), 2);
  EXPECT_EQ(p.network.graph().edge_count(), 5);
  ASSERT_EQ(invoke({"gen", "adversarial", "3", "3", "--out", path("a.txt")}).code, 0);
  EXPECT_EQ(parse_decomposition(read(path("a.txt.witness"))).size(), 21u);
  EXPECT_EQ(invoke({"verify", path("a.txt"), path("a.txt.witness")}).code, 0);
  EXPECT_EQ(invoke({"gen", "threepart", "9", "2", "3", "4"}).code, 2);
  EXPECT_EQ(invoke({"gen", "unknown"}).code, 2);
}

TEST_F(TempDir, BenchRowsAndFormat) {
  CliRun r = invoke({"bench", "--families", "genset", "--sizes", "3,5", "--algos", "parityfix,greedy,exact", "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "family,params,n,m,val,maxflow,width,fwidth,pw,algo,size,lower_bound,ratio,wall_ms");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto ratio = line.substr(0, line.rfind(','));
    EXPECT_EQ(ratio.size() - ratio.rfind('.') - 1, 4u) << line;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
  }
  EXPECT_EQ(rows, 6);
  EXPECT_EQ(invoke({"bench", "--families", "bogus", "--sizes", "3"}).code, 2);
}
