#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cdc_cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cdc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cdcbound-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST_F(Cli, BoundExamples) {
  auto r = run({"bound", "--q", "2", "--n", "13", "--d", "4", "--k", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "157337054");
  r = run({"bound", "--q", "2", "--n", "4", "--d", "4", "--k", "4"});
  EXPECT_EQ(first_line(r.out), "1");
  r = run({"bound", "--q", "2", "--n", "12", "--d", "4", "--k", "4", "--rule", "parallel", "--n1", "8", "--t", "0"});
  EXPECT_EQ(first_line(r.out), "19673822");
  r = run({"bound", "--q", "2", "--n", "19", "--d", "6", "--k", "6"});
  EXPECT_EQ(first_line(r.out), "4527333091203726");
}

TEST_F(Cli, BoundRuleWithoutSplitTakesBestSplit) {
  auto r = run({"bound", "--q", "2", "--n", "13", "--d", "4", "--k", "4", "--rule", "parallel"});
  EXPECT_EQ(first_line(r.out), "157337054");
  r = run({"bound", "--q", "2", "--n", "12", "--d", "4", "--k", "4", "--rule", "improved-linkage", "--n1", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), std::to_string(4801LL * 4096 + 16));  // A(6,4,4) from the lifted MRD rule
}

TEST_F(Cli, BoundStructuredCertificate) {
  auto r = run({"bound", "--q", "2", "--n", "17", "--d", "4", "--k", "4", "--cert", "structured"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "644769570782");
  const auto j = nlohmann::json::parse(r.out.substr(r.out.find('\n') + 1));
  EXPECT_EQ(j["value"], "644769570782");
  EXPECT_EQ(j["rule"], "ParallelLinkage");
}

TEST_F(Cli, BoundErrors) {
  auto r = run({"bound", "--q", "2", "--n", "12", "--d", "3", "--k", "4"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  EXPECT_NE(r.err.find("even"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  r = run({"bound", "--q", "2", "--n", "12", "--d", "4", "--k", "4", "--rule", "parallel", "--n1", "8", "--t", "2"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  r = run({"bound", "--q", "2", "--n", "12"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  r = run({"bound", "--q", "2", "--n", "12", "--d", "4", "--k", "4", "--rule", "magic"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
}

TEST_F(Cli, RegistryFileAndEnvironment) {
  write("reg.txt", "2 8 4 4 5000 made up\n");
  auto r = run({"bound", "--q", "2", "--n", "8", "--d", "4", "--k", "4", "--registry", path("reg.txt")});
  EXPECT_EQ(first_line(r.out), "5000");
  ::setenv("CDC_REGISTRY", path("reg.txt").c_str(), 1);
  r = run({"bound", "--q", "2", "--n", "8", "--d", "4", "--k", "4"});
  ::unsetenv("CDC_REGISTRY");
  EXPECT_EQ(first_line(r.out), "5000");
  write("bad.txt", "2 8 4 4 5000\n2 8 4\n");
  r = run({"bound", "--q", "2", "--n", "8", "--d", "4", "--k", "4", "--registry", path("bad.txt")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(Cli, ConstructAndVerifyRoundTrip) {
  auto r = run({"construct", "--method", "lmrd", "--q", "2", "--n", "8", "--k", "4", "--d", "4", "--out", path("l.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "M=4096 d_claimed=4\n");
  r = run({"verify", path("l.txt"), "--quiet"});
  EXPECT_EQ(r.out, "ok min_distance=4\n");

  r = run({"construct", "--method", "parallel", "--q", "2", "--n1", "4", "--n2", "4", "--k", "4", "--d", "4", "--out",
           path("p.txt")});
  EXPECT_EQ(r.out, "M=4622 d_claimed=4\n");
  r = run({"verify", path("p.txt"), "--full", "--threads", "2", "--quiet"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok min_distance=4\n");

  r = run({"construct", "--method", "lmrd", "--q", "2", "--n", "5", "--k", "2", "--d", "4", "--out", path("b.txt")});
  ASSERT_EQ(r.code, 0);
  r = run({"construct", "--method", "linkage", "--q", "2", "--base", path("b.txt"), "--n", "8", "--out", path("k.txt")});
  EXPECT_EQ(r.out, "M=64 d_claimed=4\n");  // 8 planes x |Q_2(3,2,2)|
  EXPECT_EQ(run({"verify", path("k.txt")}).out, "ok min_distance=4\n");

  r = run({"construct", "--method", "linkage", "--q", "2", "--k", "4", "--n", "8", "--d", "4", "--out", path("s.txt")});
  EXPECT_EQ(r.out, "M=4096 d_claimed=4\n");
  std::ifstream a(path("s.txt")), b(path("l.txt"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());

  r = run({"construct", "--method", "parallel-t", "--q", "3", "--n1", "2", "--n2", "3", "--k", "2", "--d", "2", "--t",
           "1", "--out", path("t.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"verify", path("t.txt"), "--full"}).code, 0);

  r = run({"construct", "--method", "lmrd", "--q", "2", "--n", "4", "--k", "4", "--d", "4", "--out", path("u.txt")});
  ASSERT_EQ(r.code, 0);
  r = run({"construct", "--method", "parallel", "--q", "2", "--n1", "4", "--n2", "4", "--k", "4", "--d", "4", "--base",
           path("u.txt"), path("u.txt"), "--out", path("pb.txt")});
  EXPECT_EQ(r.out, "M=4622 d_claimed=4\n");
}

TEST_F(Cli, ConstructErrors) {
  auto r = run({"construct", "--method", "lmrd", "--q", "2", "--n", "8", "--k", "4", "--d", "4"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  EXPECT_NE(r.err.find("--out"), std::string::npos);
  r = run({"construct", "--method", "lmrd", "--q", "2", "--n", "16", "--k", "8", "--d", "2", "--out", path("x.txt")});
  EXPECT_EQ(r.code, cdc::cli::kRuntime);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
  r = run({"construct", "--method", "parallel", "--q", "2", "--n1", "4", "--n2", "4", "--k", "4", "--d", "4", "--out",
           path("x.txt"), "--size-cap", "100"});
  EXPECT_EQ(r.code, cdc::cli::kRuntime);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
}

TEST_F(Cli, VerifyVerdicts) {
  write("dup.txt", "cdc q=2 n=4 k=2 d=2 M=3\n\n1 0 0 0\n0 1 0 0\n\n0 0 1 0\n0 0 0 1\n\n1 0 0 0\n0 1 0 0\n");
  auto r = run({"verify", path("dup.txt")});
  EXPECT_EQ(r.code, cdc::cli::kVerifyFailed);
  EXPECT_EQ(r.out, "FAIL pair=0,2 distance=0\n");

  write("one.txt", "cdc q=2 n=4 k=2 d=4 M=1\n\n1 0 0 0\n0 1 0 0\n");
  r = run({"verify", path("one.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok min_distance=none\n");

  write("bad.txt", "cdc q=2 n=4 k=2 d=4 M=1\n\n1 0 0 0\n0 1 7 0\n");
  r = run({"verify", path("bad.txt")});
  EXPECT_EQ(r.code, cdc::cli::kRuntime);
  EXPECT_NE(r.err.find("line 4"), std::string::npos);

  r = run({"verify", path("missing.txt")});
  EXPECT_EQ(r.code, cdc::cli::kRuntime);
  r = run({"verify", path("one.txt"), "--full", "--sample", "10"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
}

TEST_F(Cli, VerifySampledMode) {
  ASSERT_EQ(run({"construct", "--method", "parallel", "--q", "2", "--n1", "4", "--n2", "4", "--k", "4", "--d", "4", "--out",
                 path("p.txt")})
                .code,
            0);
  const auto a = run({"verify", path("p.txt"), "--sample", "20000", "--seed", "5"});
  const auto b = run({"verify", path("p.txt"), "--sample", "20000", "--seed", "5", "--threads", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, "ok min_distance=4 sampled_pairs=20000 (not certified)\n");
}

TEST_F(Cli, Rankdist) {
  auto r = run({"rankdist", "--q", "2", "--m", "8", "--n", "4", "--d", "2"});
  EXPECT_EQ(r.out, "r 2 8925\nr 3 956250\nr 4 15812040\ntotal 16777216\n");
  r = run({"rankdist", "--q", "2", "--m", "10", "--n", "4", "--d", "2"});
  EXPECT_NE(r.out.find("r 4 1058084808\n"), std::string::npos);
  r = run({"rankdist", "--q", "2", "--m", "3", "--n", "3", "--d", "3"});
  EXPECT_EQ(r.out, "r 3 7\ntotal 8\n");
  r = run({"rankdist", "--q", "2", "--m", "3", "--n", "3", "--d", "4"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
}

TEST_F(Cli, Table) {
  const auto csv = run({"table", "--q", "2", "--n", "12..13", "--d", "4", "--k", "4"});
  EXPECT_EQ(csv.out, "q,n,d,k,value,rule\n2,12,4,4,19676797,Registry\n2,13,4,4,157337054,ParallelLinkage\n");
  const auto md = run({"table", "--q", "2", "--n", "12..13", "--d", "4", "--k", "4", "--format", "markdown"});
  EXPECT_NE(md.out.find("| 2 | 13 | 4 | 4 | 157337054 | ParallelLinkage |"), std::string::npos);
  EXPECT_NE(md.out.find("| 2 | 12 | 4 | 4 | 19676797 | Registry |"), std::string::npos);
  const auto empty = run({"table", "--q", "2,3", "--n", "9..8", "--d", "4", "--k", "4"});
  EXPECT_EQ(empty.out, "q,n,d,k,value,rule\n");
  const auto again = run({"table", "--q", "2", "--n", "12..13", "--d", "4", "--k", "4", "--threads", "2"});
  EXPECT_EQ(again.out, csv.out);
  EXPECT_EQ(run({"table", "--q", "2", "--n", "x", "--d", "4", "--k", "4"}).code, cdc::cli::kUsage);
}

TEST_F(Cli, UsageErrors) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  r = run({"rankdist", "--q", "2", "--m", "3", "--n", "3", "--d", "3", "--bogus"});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  r = run({});
  EXPECT_EQ(r.code, cdc::cli::kUsage);
  r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bound"), std::string::npos);
}

}  // namespace
