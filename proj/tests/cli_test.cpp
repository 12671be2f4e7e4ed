#include "mdtq/cli.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>

#include <unistd.h>

using namespace mdtq;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("mdtq_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    write("case1.csv", "pid,arrival,burst\n1,0,10\n2,2,22\n3,5,48\n4,7,70\n5,9,74\n");
    write("case3.csv", "1,0,7\n2,6,15\n3,8,90\n4,9,42\n5,10,8\n");
    write("case1.json", mdtq::to_json(mdtq::testing::case1()));
    write("bad.csv", "1,0,0\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, RunMdtqrr) {
  const auto r = invoke({"run", "--workload", path("case1.csv"), "--policy", "mdtqrr"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("Avg TAT:          94.6"), std::string::npos) << r.out;
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, RunRrFromJson) {
  const auto r = invoke({"run", "--workload", path("case1.json"), "--policy", "rr:25", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["avg_tat"].get<double>(), 114.6);
}

TEST_F(CliTest, ZeroQuantumIsUsageError) {
  const auto r = invoke({"run", "--workload", path("case1.csv"), "--policy", "rr:0"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("positive"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, FailuresGoToDiagnosticStream) {
  auto r = invoke({"run", "--workload", path("missing.csv"), "--policy", "mdtqrr"});
  EXPECT_NE(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
  r = invoke({"run", "--workload", path("bad.csv"), "--policy", "mdtqrr"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("burst"), std::string::npos);
  r = invoke({"run", "--workload", path("case1.csv"), "--policy", "mdtqrr", "--policy", "srbrr"});
  EXPECT_EQ(r.status, 2);
  r = invoke({"compare", "--workload", path("case1.csv"), "--policy", "mdtqrr"});
  EXPECT_EQ(r.status, 2);
  r = invoke({"bogus"});
  EXPECT_NE(r.status, 0);
}

TEST_F(CliTest, CompareCase3) {
  const auto r = invoke({"compare", "--workload", path("case3.csv"), "--policy", "rr:25", "--policy", "srbrr",
                         "--policy", "mdtqrr", "--format", "csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("RR,25,72.0,39.6,8,0.03"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("SRBRR,\"7,15,42,48\",52.0,19.6,5,0.03"), std::string::npos);
  EXPECT_NE(r.out.find("MDTQRR,\"7,15,42,90\",52.0,19.6,4,0.03"), std::string::npos);
}

TEST_F(CliTest, CompareIdenticalPoliciesGivesIdenticalRows) {
  const auto r = invoke({"compare", "--workload", path("case1.csv"), "--policy", "srbrr", "--policy", "srbrr",
                         "--format", "json"});
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0], j[1]);
}

TEST_F(CliTest, GeneratedWorkloadIsDeterministic) {
  const std::vector<std::string> args = {"compare", "--pattern", "random", "--n", "25", "--seed", "42",
                                         "--policy", "rr:10", "--policy", "srbrr", "--policy", "mdtqrr"};
  const auto a = invoke(args), b = invoke(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto g = invoke({"generate", "--pattern", "increasing", "--n", "4", "--seed", "1", "--format", "json"});
  ASSERT_EQ(g.status, 0);
  EXPECT_EQ(nlohmann::json::parse(g.out).size(), 4u);
}

TEST_F(CliTest, GanttAndOutFile) {
  const auto r = invoke({"gantt", "--workload", path("case1.csv"), "--policy", "mdtqrr", "--format", "svg", "--out",
                         path("g.svg")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path("g.svg"));
  std::string svg((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  const auto a = invoke({"gantt", "--workload", path("case1.csv"), "--policy", "rr:25", "--width", "10"});
  EXPECT_EQ(a.status, 1);
  EXPECT_NE(a.err.find("21"), std::string::npos);
}

TEST_F(CliTest, Reproduce) {
  auto r = invoke({"reproduce"});
  EXPECT_EQ(r.status, 0) << r.err;
  const std::regex case2_md(R"(MDTQRR +73,23,23,50 +87\.4 +53\.4 +4 )");
  EXPECT_TRUE(std::regex_search(r.out, case2_md)) << r.out;
  EXPECT_NE(r.out.find("[erratum] case1 MDTQRR avg_wt: published 50.2, computed 49.8"), std::string::npos);
  r = invoke({"reproduce", "--json"});
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
}
