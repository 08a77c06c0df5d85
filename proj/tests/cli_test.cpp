#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oligoplan/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const fs::path& cwd) {
  const auto log = cwd / "cli_output.txt";
  const std::string cmd = "cd '" + cwd.string() + "' && '" OLIGOPLAN_CLI "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oligoplan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, GenIsDeterministicPerSeed) {
  const std::string args = "gen --genes 200 --gene-len 40 --oligo-len 8 --arrays 2 --size 10 --seed 9 -o ";
  ASSERT_EQ(run(args + "a.json", dir_).code, 0);
  ASSERT_EQ(run(args + "b.json", dir_).code, 0);
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
  ASSERT_EQ(run("gen --genes 200 --gene-len 40 --oligo-len 8 --arrays 2 --size 10 --seed 10 -o c.json", dir_).code,
            0);
  EXPECT_NE(slurp(dir_ / "a.json"), slurp(dir_ / "c.json"));
}

TEST_F(Cli, GenRequiresSeed) {
  EXPECT_NE(run("gen --genes 10 --gene-len 40 --arrays 1 --size 4 -o a.json", dir_).code, 0);
  EXPECT_FALSE(fs::exists(dir_ / "a.json"));
}

TEST_F(Cli, FullPipelineWritesValidatedBundle) {
  ASSERT_EQ(run("gen --genes 200 --gene-len 40 --oligo-len 8 --arrays 2 --size 10 --seed 3 -o d.json", dir_).code, 0);
  const auto r = run("report --dataset d.json -o out", dir_);
  ASSERT_EQ(r.code, 0) << r.out;
  const auto out = dir_ / "out";
  for (const char* f : {"plan.json", "decomp.json", "decomp.csv", "histogram.csv", "summary.csv",
                        "schedule_straight.json", "schedule_simple.json", "schedule_smart.json",
                        "gantt_straight.svg", "gantt_simple.svg", "gantt_smart.svg"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  EXPECT_TRUE(fs::exists(out / "masks" / "array1" / "cycle0.pbm"));

  const auto plan = oligoplan::io::plan_from_json(oligoplan::io::read_json(out / "plan.json"));
  EXPECT_EQ(plan.sequences.size(), 2u);
  const auto simple = oligoplan::io::schedule_from_json(oligoplan::io::read_json(out / "schedule_simple.json"));
  EXPECT_LT(simple.r_r, 1.0);
  EXPECT_NE(slurp(out / "decomp.csv").find(",10x10,2,"), std::string::npos);
  EXPECT_NE(r.out.find("R_r(simple)"), std::string::npos);
}

TEST_F(Cli, StepwiseSubcommandsAgreeWithReport) {
  ASSERT_EQ(run("gen --genes 100 --gene-len 30 --oligo-len 6 --arrays 2 --size 6 --seed 4 -o d.json", dir_).code, 0);
  ASSERT_EQ(run("plan --dataset d.json -o plan.json", dir_).code, 0);
  ASSERT_EQ(run("masks --dataset d.json --plan plan.json -o masks", dir_).code, 0);
  ASSERT_EQ(run("decompose --masks masks --mode hv -o dec", dir_).code, 0);
  ASSERT_EQ(run("schedule --plan plan.json --modes straight,simple -o sched", dir_).code, 0);
  ASSERT_EQ(run("report --dataset d.json --mode hv --modes straight,simple -o rep", dir_).code, 0);
  EXPECT_EQ(slurp(dir_ / "plan.json"), slurp(dir_ / "rep" / "plan.json"));
  EXPECT_EQ(slurp(dir_ / "sched" / "schedule_simple.json"), slurp(dir_ / "rep" / "schedule_simple.json"));
  EXPECT_EQ(slurp(dir_ / "dec" / "histogram.csv"), slurp(dir_ / "rep" / "histogram.csv"));
  EXPECT_EQ(slurp(dir_ / "masks" / "array0" / "cycle3.pbm"), slurp(dir_ / "rep" / "masks" / "array0" / "cycle3.pbm"));
}

TEST_F(Cli, EmptyDatasetFailsWithStageTagAndNoOutputs) {
  {
    std::ofstream(dir_ / "empty.json") << R"({"side_m": 10, "arrays": []})";
  }
  const auto r = run("report --dataset empty.json -o out", dir_);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("[dataset]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("no arrays"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, FailureMidPipelineRemovesPartialOutputs) {
  {
    std::ofstream(dir_ / "blank.json") << R"({"side_m": 3, "arrays": [[], []]})";
  }
  const auto r = run("report --dataset blank.json -o out", dir_);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("[plan]"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, ReportOnlyReproducesTableRow) {
  const auto r = run("report --report-only --times ts=40.18,tm=45,td=30 --masks-per-array 79.7 "
                     "--arrays 3 --label N5000K100 -o out",
                     dir_);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find(",18053.0,10799.7,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("R_r(simple) = 0.598"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "out" / "gantt_simple.svg"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "schedule_smart.json"));
}

TEST_F(Cli, RejectsBadTimes) {
  EXPECT_NE(run("report --report-only --times ts=-1 --masks-per-array 10 --arrays 2 -o out", dir_).code, 0);
  EXPECT_NE(run("report --report-only --times speed=3 --masks-per-array 10 --arrays 2 -o out", dir_).code, 0);
}

TEST_F(Cli, OracleSubcommand) {
  auto r = run("oracle cover 010 111 010", dir_);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "min_cover 2 greedy_h 3 greedy_hv 2\n");
  r = run("oracle scs ACG ACT CGT AGT", dir_);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "brute 4 greedy 4\n");
}

}  // namespace
