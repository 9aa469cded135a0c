#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "lookahead/automata.hpp"
#include "lookahead/strategy_machine.hpp"
#include "oracles.hpp"

using namespace lookahead;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lookahead_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

std::string fx(const std::string& name) { return oracle::fixture(name); }

}  // namespace

TEST_F(CliTest, SolveCopy) {
  auto r = run({"solve", fx("copy.dpa")});
  EXPECT_EQ(r.code, cli::kOWins);
  EXPECT_NE(r.out.find("WINNER=O\n"), std::string::npos);
  EXPECT_NE(r.out.find("NPRIME=3\n"), std::string::npos);
  EXPECT_NE(r.out.find("BOUND=5\n"), std::string::npos);
  EXPECT_NE(r.out.find("continuous winning strategy"), std::string::npos);
}

TEST_F(CliTest, SolveEx33AndInfinitelyManyOnes) {
  EXPECT_NE(run({"solve", fx("ex33.dpa")}).out.find("WINNER=O\n"), std::string::npos);
  auto r = run({"solve", fx("infones.dpa")});
  EXPECT_EQ(r.code, cli::kIWins);
  EXPECT_NE(r.out.find("WINNER=I\n"), std::string::npos);
  EXPECT_NE(r.out.find("BOUND=-\n"), std::string::npos);
}

TEST_F(CliTest, SolveProfileBudget) {
  auto r = run({"solve", fx("ex33.dpa"), "--max-profiles", "3"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST_F(CliTest, Oracle) {
  EXPECT_EQ(run({"oracle", fx("ex33.dpa"), "-d", "2"}).code, cli::kIWins);
  EXPECT_EQ(run({"oracle", fx("ex33.dpa"), "--delay", "3"}).code, cli::kOWins);
  EXPECT_EQ(run({"oracle", fx("copy.dpa"), "-d", "0"}).code, cli::kOWins);
  auto r = run({"oracle", fx("ex33.dpa"), "-d", "3", "--budget", "10"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("size budget of 10 exceeded"), std::string::npos);
}

TEST_F(CliTest, OracleDumpIsVerifiable) {
  auto r = run({"oracle", fx("ex33.dpa"), "-d", "3", "--dump-strategy", path("m.txt")});
  ASSERT_EQ(r.code, cli::kOWins);
  auto v = run({"verify", fx("ex33.dpa"), "-s", path("m.txt"), "-d", "3"});
  EXPECT_EQ(v.code, cli::kOWins);
  EXPECT_EQ(v.out, "PASS\n");
  run({"oracle", fx("ex33.dpa"), "-d", "1", "--dump-strategy", path("i.txt")});
  EXPECT_EQ(oracle::slurp(path("i.txt")).rfind("input-strategy", 0), 0u);
}

TEST_F(CliTest, SynthesizeAndVerify) {
  auto r = run({"synthesize", fx("copy.dpa"), "-o", path("copy.strategy")});
  ASSERT_EQ(r.code, cli::kOWins);
  EXPECT_NE(r.out.find("DELAY=5\n"), std::string::npos);
  EXPECT_EQ(run({"verify", fx("copy.dpa"), "-s", path("copy.strategy"), "-d", "5"}).out, "PASS\n");
  auto wrong = run({"verify", fx("copy.dpa"), "-s", path("copy.strategy"), "-d", "4"});
  EXPECT_EQ(wrong.code, cli::kError);

  auto to_stdout = run({"synthesize", fx("copy.dpa")});
  EXPECT_EQ(to_stdout.out, oracle::slurp(path("copy.strategy")));

  auto none = run({"synthesize", fx("infones.dpa")});
  EXPECT_EQ(none.code, cli::kIWins);
  EXPECT_NE(none.out.find("I wins"), std::string::npos);
}

TEST_F(CliTest, VerifyFailsForComplement) {
  write("flip.strategy",
        "strategy\ndelay: 0\nin: 0 1\nout: 0 1\nstates: 1\ninit: 0\n0 0 -> 0 / 1\n0 1 -> 0 / 0\nend\n");
  auto r = run({"verify", fx("copy.dpa"), "-s", path("flip.strategy"), "-d", "0"});
  EXPECT_EQ(r.code, cli::kIWins);
  EXPECT_EQ(r.out, "FAIL\n");
  write("bad.strategy", "strategy\ndelay: 0\n");
  auto b = run({"verify", fx("copy.dpa"), "-s", path("bad.strategy"), "-d", "0"});
  EXPECT_EQ(b.code, cli::kError);
  EXPECT_NE(b.err.find("bad.strategy"), std::string::npos);
}

TEST_F(CliTest, ErrorsAndUsage) {
  EXPECT_EQ(run({}).code, cli::kError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kError);
  EXPECT_EQ(run({"oracle", fx("copy.dpa")}).code, cli::kError);
  auto missing = run({"solve", path("nope.dpa")});
  EXPECT_EQ(missing.code, cli::kError);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  write("broken.dpa", "dpa\nin: 0 1\n");
  auto broken = run({"solve", path("broken.dpa")});
  EXPECT_EQ(broken.code, cli::kError);
  EXPECT_NE(broken.err.find("broken.dpa"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, GenIsDeterministicAndParses) {
  auto a = run({"gen", "-n", "3", "-m", "2", "--seed", "42"});
  auto b = run({"gen", "-n", "3", "-m", "2", "--seed", "42"});
  auto c = run({"gen", "-n", "3", "-m", "2", "--seed", "43"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  auto dpa = parse_dpa(a.out);
  EXPECT_EQ(dpa.state_count(), 3u);
  EXPECT_LE(dpa.max_color(), 1u);
  EXPECT_EQ(run({"gen", "-n", "0"}).code, cli::kError);
}

TEST_F(CliTest, Xcheck) {
  auto r = run({"xcheck", "--count", "20", "--seed", "3"});
  EXPECT_EQ(r.code, cli::kOWins) << r.out;
  auto f = run({"xcheck", "--count", "50", "--fault-product"});
  EXPECT_EQ(f.code, cli::kXcheckFailed) << f.out;
}

TEST_F(CliTest, Profile) {
  auto r = run({"profile", fx("copy.dpa"), "--arena"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("monoid: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("nprime: 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("# init"), std::string::npos);
}

TEST_F(CliTest, PlayCopyWithOracle) {
  auto r = run({"play", fx("copy.dpa"), "-d", "0"}, "0\n0\n:loop 1\n");
  EXPECT_EQ(r.code, cli::kOWins) << r.out;
  EXPECT_NE(r.out.find("verdict: O"), std::string::npos);
}

TEST_F(CliTest, PlayAgainstComplement) {
  write("flip.strategy",
        "strategy\ndelay: 0\nin: 0 1\nout: 0 1\nstates: 1\ninit: 0\n0 0 -> 0 / 1\n0 1 -> 0 / 0\nend\n");
  auto r = run({"play", fx("copy.dpa"), "-d", "0", "-s", path("flip.strategy")},
               "2\n:loop 1\n0 0\n:loop 5\n:loop 1\n");
  EXPECT_EQ(r.code, cli::kIWins) << r.out;
  EXPECT_NE(r.out.find("try again"), std::string::npos);
  EXPECT_NE(r.out.find("invalid loop"), std::string::npos);
  EXPECT_NE(r.out.find("O: 1 (color 1)"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: I"), std::string::npos);
}

TEST_F(CliTest, PlayDelayedShowsWaitsAndQuits) {
  auto r = run({"play", fx("ex33.dpa"), "-d", "3"}, "0 1\n:quit\n");
  EXPECT_EQ(r.code, cli::kOWins);
  EXPECT_NE(r.out.find("O: waits"), std::string::npos);
  EXPECT_NE(r.out.find("buffer: 01 "), std::string::npos);
}
