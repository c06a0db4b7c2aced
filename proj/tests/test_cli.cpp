#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

struct RunResult
{
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args)
{
  RunResult r;
  std::string cmd = std::string(PQVW_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

TEST(Cli, BracketPrintsCoefficientIndexAndLimits)
{
  auto r = run("bracket --n 3 --indices 0,1,2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "coefficient: q^-2 - p^2\nindex: 3\np -> q: q^-2 - q^2\nclassical: 0\n");
}

TEST(Cli, BracketTwoHasClassicalValue)
{
  auto r = run("bracket --n 2 --indices 3,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "index: 4"));
  EXPECT_TRUE(contains(r.out, "classical: 2\n"));
}

TEST(Cli, BracketJson)
{
  auto r = run("bracket --n 3 --indices=-1,0,1 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"coeff\": \"q^-2 - p^2\""));
  EXPECT_TRUE(contains(r.out, "\"index\": 0"));
}

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run("verify sh-jacobi --n 3 --indices 0,1").code, 2);
  EXPECT_EQ(run("bracket --n 3 --indices 0,1").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify all --level galactic").code, 2);
  EXPECT_EQ(run("--format yaml verify oscillator").code, 2);
  EXPECT_EQ(run("subalgebra check --n 3 --indices 1,1,2").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ShJacobiSweepPasses)
{
  auto r = run("verify sh-jacobi --n 3 --window 1 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"pass\": 243"));
  EXPECT_TRUE(contains(r.out, "\"fail\": 0"));
}

TEST(Cli, FailingCheckExitsOne)
{
  auto r = run("verify fi --n 3 --indices=-2,-1,-2,0,1");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "FAIL fi"));
  EXPECT_TRUE(contains(r.out, "L_-4"));
}

TEST(Cli, ExpectedViolationPasses)
{
  EXPECT_EQ(run("verify fi --n 3 --indices=-2,-1,-2,0,1 --expect-violation").code, 0);
  EXPECT_EQ(run("verify fi --n 3 --window 2").code, 0);
}

TEST(Cli, EvenCounterexampleIsExpectedFail)
{
  auto r = run("verify fi --n 4 --even-counterexample --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"expect\": \"nonzero\""));
  EXPECT_TRUE(contains(r.out, "\"verdict\": \"pass\""));
  EXPECT_FALSE(contains(r.out, "\"residual\": \"0\""));
}

TEST(Cli, SubalgebraSearch)
{
  auto r = run("subalgebra search --n 3 --window 2 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"larger_passing\": 0"));
  EXPECT_TRUE(contains(r.out, "\"candidates\": 10"));
}

TEST(Cli, SubalgebraCheckAndMatrix)
{
  auto c = run("subalgebra check --n 3 --indices=-2,2,5 --format json");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(contains(c.out, "\"ideal_at\": 5"));
  EXPECT_TRUE(contains(c.out, "\"iso_canonical\": true"));
  auto m = run("subalgebra matrix --n 3 --indices=-1,0,1,2 --format json");
  EXPECT_EQ(m.code, 0);
  EXPECT_TRUE(contains(m.out, "\"symmetric\": false"));
}

TEST(Cli, SampledSweepRecordsSeedAndIsReproducible)
{
  auto a = run("verify sh-jacobi --n 4 --window 2 --samples 10 --seed 42 --format json");
  auto b = run("verify sh-jacobi --n 4 --window 2 --samples 10 --seed 42 --format json --jobs 3");
  auto c = run("verify sh-jacobi --n 4 --window 2 --samples 10 --seed 43 --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_TRUE(contains(a.out, "\"seed\": 42"));
}

TEST(Cli, OutputFileIsWrittenWhole)
{
  auto path = std::filesystem::temp_directory_path() / "pqvw_cli_test.json";
  std::filesystem::remove(path);
  auto r = run("verify oscillator --format json --output " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run("verify oscillator --format json").out);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST(Cli, QuickSuitePasses)
{
  auto r = run("verify all --level quick");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "summary: 8 passed, 0 failed"));
}

TEST(Cli, CounterexampleFlagAlias)
{
  EXPECT_EQ(run("verify fi --n 4 --paper-counterexample").code, 0);
  EXPECT_EQ(run("verify fi --n 3 --even-counterexample").code, 2);
}

TEST(Cli, ClosedFormSweep)
{
  auto r = run("verify closed-form --n 4 --window 1 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\"fail\": 0"));
}

TEST(Cli, OracleCheck)
{
  auto r = run("oracle-check --window 1");
  EXPECT_EQ(r.code, 0);
}

} // namespace
