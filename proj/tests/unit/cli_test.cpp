#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kegamma/cli.hpp"
#include "../support.hpp"

using namespace kegamma;
using kegamma::testing::dataPath;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

// Drops timing lines so reports can be compared byte for byte.
std::string stable(const std::string& report) {
  std::istringstream in(report);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("wall_time_ms", 0) != 0) out += line + '\n';
  }
  return out;
}

}  // namespace

TEST(Cli, CheckReportsVerdict) {
  Outcome r = cli({"check", dataPath("family.owl")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verdict: consistent"), std::string::npos);
  EXPECT_NE(r.out.find("open_branches: 2"), std::string::npos);
  EXPECT_EQ(cli({"check", dataPath("clash.owl")}).code, kExitInconsistent);
}

TEST(Cli, QueryBothSyntaxes) {
  for (auto [kb, q] : std::vector<std::pair<std::string, std::string>>{
           {"family.owl", "Mother(?z, Eva)"},
           {"family.owl", "$OA V0{?z} $CO V0{Eva} $AO $IN V3{Mother}"},
           {"family.kg", "$OA V0{?z} $CO V0{Eva} $AO $IN V3{Mother}"}}) {
    Outcome r = cli({"query", dataPath(kb), q});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find(R"({"answers":[{"z":"Ann"}],"count":1})"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find(R"("solutions":[])"), std::string::npos);
  }
  EXPECT_EQ(cli({"query", dataPath("family.kg"), "Mother(?z, Eva)"}).code, kExitRejected);
  EXPECT_EQ(cli({"query", dataPath("family.owl"), "Mother(?z"}).code, kExitRejected);
}

TEST(Cli, ReportsAreDeterministicAcrossModesAndWorkers) {
  Outcome a = cli({"check", dataPath("family.owl")});
  Outcome b = cli({"check", dataPath("family.owl"), "--workers", "3"});
  EXPECT_EQ(stable(a.out), stable(b.out));
  Outcome c = cli({"check", dataPath("family.owl"), "--mode", "classicke"});
  EXPECT_NE(c.out.find("mode: classicke"), std::string::npos);
  EXPECT_EQ(cli({"check", dataPath("family.owl"), "--mode", "tableau"}).code, kExitRejected);
}

TEST(Cli, Rejections) {
  Outcome r = cli({"check", dataPath("rhs_existential.owl")});
  EXPECT_EQ(r.code, kExitRejected);
  EXPECT_NE(r.err.find("construct outside"), std::string::npos);
  r = cli({"check", dataPath("swrl_builtin.owl")});
  EXPECT_EQ(r.code, kExitRejected);
  EXPECT_NE(r.err.find("SWRL built-in atom"), std::string::npos);
  EXPECT_EQ(cli({"check", "/nonexistent.owl"}).code, kExitRejected);
  EXPECT_EQ(cli({}).code, kExitRejected);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, BudgetExitCode) {
  Outcome r = cli({"check", dataPath("family.owl"), "--budget", "1"});
  EXPECT_EQ(r.code, kExitBudget);
  EXPECT_NE(r.out.find("budget"), std::string::npos);
}

TEST(Cli, TranslateMatchesInternalFixture) {
  Outcome r = cli({"translate", dataPath("family.owl")});
  EXPECT_EQ(r.code, kExitOk);
  std::ifstream f(dataPath("family.kg"));
  std::string line, expected;
  while (std::getline(f, line)) {
    if (!line.empty() && line[0] != '#') expected += line + '\n';
  }
  EXPECT_EQ(r.out, expected);
}

TEST(Cli, DotAndTraceFiles) {
  std::string dot = ::testing::TempDir() + "kegamma_test.dot", trace = ::testing::TempDir() + "kegamma_test.log";
  Outcome r = cli({"check", dataPath("family.owl"), "--dot", dot, "--trace", trace});
  EXPECT_EQ(r.code, kExitOk);
  std::ifstream d(dot), t(trace);
  std::stringstream ds, ts;
  ds << d.rdbuf();
  ts << t.rdbuf();
  EXPECT_EQ(ds.str().rfind("digraph", 0), 0u);
  EXPECT_NE(ts.str().find("pb\t"), std::string::npos);
  std::remove(dot.c_str());
  std::remove(trace.c_str());
}

TEST(Cli, BenchAndOracleCheck) {
  Outcome b = cli({"bench", "--kmax", "4"});
  EXPECT_EQ(b.code, kExitOk);
  EXPECT_NE(b.out.find("equivalent_models\tyes"), std::string::npos);
  EXPECT_EQ(b.out.rfind("instance\tmode\tmodels\ttime_ms", 0), 0u);
  Outcome o = cli({"oracle-check", dataPath("family.owl"), "--query", "Mother(?z, Eva)"});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_NE(o.out.find("agreement: yes"), std::string::npos);
  EXPECT_EQ(cli({"oracle-check", dataPath("clash.owl")}).code, kExitOk);
}

TEST(Cli, BenchReportStructure) {
  BenchReport r = runBench(3, EngineOptions{});
  ASSERT_EQ(r.rows.size(), 6u);
  for (unsigned k = 1; k <= 3; ++k) {
    EXPECT_EQ(r.rows[2 * (k - 1)].models.size(), 1u << k);
    EXPECT_EQ(r.rows[2 * (k - 1)].models, r.rows[2 * k - 1].models);
  }
  EXPECT_TRUE(r.equivalent);
  EXPECT_TRUE(r.peakDominated);
}
