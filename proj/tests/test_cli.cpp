#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "beliefnet/beliefnet.hpp"
#include "cli.hpp"

using namespace beliefnet;
using namespace beliefnet::cli;

namespace {

const std::string kData = BELIEFNET_DATA_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string net(const char* name) { return kData + "/networks/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::path(testing::TempDir()) / "beliefnet_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

// Lines starting with `prefix` that also mention `needle`.
std::size_t count_lines(const std::string& text, const std::string& prefix,
                        const std::string& needle) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    n += line.rfind(prefix, 0) == 0 && contains(line, needle) ? 1 : 0;
  }
  return n;
}

}  // namespace

TEST(CliTest, VerifyMajorityOnK22) {
  auto r = run({"verify", "--network", net("k22.net"), "--function", "majority", "--axioms", "all"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "summary: 6/6 hold"));
  for (auto a : kAllAxioms) EXPECT_TRUE(contains(r.out, std::string(to_string(a)) + " ")) << r.out;
}

TEST(CliTest, VerifyFlipperFails) {
  auto r = run({"verify", "--network", net("k22.net"), "--function", "flipper",
                "--axioms", "bounded,monotonic"});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_TRUE(contains(r.out, "summary: 0/2 hold"));
  EXPECT_TRUE(contains(r.out, "P=0000"));
}

TEST(CliTest, SimulateSyncOscillation) {
  auto r = run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--function",
                "majority", "--mode", "sync"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "outcome: cycled preperiod=0 period=2"));
  EXPECT_EQ(r.out.rfind("config: {", 0), 0u);
  EXPECT_TRUE(contains(r.out, "\"max_steps\":1000"));
}

TEST(CliTest, WrongProfileLengthIsAUsageError) {
  auto r = run({"simulate", "--network", net("k22.net"), "--initial", "110", "--mode", "sync"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(contains(r.err, "length mismatch")) << r.err;
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", "--network", net("k22.net"), "--initial", "1100"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--mode", "warp"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"verify", "--network", net("k22.net"), "--function", "sometimes"}).code,
            kExitUsage);
  EXPECT_EQ(run({"verify", "--network", "/nonexistent.net"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--mode",
                 "random", "--prob", "1.5"})
                .code,
            kExitUsage);
}

TEST(CliTest, MalformedNetworkNamesFileAndLine) {
  auto bad = scratch("bad.net");
  spit(bad, "agents: a,b\nedge: a\n");
  auto r = run({"verify", "--network", bad.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(contains(r.err, bad.string() + ":2:")) << r.err;
}

TEST(CliTest, MissingSelfLoopsWarn) {
  auto r = run({"verify", "--network", net("star3.net"), "--axioms", "bounded"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.err, "warning:")) << r.err;
}

TEST(CliTest, ScheduledOppositeOutcomes) {
  auto b = run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--mode",
                "scheduled", "--schedule", kData + "/k22_b_first.schedule"});
  EXPECT_EQ(b.code, kExitOk) << b.err;
  EXPECT_TRUE(contains(b.out, "final: 1111"));
  auto a = run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--mode",
                "scheduled", "--schedule", kData + "/k22_a_first.schedule"});
  EXPECT_TRUE(contains(a.out, "final: 0000"));
  EXPECT_TRUE(contains(a.out, "consensus: yes"));
}

TEST(CliTest, RandomTraceIsByteIdenticalAndReplays) {
  auto t1 = scratch("t1.jsonl"), t2 = scratch("t2.jsonl");
  std::vector<std::string> base{"simulate", "--network", net("k22.net"), "--initial", "1100",
                                "--mode",   "random",    "--seed",        "5",       "--trace"};
  auto args1 = base, args2 = base;
  args1.push_back(t1.string());
  args2.push_back(t2.string());
  auto r1 = run(args1), r2 = run(args2);
  ASSERT_EQ(r1.code, kExitOk) << r1.err;
  EXPECT_EQ(slurp(t1), slurp(t2));
  EXPECT_FALSE(slurp(t1).empty());
  EXPECT_TRUE(contains(r1.out, "\"prob\":0.5"));

  auto replay = run({"replay", "--trace", t1.string()});
  EXPECT_EQ(replay.code, kExitOk) << replay.out << replay.err;
  EXPECT_TRUE(contains(replay.out, "issues: 0"));
  EXPECT_TRUE(contains(replay.out, "rerun_identical: yes"));
}

TEST(CliTest, ReplayFlagsTamperedTrace) {
  auto t = scratch("tampered.jsonl");
  ASSERT_EQ(run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--mode", "sync",
                 "--trace", t.string()})
                .code,
            kExitOk);
  auto text = slurp(t);
  auto pos = text.find("\"profile\":\"0011\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 16, "\"profile\":\"0111\"");
  spit(t, text);
  auto r = run({"replay", "--trace", t.string()});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_TRUE(contains(r.out, "issue: step=1"));
}

TEST(CliTest, AnalyzePathEquilibriaAndGraphs) {
  auto tg = scratch("path3.dot"), cg = scratch("path3_cond.dot");
  auto r = run({"analyze", "--network", net("path3.net"), "--equilibria", "--transition-graph",
                tg.string(), "--condensation", cg.string(), "--reachable-from", "010",
                "--construct-sequence", "010"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "equilibria: 6"));
  EXPECT_EQ(count_lines(r.out, "equilibrium: ", "consensus="), 6u);
  EXPECT_TRUE(contains(r.out, "leaves_are_equilibria=yes"));
  EXPECT_TRUE(contains(r.out, "reachable_from: 010"));
  EXPECT_EQ(slurp(tg).rfind("digraph", 0), 0u);
  EXPECT_TRUE(contains(slurp(tg), "doublecircle"));
  EXPECT_EQ(slurp(cg).rfind("digraph", 0), 0u);
}

TEST(CliTest, ConstructSequenceOnK22) {
  auto r = run({"construct-sequence", "--network", net("k22.net"), "--initial", "1100"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "round: 1 phase=increasing group={b1,b2} profile=1111"));
  EXPECT_TRUE(contains(r.out, "result: 1111"));
  auto flip = run({"construct-sequence", "--network", net("k22.net"), "--function", "flipper",
                   "--initial", "1100"});
  EXPECT_EQ(flip.code, kExitVerificationFailed);
}

TEST(CliTest, SweepSeedsOnK22) {
  auto r = run({"sweep", "--network", net("k22.net"), "--axis", "seeds", "--mode", "random",
                "--initial", "1100", "--seed-start", "0", "--seed-count", "1000", "--prob", "0.5"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "summary: cells=1000 converged=1000/1000 rate=100.00% errors=0"));
}

TEST(CliTest, SweepProfilesOnPathAllConverge) {
  auto r = run({"sweep", "--network", net("path3.net"), "--axis", "profiles", "--mode", "sync"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  for (int i = 0; i < 8; ++i) {
    EXPECT_TRUE(contains(r.out, "\n" + std::to_string(i) + "\tinitial=")) << i;
  }
  EXPECT_TRUE(contains(r.out, "summary: cells=8 converged=8/8 rate=100.00% errors=0"));
}

TEST(CliTest, EmptySweep) {
  auto r = run({"sweep", "--network", net("k22.net"), "--axis", "seeds", "--mode", "random",
                "--initial", "1100", "--seed-count", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "summary: cells=0 converged=0/0"));
}

TEST(CliTest, SweepNetworksReportsPerCellErrors) {
  auto r = run({"sweep", "--axis", "networks", "--network-dir", kData + "/networks", "--mode",
                "sync", "--initial", "1100"});
  // path3.net has three agents, so the 4-bit profile makes it an error row.
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(contains(r.out, "network=k22.net\tcycled"));
  EXPECT_TRUE(contains(r.out, "network=path3.net\terror"));
  EXPECT_TRUE(contains(r.out, "errors=1"));
}

TEST(CliTest, SweepIndependentOfWorkerCount) {
  std::vector<std::string> base{"sweep",    "--network", net("k22.net"), "--axis", "seeds",
                                "--mode",   "random",    "--initial",    "1100",   "--seed-count",
                                "50",       "--workers"};
  auto one = base, four = base;
  one.push_back("1");
  four.push_back("4");
  auto r1 = run(one), r4 = run(four);
  // Identical apart from the recorded worker count in the config line.
  auto body = [](const std::string& s) { return s.substr(s.find('\n')); };
  EXPECT_EQ(body(r1.out), body(r4.out));
}

TEST(CliTest, ConfigRoundTripReruns) {
  auto r = run({"simulate", "--network", net("k22.net"), "--initial", "1100", "--mode", "random",
                "--seed", "17"});
  ASSERT_EQ(r.code, kExitOk);
  const auto line = r.out.substr(8, r.out.find('\n') - 8);
  auto config = config_from_json(line);
  EXPECT_EQ(to_json(config), line);
  std::ostringstream out, err;
  EXPECT_EQ(run_config(config, out, err), kExitOk);
  EXPECT_EQ(out.str(), r.out);
  EXPECT_THROW(config_from_json("{"), std::invalid_argument);
}

TEST(CliTest, VersionAndHelp) {
  auto v = run({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_TRUE(contains(v.out, kVersion));
  auto h = run({"--help"});
  EXPECT_EQ(h.code, kExitOk);
  EXPECT_TRUE(contains(h.out, "simulate"));
}
