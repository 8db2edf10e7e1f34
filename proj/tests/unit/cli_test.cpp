#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "localflow/cli.hpp"

namespace localflow {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kData = LOCALFLOW_TEST_DATA;
const std::string kGraph = kData + "/barbell.edgelist";
const std::string kSeeds = kData + "/barbell.seeds";

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "localflow");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("localflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string k6() {
    std::string text;
    for (int u = 0; u < 6; ++u) {
      for (int v = u + 1; v < 6; ++v) text += std::to_string(u) + " " + std::to_string(v) + "\n";
    }
    return write("k6.edgelist", text);
  }

  fs::path dir_;
};

TEST_F(CliTest, ImproveBarbell) {
  for (const char* cmd : {"improve", "improve-exact"}) {
    CliRun r = run({cmd, "-g", kGraph, "-a", kSeeds, "--sigma", "1/2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    json j = r.parsed();
    EXPECT_EQ(j["phi"]["num"], 1);
    EXPECT_EQ(j["phi"]["den"], 7);
    EXPECT_EQ(j["set"], json({0, 1, 2}));
    EXPECT_EQ(j["vol"], 7);
    EXPECT_EQ(j["outcome"], "improved");
    EXPECT_EQ(j["solver"], std::string(cmd) == "improve" ? "approx" : "exact");
    EXPECT_FALSE(j["alpha_trace"].empty());
    EXPECT_GT(j["touched_volume"].get<int>(), 0);
  }
}

TEST_F(CliTest, MetisAndHumanOutput) {
  CliRun r = run({"improve", "-g", kData + "/barbell.metis", "-f", "metis", "--seed-vertices", "0",
               "1", "2", "--sigma", "1/2", "-o", "human"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("phi: 1/7"), std::string::npos) << r.out;
}

TEST_F(CliTest, Stats) {
  CliRun r = run({"stats", "-g", kGraph, "-a", kSeeds});
  ASSERT_EQ(r.code, kExitOk);
  json j = r.parsed();
  EXPECT_EQ(j["n"], 8);
  EXPECT_EQ(j["m"], 14);
  EXPECT_EQ(j["vol_a"], 7);
  EXPECT_EQ(j["phi"]["den"], 7);
  EXPECT_EQ(j["min_sigma"]["num"], 1);
  EXPECT_EQ(j["min_sigma"]["den"], 2);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(run({"improve", "-g", kGraph, "-a", kSeeds, "--sigma", "0"}).code, kExitInputError);
  EXPECT_EQ(run({"improve", "-g", kGraph, "-a", kSeeds, "--sigma", "x"}).code, kExitInputError);
  EXPECT_EQ(run({"improve", "-g", kGraph, "-a", kSeeds, "--sigma", "1/3"}).code, kExitInputError);
  EXPECT_EQ(run({"improve", "-a", kSeeds, "--sigma", "1/2"}).code, kExitInputError);
  EXPECT_EQ(run({"improve", "-g", kGraph, "--sigma", "1/2"}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  const std::string bad = write("bad.edgelist", "0 1\n1 1\n");
  CliRun r = run({"stats", "-g", bad});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(run({"stats", "-g", kGraph, "--seed-vertices", "99"}).code, kExitInputError);
}

TEST_F(CliTest, NoImprovementExitsOneWithCertificate) {
  const std::string g = k6();
  const std::string cert = (dir_ / "k6.cert").string();
  CliRun r = run({"improve", "-g", g, "--seed-vertices", "0", "--sigma", "1/2", "--certificate", cert});
  ASSERT_EQ(r.code, kExitNegative) << r.err;
  json j = r.parsed();
  EXPECT_EQ(j["outcome"], "no-improvement");
  EXPECT_TRUE(j["set"].empty());
  EXPECT_EQ(j["certificate"]["alpha"]["num"], 1);
  ASSERT_TRUE(fs::exists(cert));
  CliRun v = run({"certify", "-g", g, "--validate", cert});
  EXPECT_EQ(v.code, kExitOk) << v.out << v.err;
  EXPECT_TRUE(v.parsed()["valid"].get<bool>());
}

TEST_F(CliTest, CertifyRoundTrip) {
  const std::string cert = (dir_ / "barbell.cert").string();
  CliRun w = run({"certify", "-g", kGraph, "-a", kSeeds, "--alpha", "1/8", "--sigma", "1/2",
               "--write", cert});
  ASSERT_EQ(w.code, kExitOk) << w.err;
  EXPECT_TRUE(w.parsed()["written"].get<bool>());
  CliRun v = run({"certify", "-g", kGraph, "--validate", cert});
  EXPECT_EQ(v.code, kExitOk) << v.out;

  // Claim the same flow at a larger alpha.
  std::ifstream in(cert);
  std::stringstream text;
  text << in.rdbuf();
  std::string s = text.str();
  s.replace(s.find("alpha 1/8"), 9, "alpha 1/2");
  const std::string tampered = write("tampered.cert", s);
  CliRun t = run({"certify", "-g", kGraph, "--validate", tampered});
  EXPECT_EQ(t.code, kExitNegative);
  EXPECT_FALSE(t.parsed()["valid"].get<bool>());

  const std::string junk = write("junk.cert", "localflow-certificate 1\nalpha q\n");
  EXPECT_EQ(run({"certify", "-g", kGraph, "--validate", junk}).code, kExitInputError);
}

TEST_F(CliTest, CertifyRefusesAPartialFlow) {
  const std::string cert = (dir_ / "none.cert").string();
  CliRun w = run({"certify", "-g", kGraph, "-a", kSeeds, "--alpha", "1/2", "--sigma", "1/2",
               "--write", cert});
  EXPECT_EQ(w.code, kExitNegative);
  EXPECT_EQ(w.parsed()["cut"], json({0, 1, 2}));
  EXPECT_FALSE(fs::exists(cert));
  EXPECT_EQ(run({"certify", "-g", kGraph, "-a", kSeeds}).code, kExitInputError);
}

TEST_F(CliTest, FlowBothSolvers) {
  for (const char* solver : {"approx", "exact"}) {
    CliRun r = run({"flow", "-g", kGraph, "-a", kSeeds, "--alpha", "1/2", "--sigma", "1/2",
                 "--solver", solver, "--check-invariants"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    json j = r.parsed();
    EXPECT_EQ(j["flow_value"]["num"], 2);
    EXPECT_EQ(j["flow_value"]["den"], 1);
    EXPECT_FALSE(j["full_flow"].get<bool>());
    EXPECT_EQ(j["cut"], json({0, 1, 2}));
    EXPECT_EQ(j["invariant_violations"], 0);
  }
  CliRun capped = run({"flow", "-g", kGraph, "-a", kSeeds, "--alpha", "1/2", "--sigma", "1/2",
                    "--phase-limit", "0"});
  EXPECT_EQ(capped.code, kExitOk);
  EXPECT_FALSE(capped.parsed()["exact"].get<bool>());
}

TEST_F(CliTest, SeedJobsAreDeterministic) {
  CliRun one = run({"seed", "-g", kGraph, "-v", "0", "4", "7", "-j", "1"});
  CliRun many = run({"seed", "-g", kGraph, "-v", "0", "4", "7", "-j", "3"});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  ASSERT_EQ(many.code, kExitOk) << many.err;
  EXPECT_EQ(one.out, many.out);
  json j = one.parsed();
  ASSERT_EQ(j["sweeps"].size(), 3u);
  EXPECT_EQ(j["sweeps"][0]["vertex"], 0);
  EXPECT_EQ(run({"seed", "-g", kGraph, "-v", "99"}).code, kExitInputError);
}

}  // namespace
}  // namespace localflow
