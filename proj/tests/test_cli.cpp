#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace framelab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("framelab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    previous_ = fs::current_path();
    fs::current_path(dir_);
  }
  void TearDown() override {
    fs::current_path(previous_);
    fs::remove_all(dir_);
  }

  static CliRun run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
  fs::path previous_;
};

TEST_F(Cli, GenAndCertifyMercedes) {
  const CliRun gen = run_cli({"gen", "mercedes", "-o", "m.json"});
  ASSERT_EQ(gen.code, kSuccess) << gen.err;
  EXPECT_EQ(gen.doc()["atoms"], 3);
  EXPECT_EQ(gen.doc()["provenance"]["generator"], "mercedes");

  const CliRun pr = run_cli({"certify", "pr", "m.json"});
  EXPECT_EQ(pr.code, kSuccess);
  EXPECT_EQ(pr.doc()["verdict"], "holds");
  EXPECT_TRUE(pr.doc()["input_digests"].contains("m.json"));
  EXPECT_FALSE(pr.doc().contains("timings_ms"));
}

TEST_F(Cli, OnbFailsWithWitness) {
  ASSERT_EQ(run_cli({"gen", "onb", "--dim", "2", "-o", "onb.json"}).code, kSuccess);
  const CliRun pr = run_cli({"certify", "pr", "onb.json"});
  EXPECT_EQ(pr.code, kVerdictFails);
  const json cert = pr.doc()["certificates"][0];
  EXPECT_EQ(cert["witness_subset"], json::array({0}));
  EXPECT_TRUE(cert.contains("witness_pair"));

  const CliRun nr = run_cli({"certify", "nr", "onb.json"});
  EXPECT_EQ(nr.code, kSuccess);
  EXPECT_EQ(nr.doc()["oracle_agrees"], true);
}

TEST_F(Cli, Bounds) {
  ASSERT_EQ(run_cli({"gen", "mercedes", "-o", "m.json"}).code, kSuccess);
  const CliRun b = run_cli({"bounds", "m.json"});
  ASSERT_EQ(b.code, kSuccess);
  EXPECT_NEAR(b.doc()["bounds"]["lower"].get<double>(), 1.5, 1e-12);
  EXPECT_NEAR(b.doc()["bounds"]["upper"].get<double>(), 1.5, 1e-12);
  EXPECT_EQ(b.doc()["eta"], 1.0);
  EXPECT_EQ(b.doc()["bessel"]["holds"], true);
}

TEST_F(Cli, TextFormatAndTimings) {
  ASSERT_EQ(run_cli({"gen", "mercedes", "-o", "m.json"}).code, kSuccess);
  const CliRun text = run_cli({"certify", "pr", "m.json", "--format", "text"});
  EXPECT_EQ(text.code, kSuccess);
  EXPECT_NE(text.out.find("verdict: holds"), std::string::npos) << text.out;
  const CliRun timed = run_cli({"--timings", "certify", "pr", "m.json"});
  EXPECT_TRUE(timed.doc().contains("timings_ms"));
}

TEST_F(Cli, Deterministic) {
  ASSERT_EQ(run_cli({"gen", "random", "--dim", "3", "--n", "7", "--seed", "5", "-o", "r.json"}).code, kSuccess);
  const CliRun a = run_cli({"certify", "pr", "r.json"});
  const CliRun b = run_cli({"certify", "pr", "r.json"});
  EXPECT_EQ(a.out, b.out);
  const CliRun g1 = run_cli({"gen", "random", "--dim", "3", "--n", "7", "--seed", "5", "-o", "s.json"});
  EXPECT_EQ(g1.doc()["output_digest"], a.doc()["input_digests"]["r.json"]);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run_cli({"bounds", "missing.json"}).code, kUsage);
  EXPECT_EQ(run_cli({"gen", "onb", "--dim", "0", "-o", "x.json"}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kSuccess);
}

TEST_F(Cli, CapExceededAndInconclusive) {
  ASSERT_EQ(run_cli({"gen", "random", "--dim", "2", "--n", "25", "-o", "big.json"}).code, kSuccess);
  const CliRun big = run_cli({"certify", "pr", "big.json"});
  EXPECT_EQ(big.code, kUndecided);
  EXPECT_NE(big.err.find("alpha"), std::string::npos);

  ASSERT_EQ(run_cli({"gen", "random", "--dim", "2", "--n", "4", "--field", "complex", "-o", "c.json"}).code,
            kSuccess);
  const CliRun c = run_cli({"certify", "pr", "c.json"});
  EXPECT_EQ(c.code, kUndecided);
  EXPECT_EQ(c.doc()["verdict"], "inconclusive");
  EXPECT_EQ(run_cli({"certify", "nr", "c.json"}).code, kUsage);
}

TEST_F(Cli, ToleranceFromEnvironment) {
  ASSERT_EQ(run_cli({"gen", "mercedes", "-o", "m.json"}).code, kSuccess);
  ::setenv("FRAMELAB_TOL", "1e-6", 1);
  const CliRun env = run_cli({"certify", "pr", "m.json"});
  const CliRun flag = run_cli({"certify", "pr", "m.json", "--tol", "1e-4"});
  const CliRun junk = [] {
    ::setenv("FRAMELAB_TOL", "abc", 1);
    return run_cli({"certify", "pr", "m.json"});
  }();
  ::unsetenv("FRAMELAB_TOL");
  EXPECT_EQ(env.doc()["tolerances"]["rank"], 1e-6);
  EXPECT_EQ(flag.doc()["tolerances"]["rank"], 1e-4);
  EXPECT_EQ(junk.code, kUsage);
}

TEST_F(Cli, Perturbations) {
  ASSERT_EQ(run_cli({"gen", "deficient-tail", "--dim", "3", "--head-dim", "2", "--tail-len", "3", "--seed", "2",
                     "-o", "t.json"})
                .code,
            kSuccess);
  const CliRun bpr = run_cli({"perturb", "break-pr", "t.json", "--head", "0,1,2,3", "--eps", "0.5", "-o", "g.json"});
  ASSERT_EQ(bpr.code, kSuccess) << bpr.err;
  EXPECT_LT(bpr.doc()["perturbation"]["l2_distance"].get<double>(), 0.5);
  EXPECT_EQ(run_cli({"certify", "pr", "g.json"}).code, kVerdictFails);

  ASSERT_EQ(run_cli({"gen", "onb", "--dim", "2", "-o", "onb.json"}).code, kSuccess);
  const CliRun bnr = run_cli({"perturb", "break-nr", "onb.json", "--subset", "0", "--eps", "0.5", "-o", "n.json"});
  ASSERT_EQ(bnr.code, kSuccess) << bnr.err;
  EXPECT_NEAR(bnr.doc()["perturbation"]["scaled_inner"].get<double>(), 0.25, 1e-9);
  EXPECT_EQ(run_cli({"certify", "nr", "n.json"}).code, kVerdictFails);
}

TEST_F(Cli, SweepAndAlpha) {
  ASSERT_EQ(run_cli({"gen", "mercedes", "-o", "m.json"}).code, kSuccess);
  const CliRun sweep = run_cli({"sweep", "m.json", "--lambdas", "0.000001,0.5", "--trials", "10", "--seed", "3"});
  ASSERT_EQ(sweep.code, kSuccess) << sweep.err;
  EXPECT_EQ(sweep.doc()["sweep"].size(), 2u);
  EXPECT_EQ(sweep.doc()["sweep"][0]["all_preserved"], true);
  const CliRun alpha = run_cli({"alpha", "m.json"});
  ASSERT_EQ(alpha.code, kSuccess);
  EXPECT_NEAR(alpha.doc()["alpha"]["alpha"].get<double>(), 0.375, 1e-9);
}

TEST_F(Cli, Tensor) {
  ASSERT_EQ(run_cli({"gen", "mercedes", "-o", "m.json"}).code, kSuccess);
  const CliRun t = run_cli({"tensor", "m.json", "m.json", "-o", "mm.json", "--check", "pr"});
  ASSERT_EQ(t.code, kSuccess) << t.err;
  EXPECT_NEAR(t.doc()["bounds"]["lower"].get<double>(), 2.25, 1e-9);
  EXPECT_EQ(t.doc()["check"]["theorem_consistent"], true);
  EXPECT_EQ(run_cli({"certify", "pr", "mm.json"}).code, kSuccess);
}

}  // namespace
}  // namespace framelab::cli
