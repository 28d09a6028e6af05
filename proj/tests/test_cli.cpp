#include <gtest/gtest.h>

#include <sstream>

#include "morita/cli.hpp"

using namespace morita;

namespace {

std::string sample(const std::string& name) { return std::string(MORITA_SAMPLES) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ValidateExitCodes) {
  EXPECT_EQ(run({"validate", sample("F.json")}).code, 0);
  EXPECT_EQ(run({"validate", sample("missing_identity.json")}).code, 2);
  EXPECT_EQ(run({"validate", sample("phantom.json")}).code, 2);
  EXPECT_EQ(run({"validate", sample("does_not_exist.json")}).code, 2);
}

TEST(Cli, MoritaDecisions) {
  EXPECT_EQ(run({"morita", sample("M2.json"), sample("M7.json")}).code, 0);
  EXPECT_EQ(run({"morita", sample("M2.json"), sample("F2.json")}).code, 1);
}

TEST(Cli, NonSplitCenterExitsWithThree) {
  auto r = run({"--json", "decompose", sample("sqrt2.json")});
  EXPECT_EQ(r.code, 3);
  auto j = io::parse_text(r.out);
  EXPECT_EQ(j["exit_code"], 3);
  EXPECT_EQ(j["polynomial"], "t^2 - 2");
}

TEST(Cli, JsonCarriesTheExitCode) {
  auto r = run({"--json", "k0", sample("form_M2_M3.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::parse_text(r.out);
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(j["rank"], 2);
}

TEST(Cli, ComposeAndFibrancy) {
  auto r = run({"--json", "compose", sample("triple.json"), sample("triple.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::parse_text(r.out)["mult"][0][0], 9);
  EXPECT_EQ(run({"fibrancy-probe", sample("zero.json")}).code, 0);
  EXPECT_EQ(run({"fibrancy-probe", sample("F.json")}).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"morita", sample("M2.json")}).code, 2);
  EXPECT_EQ(run({"k0-ring", sample("M2.json")}).code, 2);
}
