#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun gca(const std::string& args) {
  const std::string cmd = std::string(GCA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(GCA_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, MutateReportsTheExchangedVariable) {
  const CliRun r = gca("mutate --seed " + sample("rank2_r12.json") + " --word 2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["seed"]["x"][1], "x1^2*x2^-1 + z[2,1]*x1*x2^-1 + x2^-1");
  EXPECT_EQ(j["steps"].size(), 1u);
  EXPECT_EQ(j["steps"][0]["direction"], 2);
}

TEST(Cli, EmptyAndRepeatedWordsEchoTheInitialSeed) {
  const json a = json::parse(gca("mutate --seed " + sample("rank2_r22.json")).out);
  const json b = json::parse(gca("mutate --seed " + sample("rank2_r22.json") + " --word 1,1").out);
  EXPECT_EQ(a["seed"], b["seed"]);
  EXPECT_EQ(a["seed"]["x"], json::array({"x1", "x2"}));
}

TEST(Cli, PatternReport) {
  const CliRun root = gca("pattern --seed " + sample("a2_principal.json"));
  ASSERT_EQ(root.code, 0);
  const json j = json::parse(root.out);
  EXPECT_EQ(j["matrices"]["C_plus"], json::parse("[[1,0],[0,1]]"));
  EXPECT_EQ(j["matrices"]["F"], json::parse("[[0,0],[0,0]]"));
  EXPECT_EQ(j["matrices"]["Gext"], json::parse("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"));

  for (const char* s : {"rank2_r12.json", "rank2_r22.json", "a2_principal.json", "rank2_r12_frozen.json"}) {
    const CliRun r = gca("pattern --seed " + sample(s) + " --word 1,2,1,2");
    EXPECT_EQ(r.code, 0) << s;
    EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>()) << s;
  }
  const json r12 = json::parse(gca("pattern --seed " + sample("rank2_r12.json") + " --word 1").out);
  EXPECT_EQ(r12["F_polynomials"][0], "yh1 + 1");
}

TEST(Cli, ExploreReports) {
  const json a2 = json::parse(gca("explore --unlabeled --seed " + sample("a2_principal.json")).out);
  EXPECT_TRUE(a2["closed"].get<bool>());
  EXPECT_EQ(a2["cluster_count"], 5);
  EXPECT_EQ(a2["variables"].size(), 5u);

  const json r1 = json::parse(gca("explore --seed " + sample("rank1_r2.json")).out);
  EXPECT_EQ(r1["cluster_count"], 2);

  const CliRun small = gca("explore --budget 1 --seed " + sample("a2_principal.json"));
  EXPECT_EQ(small.code, 0);
  const json t = json::parse(small.out);
  EXPECT_FALSE(t["closed"].get<bool>());
  EXPECT_TRUE(t["truncation"].is_string());
}

TEST(Cli, VerifyIsDeterministic) {
  const std::string args = "verify --suite involution --trials 30 --depth 5 --rand-seed 7";
  const CliRun a = gca(args), b = gca(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = gca("verify --suite involution --trials 30 --depth 5 --rand-seed 8");
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, VerifyOnShippedSeeds) {
  const CliRun r = gca("verify --suite laurent --depth 8 --trials 10 --seed " + sample("rank2_r12.json"));
  EXPECT_EQ(r.code, 0);
  const CliRun bad = gca("verify --suite all --trials 3 --depth 3 --seed " + sample("corrupted_lambda.json"));
  EXPECT_EQ(bad.code, 1);
  const json j = json::parse(bad.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  bool witnessed = false;
  for (const auto& s : j["suites"])
    if (!s["first_failure"].is_null() && s["first_failure"]["kind"] == "CompatibilityBroken") witnessed = true;
  EXPECT_TRUE(witnessed);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(gca("").code, 2);
  EXPECT_EQ(gca("frobnicate").code, 2);
  EXPECT_EQ(gca("mutate").code, 2);
  EXPECT_EQ(gca("mutate --seed " + sample("rank2_r12.json") + " --word 3").code, 2);
  EXPECT_EQ(gca("mutate --seed /nonexistent.json").code, 2);
  EXPECT_EQ(gca("verify --suite nonsense").code, 2);
  EXPECT_EQ(gca("verify --trials 0").code, 2);
}

TEST(Cli, TextRendering) {
  const CliRun r = gca("mutate --text --seed " + sample("rank2_r12.json") + " --word 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("x1^2*x2^-1 + z[2,1]*x1*x2^-1 + x2^-1"), std::string::npos);
  EXPECT_THROW(json::parse(r.out), json::parse_error);
}
