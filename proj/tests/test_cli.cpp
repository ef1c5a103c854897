#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include <json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string("\"") + HEIS_CLI_PATH + "\" " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, BallCount) {
  EXPECT_EQ(run("ball --n 1 --k 1 --format text").out, "7\n");
  const auto j = nlohmann::json::parse(run("ball --n 1 --k 2").out);
  EXPECT_EQ(j["result"]["cardinality"], 65);
  EXPECT_EQ(j["command"], "ball");
  EXPECT_TRUE(j.contains("version"));
  EXPECT_EQ(j["config"]["k"], 2);
}

TEST(Cli, Height) {
  EXPECT_EQ(run("height --chi 1 --eps 0.5 --delta 0.5 --kappa 2 --format text").out, "136\n");
  EXPECT_EQ(run("height --chi 1 --eps 0.5 --delta 0.5 --kappa 1 --format text").out, "8\n");
}

TEST(Cli, FolnerDecays) {
  const auto a = nlohmann::json::parse(run("folner --n 1 --k 5 --sigma e1").out);
  const auto b = nlohmann::json::parse(run("folner --n 1 --k 40 --sigma e1").out);
  EXPECT_LT(b["result"]["rows"][0]["ratio"]["value"].get<double>(), a["result"]["rows"][0]["ratio"]["value"].get<double>());
}

TEST(Cli, CsvHasPreamble) {
  const CliRun r = run("doubling --n 1 --k-max 3 --format csv --seed 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# command=doubling\n# version=", 0), 0u);
  EXPECT_NE(r.out.find("k,card,card_sq,ratio\n1,7,29,"), std::string::npos);
}

TEST(Cli, HypothesisChecklistEmbedded) {
  const auto j = nlohmann::json::parse(run("boundgen --seed 3").out);
  ASSERT_TRUE(j["result"]["hypotheses"].is_array());
  EXPECT_FALSE(j["result"]["hypotheses"].empty());
  EXPECT_EQ(j["config"]["seed"], 3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("ball --n 1 --k 1 --bogus").code, 64);
  EXPECT_EQ(run("nosuchcommand").code, 64);
  EXPECT_EQ(run("folner --n 1 --k 3 --sigma x7").code, 64);
  EXPECT_EQ(run("ball --n 2 --k 400 --cap 1000").code, 3);
  EXPECT_EQ(run("boundgen --seed 1 --eps 0.01").code, 2);
}

TEST(Cli, Reproducible) {
  for (const char* args : {"lss --seed 9 --trials 20", "intersect --seed 4 --trials 50", "bcp --seed 2 --trials 3"})
    EXPECT_EQ(run(args).out, run(args).out) << args;
}
