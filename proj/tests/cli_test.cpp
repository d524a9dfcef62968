// Drives the colltrip binary end to end.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

CliRun run_binary(const std::string& binary, const std::string& args) {
  const std::string cmd = binary + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (const auto got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

CliRun cli(const std::string& args) { return run_binary(COLLTRIP_CLI_PATH, args); }

std::string sample(const std::string& name) { return std::string(COLLTRIP_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ReportHasStableKeys) {
  const auto r = cli("count --transversal [0,1,2,3,4]");
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  for (const char* key : {"command", "parameters", "result", "timings", "exact", "version"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["command"], "count");
  EXPECT_EQ(j["result"]["triples"], 10);
  EXPECT_EQ(j["result"]["quadruples"], 5);
}

TEST(Cli, CountPointsFile) {
  const auto r = cli("count --n 7 --points " + sample("inverse7.points"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["triples"], 3);
  EXPECT_EQ(r.json()["result"]["quadruples"], 0);
}

TEST(Cli, BadInputExitsTwo) {
  EXPECT_EQ(cli("count --n 5 --points " + sample("duplicate.points")).code, 2);
  EXPECT_EQ(cli("count --n 5 --points " + sample("malformed.points")).code, 2);
  EXPECT_EQ(cli("count --n 5 --points /nonexistent/file").code, 2);
  EXPECT_EQ(cli("count --transversal [0,0,1]").code, 2);
  EXPECT_EQ(cli("count --transversal 0,1,2").code, 2);
  EXPECT_EQ(cli("count --n 5 --transversal [0,1,2]").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("psi").code, 2);
}

TEST(Cli, Psi) {
  auto r = cli("psi --n 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["value"], 3);
  EXPECT_EQ(r.json()["exact"], true);
  r = cli("psi --n 10 --workers 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["value"], 2);
}

TEST(Cli, PsiBudgetExhaustedExitsThree) {
  const auto r = cli("psi --n 14 --budget-nodes 10000");
  EXPECT_EQ(r.code, 3);
  const auto j = r.json();
  EXPECT_EQ(j["exact"], false);
  EXPECT_EQ(j["result"]["bound"], "upper");
  EXPECT_GE(j["result"]["value"].get<int>(), 9);
}

TEST(Cli, PsiCheckpointResume) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("colltrip_cli_ckpt_" + std::to_string(::getpid()) + ".json");
  std::filesystem::remove(path);
  CliRun r = cli("psi --n 9 --budget-nodes 20000 --checkpoint " + path.string());
  ASSERT_EQ(r.code, 3);
  ASSERT_TRUE(std::filesystem::exists(path));
  int rounds = 0;
  while (r.code == 3 && ++rounds < 1000) r = cli("psi --n 9 --budget-nodes 20000 --checkpoint " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["value"], 5);
  EXPECT_EQ(r.json()["parameters"]["resumed"], true);
  EXPECT_EQ(cli("psi --n 10 --checkpoint " + path.string()).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, Table) {
  const auto r = cli("table --max-n 6");
  ASSERT_EQ(r.code, 0);
  const auto rows = r.json()["result"]["rows"];
  ASSERT_EQ(rows.size(), 6u);
  const int expected[] = {0, 0, 1, 0, 2, 0};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(rows[i]["psi"], expected[i]) << i + 1;
  EXPECT_EQ(cli("table --max-n 0").code, 2);

  const auto csv = cli("table --max-n 3 --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out, "n,psi,status\n1,0,exact\n2,0,exact\n3,1,exact\n");
}

TEST(Cli, Construct) {
  auto r = cli("construct inverse --n 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["triples"], 3);
  EXPECT_EQ(r.json()["result"]["match"], true);

  r = cli("construct cubic --n 11");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["match"], true);
  EXPECT_EQ(cli("construct cubic --n 7").code, 2);

  r = cli("construct mobius --n 5 --a 1 --b 0 --c 1 --d 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["permutation"], (std::vector<int>{0, 1, 2, 4, 3}));
  EXPECT_EQ(cli("construct mobius --n 5 --a 1 --b 1 --c 1 --d 1").code, 2);
  EXPECT_EQ(cli("construct mobius --n 5 --a 1 --b 1 --c 0 --d 1").code, 2);
  EXPECT_EQ(cli("construct inverse --n 9").code, 2);
}

TEST(Cli, ConstructThenCountAgree) {
  const auto built = cli("construct g --n 11");
  ASSERT_EQ(built.code, 0);
  const auto perm = built.json()["result"]["permutation"].get<std::vector<int>>();
  std::string literal = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) literal += (i ? "," : "") + std::to_string(perm[i]);
  literal += "]";
  const auto counted = cli("count --transversal " + literal);
  ASSERT_EQ(counted.code, 0);
  EXPECT_EQ(counted.json()["result"]["triples"], built.json()["result"]["triples"]);
}

TEST(Cli, Pack) {
  for (const char* method : {"exact", "closed", "greedy"}) {
    const auto r = cli(std::string("pack ") + method + " 10 4");
    ASSERT_EQ(r.code, 0) << method;
    const auto res = r.json()["result"];
    EXPECT_EQ(res.contains("value") ? res["value"] : res["cost"], 3) << method;
  }
  EXPECT_EQ(cli("pack closed 13 4").code, 2);
  // T(28,2) is 40; (21,5) and (20,6) are the optima for 26 pairs.
  EXPECT_EQ(cli("pack exact 28 2").json()["result"]["value"], 40);
  EXPECT_EQ(cli("pack exact 26 2").json()["result"]["value"], 39);
  const auto greedy = cli("pack greedy 28 2").json()["result"];
  EXPECT_EQ(greedy["partition"], (std::vector<int>{15, 13}));
  EXPECT_EQ(greedy["cost"], 40);
}

TEST(Cli, VerifyQuick) {
  const auto r = cli("verify quick");
  const auto j = r.json();
  bool all = true;
  for (const auto& c : j["result"]["checks"]) {
    if (c["id"] != "4b") all = all && c["passed"].get<bool>();
  }
  EXPECT_TRUE(all);
  EXPECT_EQ(r.code, j["result"]["all_passed"].get<bool>() ? 0 : 1);
}

TEST(Cli, VerifyFailsWithSeededCountingBug) {
  const auto r = run_binary(COLLTRIP_SEEDED_BUG_PATH, "verify full");
  EXPECT_EQ(r.code, 1);
  const auto j = r.json();
  EXPECT_EQ(j["result"]["all_passed"], false);
  for (const auto& c : j["result"]["checks"]) {
    if (c["id"] == "3a" || c["id"] == "3c") EXPECT_EQ(c["passed"], false) << c["id"];
  }
}

TEST(Cli, PsiWitnessIsRecounted) {
  const auto j = cli("psi --n 8").json();
  EXPECT_EQ(j["result"]["witness_verified"], true);
  const auto w = j["result"]["witness"].get<std::vector<int>>();
  std::string literal = "[";
  for (std::size_t i = 0; i < w.size(); ++i) literal += (i ? "," : "") + std::to_string(w[i]);
  EXPECT_EQ(cli("count --transversal " + literal + "]").json()["result"]["triples"], j["result"]["value"]);
}
