#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "jrank/io.hpp"
#include "support.hpp"

namespace jrank {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "jrank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(JRANK_DATA_DIR) + "/" + rel; }

std::string golden(const std::string& name) {
  std::ifstream in(std::string(JRANK_GOLDEN_DIR) + "/" + name, std::ios::binary);
  EXPECT_TRUE(in) << "missing golden " << name;
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> bridge_csv() {
  return {"--approvals", data("bridge_pair/approvals.csv"), "--groups",
          data("bridge_pair/groups.csv"), "--k", "3"};
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

TEST(CliGolden, VerifyJrBridgePair) {
  const auto r = run(with({"verify-jr"}, with(bridge_csv(), {"--items", "2,3,4"})));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("verify_jr_bridge_pair.csv"));
}

TEST(CliGolden, VerifyJrPassingSet) {
  const auto r = run(with({"verify-jr"}, with(bridge_csv(), {"--items", "0 1 2", "--bruteforce"})));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "jr,witness_item,witness_group\ntrue,,\n");
}

TEST(CliGolden, VerifyJrJson) {
  const auto r = run(with({"--format", "json", "verify-jr"}, with(bridge_csv(), {"--items", "2,3,4"})));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("verify_jr_bridge_pair.json"));
}

TEST(CliGolden, SelectAllMethods) {
  std::string combined;
  for (const std::string method : {"opt", "exact", "greedy"}) {
    const auto r = run(with({"select"}, with(bridge_csv(), {"--rule", "mda", "--method", method})));
    EXPECT_EQ(r.code, 0) << r.err;
    combined += r.out;
  }
  EXPECT_EQ(combined, golden("select_bridge_pair.csv"));
}

TEST(CliGolden, SelectJsonUsesRationalStrings) {
  const auto r = run({"select", "--instance", data("bridge_pair/instance.json"), "--rule", "mda",
                      "--method", "opt", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("select_bridge_pair.json"));
}

TEST(CliGolden, PriceExactAndGreedy) {
  std::string combined;
  for (const std::string method : {"exact", "greedy"}) {
    const auto r = run(with({"price"}, with(bridge_csv(), {"--rule", "mda", "--method", method})));
    EXPECT_EQ(r.code, 0) << r.err;
    combined += r.out;
  }
  EXPECT_EQ(combined, golden("price_bridge_pair.csv"));
}

TEST(CliGolden, ReportTwoColour) {
  const auto r = run({"report", "--instance", data("two_colour/instance.json"), "--items", "2,3,4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("report_two_colour.csv"));
}

TEST(CliGolden, SelectTwoColourWithCommentFilter) {
  // Item 4 repeats item 2's text, so it is dropped; ids stay as in the files.
  const auto r = run({"select", "--approvals", data("two_colour/approvals.csv"), "--groups",
                      data("two_colour/groups.csv"), "--comments", data("two_colour/comments.csv"),
                      "--k", "3", "--rule", "mda", "--method", "opt"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("select_two_colour_comments.csv"));
}

TEST(CliGolden, ConstructTightInstance) {
  const auto r = run({"construct", "thm42", "--n", "6", "--k", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("construct_thm42_n6_k3.json"));
}

TEST(CliGolden, SimulateSmallSweep) {
  const auto r = run({"--seed", "7", "simulate", "--phi", "0.2:1.0:0.4", "--n", "20", "--m", "12",
                      "--k", "3", "--tau", "4", "--sims", "10", "--threads", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("simulate_small.csv"));
}

TEST(Cli, SimulateDefaultGridShape) {
  const auto r = run({"simulate", "--phi", "0.1:1.0:0.05", "--n", "10", "--m", "10", "--k", "2",
                      "--tau", "3", "--sims", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 20);
}

TEST(Cli, SimulateWritesFiles) {
  const auto dir = fs::temp_directory_path() / "jrank_cli_sim";
  fs::create_directories(dir);
  const auto r = run({"simulate", "--phi", "0.5", "--n", "10", "--m", "10", "--k", "2", "--tau", "3",
                      "--sims", "2", "--out", (dir / "s.csv").string(), "--svg", (dir / "s.svg").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_GT(fs::file_size(dir / "s.csv"), 0u);
  EXPECT_GT(fs::file_size(dir / "s.svg"), 0u);
  fs::remove_all(dir);
}

TEST(Cli, ConstructWritesLoadableFiles) {
  const auto dir = fs::temp_directory_path() / "jrank_cli_construct";
  fs::remove_all(dir);
  const auto r = run({"construct", "thm51", "--n", "12", "--k", "4", "--gamma", "2", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = run({"price", "--approvals", (dir / "approvals.csv").string(), "--groups",
                      (dir / "groups.csv").string(), "--scores", (dir / "scores.csv").string(), "--k",
                      "4", "--rule", "external", "--method", "exact"});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("external,exact,4,2,2,true,false"), std::string::npos) << p.out;
  fs::remove_all(dir);
}

TEST(Cli, Determinism) {
  const std::vector<std::string> args = {"--seed", "3", "simulate", "--phi", "0.3:0.9:0.3", "--n",
                                         "15", "--m", "10", "--k", "3", "--tau", "3", "--sims", "4"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliExit, ValidationErrorsExitOne) {
  auto r = run(with({"select"}, {"--approvals", data("bridge_pair/approvals.csv"), "--k", "9"}));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_NE(r.err.find("BadK"), std::string::npos);
  r = run({"select", "--k", "2"});
  EXPECT_EQ(r.code, 1);
  r = run({"select", "--rule", "nope", "--instance", data("bridge_pair/instance.json")});
  EXPECT_EQ(r.code, 1);
  r = run({"construct", "thm42", "--n", "2", "--k", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("BadDivisibility"), std::string::npos);
  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 1);
}

TEST(CliExit, RuntimeErrorsExitTwo) {
  auto r = run({"--budget", "5", "select", "--instance", data("bridge_pair/instance.json"), "--method",
                "exact"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("BudgetExceeded"), std::string::npos);
  const auto cache = fs::temp_directory_path() / "jrank_cli_cold_cache";
  fs::remove_all(cache);
  r = run({"--offline", "fetch", "--url", "https://example.invalid/a.csv", "--cache-dir", cache.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NetworkError"), std::string::npos);
  fs::remove_all(cache);
}

TEST(CliExit, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify-jr"), std::string::npos);
}

TEST(Cli, JsonAndCsvInputsAgree) {
  const auto a = run({"select", "--instance", data("bridge_pair/instance.json"), "--rule", "mda"});
  const auto b = run(with({"select"}, with(bridge_csv(), {"--rule", "mda"})));
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(load_instance_json(data("bridge_pair/instance.json")),
            load_instance_csv(data("bridge_pair/approvals.csv"), 3, fs::path(data("bridge_pair/groups.csv")),
                              std::nullopt));
}

}  // namespace
}  // namespace jrank
