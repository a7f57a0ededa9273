#include "aqec/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace aqec::cli;

TEST(Cli, ConfigErrorsAreCollected) {
  const json doc = {{"experiment", "variance-scan"},
                    {"colour", "blue"},
                    {"params", {{"budget", {{"restarts", -1}, {"max_steps", "many"}}}, {"bogus", 1}}}};
  try {
    load_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const auto& p = e.problems;
    auto has = [&](const std::string& s) {
      return std::any_of(p.begin(), p.end(), [&](const std::string& x) { return x.find(s) != std::string::npos; });
    };
    EXPECT_TRUE(has("colour"));
    EXPECT_TRUE(has("seed missing"));
    EXPECT_TRUE(has("params.budget.restarts must be positive"));
    EXPECT_TRUE(has("params.budget.max_steps must be of type number"));
    EXPECT_TRUE(has("params.bogus"));
    EXPECT_EQ(p.size(), 5u);
  }
}

TEST(Cli, CodeSpecsAreChecked) {
  const json doc = {{"experiment", "variance-scan"},
                    {"seed", 1},
                    {"params", {{"codes", {{{"family", "toric"}}, {{"family", "warp"}}}}}}};
  EXPECT_THROW(load_config(doc), ConfigError);
  EXPECT_THROW(load_config({{"experiment", "nope"}, {"seed", 1}}), ConfigError);
}

TEST(Cli, DefaultsMergeWithOverrides) {
  const auto cfg = load_config({{"experiment", "tee"}, {"seed", 3}, {"params", {{"stringnet_L", {2}}}}});
  EXPECT_EQ(cfg.params["L"], 3);
  EXPECT_EQ(cfg.params["stringnet_L"], json({2}));
  const auto other = load_config({{"experiment", "tee"}, {"seed", 4}, {"params", {{"stringnet_L", {2}}}}});
  EXPECT_NE(cfg.hash(), other.hash());
  EXPECT_EQ(cfg.hash(), load_config({{"experiment", "tee"}, {"seed", 3}, {"params", {{"stringnet_L", {2}}}}}).hash());
  for (const auto& name : experiment_names()) EXPECT_NO_THROW(default_params(name));
}

TEST(Cli, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(to_csv({{"x", "y"}, {{"1", "a\nb"}}}), "x,y\r\n1,\"a\nb\"\r\n");
  EXPECT_THROW(to_csv({{"x", "y"}, {{"1"}}}), std::logic_error);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");
}

TEST(Cli, RunsAreReproducibleAcrossThreadCounts) {
  json doc = {{"experiment", "proof-replay"}, {"seed", 5}, {"params", {{"circuits", 6}}}};
  const auto one = run_experiment(load_config(doc));
  doc["threads"] = 3;
  const auto three = run_experiment(load_config(doc));
  EXPECT_EQ(to_csv(one.table), to_csv(three.table));
  EXPECT_TRUE(one.violations.empty());
  EXPECT_EQ(one.table.rows.size(), 6u);
}

TEST(Cli, WritesAllOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "aqec_cli_test";
  std::filesystem::remove_all(dir);
  const auto cfg = load_config({{"experiment", "verdict-sweep"}, {"seed", 1}});
  const auto res = run_experiment(cfg);
  write_outputs(res, cfg, dir, 0.5);
  for (const char* f : {"verdict-sweep.csv", "verdict-sweep.json", "verdict-sweep.manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  std::ifstream in(dir / "verdict-sweep.manifest.json");
  const auto manifest = json::parse(in);
  EXPECT_EQ(manifest["config_hash"], cfg.hash());
  EXPECT_EQ(manifest["points"].size(), 2u);
  std::ifstream csv(dir / "verdict-sweep.csv");
  std::stringstream ss;
  ss << csv.rdbuf();
  EXPECT_NE(ss.str().find(cfg.hash()), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, MakeCodeFamilies) {
  EXPECT_EQ(make_code({{"family", "stabilizer"}, {"name", "steane"}}, 0).n, 7);
  EXPECT_EQ(make_code({{"family", "random"}, {"n", 4}, {"k", 1}}, 9).dim, 2u);
  const auto toric = json{{"family", "toric"}, {"L", 3}};
  EXPECT_EQ(native_graph(toric, make_code(toric, 0)).n, 18);
  EXPECT_THROW(make_code({{"family", "heisenberg"}, {"n", 12}}, 0), ConfigError);
}
