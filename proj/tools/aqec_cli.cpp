#include "aqec/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using aqec::cli::json;
  CLI::App app{"Approximate error-correction experiment runner"};
  std::string config_path, out_dir = "out", experiment;
  std::uint64_t seed = 0;
  int threads = 0;
  bool list = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads (overrides the config)");
  app.add_option("--experiment", experiment, "experiment name (overrides the config)");
  app.add_flag("--list", list, "print experiment names and default parameters");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& name : aqec::cli::experiment_names())
      std::cout << name << " " << aqec::cli::default_params(name).dump() << "\n";
    return 0;
  }

  json doc = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config " << config_path << "\n";
      return 2;
    }
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "config is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }
  if (app.count("--seed")) doc["seed"] = seed;
  if (app.count("--threads")) doc["threads"] = threads;
  if (app.count("--experiment")) doc["experiment"] = experiment;

  aqec::cli::ExperimentConfig cfg;
  try {
    cfg = aqec::cli::load_config(doc);
  } catch (const aqec::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = aqec::cli::run_experiment(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  aqec::cli::write_outputs(result, cfg, out_dir, wall);
  std::cout << cfg.experiment << ": " << result.table.rows.size() << " rows, " << result.violations.size()
            << " violations, " << wall << " s -> " << out_dir << "\n";
  for (const auto& v : result.violations) std::cerr << "violation: " << v << "\n";
  return result.violations.empty() ? 0 : 1;
}
