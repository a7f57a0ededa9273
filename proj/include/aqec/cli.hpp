#pragma once

#include "aqec/codes.hpp"
#include "aqec/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqec::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  int threads = 1;
  json params;  // defaults merged with the user's values

  // FNV-1a over the canonical JSON of (experiment, seed, params).
  std::string hash() const;
};

const std::vector<std::string>& experiment_names();
json default_params(const std::string& experiment);

// Validates a config document; every problem is collected before throwing. Overrides from the
// command line are applied to the document before validation.
ExperimentConfig load_config(const json& doc);

// Code from a JSON spec such as {"family": "toric", "L": 3}. Random codes draw from `seed`.
CodeSpace make_code(const json& spec, std::uint64_t seed);
AdjacencyGraph native_graph(const json& spec, const CodeSpace& code);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct PointStatus {
  std::string key;
  std::string status;  // "ok" or the error message
  double seconds = 0.0;
};

struct ExperimentResult {
  std::string experiment;
  Table table;
  json report;
  std::vector<std::string> violations;
  std::vector<PointStatus> points;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string format_double(double x);
std::string csv_field(const std::string& field);  // RFC 4180 quoting
std::string to_csv(const Table& table);

// Writes <experiment>.csv, <experiment>.json and <experiment>.manifest.json through temporary
// files renamed into place, so readers never see a partial set.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config, const std::filesystem::path& dir,
                   double wall_seconds);

}  // namespace aqec::cli
