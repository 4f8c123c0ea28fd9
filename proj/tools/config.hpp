#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "san/candidates.hpp"
#include "san/ingest.hpp"
#include "san/scorers.hpp"

namespace san::cli {

// Everything a predict, infer or iterate run depends on. Empty lists mean the
// command's defaults.
struct ExperimentConfig {
  std::string manifest;
  std::string train;
  std::string validate;
  std::string test;
  std::string task = "links";  // links | attributes
  std::string scope = "hop2cat1";
  std::vector<std::string> scorers;
  std::string grid;
  double alpha = 0.7;
  std::vector<int> ranks;
  std::vector<std::string> variants;
  std::size_t trials = 10;
  double sample_fraction = 0.1;
  int top_k = 4;
  std::vector<int> ks{2, 3, 4};
  std::string negatives = "sampled";  // sampled | exhaustive
  double negative_ratio = 10.0;
  int iterations = 1;
  bool mutex_postprocessing = true;
  std::optional<std::uint64_t> seed;
  std::string out;

  // Throws DomainError on a missing seed or out-of-range values.
  void check() const;
  std::uint64_t seed_value() const;

  Task task_value() const { return parse_task(task); }
  Scope scope_value() const { return parse_scope(scope); }
  LabelOptions label_options() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& doc);  // ParseError on bad fields
  static ExperimentConfig load(const std::string& path);
};

}  // namespace san::cli
