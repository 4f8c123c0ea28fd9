#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "san/evaluation.hpp"
#include "san/synthetic.hpp"

namespace san::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitSolver = 4;
inline constexpr int kExitUsage = 64;

struct CommandResult {
  std::vector<std::filesystem::path> written;
  ResultTable table;
};

CommandResult cmd_generate(const GeneratorParams& params, std::uint64_t seed, const std::string& out);

struct IngestOptions {
  std::string manifest;  // raw files: directed edges, attribute records, mutex pairs
  int k = 4;
  int min_freq = 3;
  std::string out;
};

// Writes canonical snapshot files, a manifest with backfilled edge files,
// and stats.csv.
CommandResult cmd_ingest(const IngestOptions& options);

// Link prediction. Per scorer, one report without attributes and one with;
// per supervised variant, one report. Writes results.csv and, when variants
// are requested, supervised.csv.
CommandResult cmd_predict(const ExperimentConfig& config);

// Attribute inference on the training snapshot.
CommandResult cmd_infer(const ExperimentConfig& config);

// Infer attributes for sampled users, then predict links.
CommandResult cmd_iterate(const ExperimentConfig& config);

// Default scorer lists.
std::vector<std::string> default_link_scorers();       // CN ... RWwR, Random
std::vector<std::string> default_attribute_scorers();  // plus BASELINE

}  // namespace san::cli
