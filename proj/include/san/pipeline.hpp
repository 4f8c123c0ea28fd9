#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "san/evaluation.hpp"

namespace san {

// Link prediction on the test pair in three settings: (i) social links only,
// (ii) the training snapshot after removing the attributes of sampled users,
// (iii) that network plus attributes inferred for those users.
enum class IterativeVariant { kWithoutAttributes, kRemainingAttributes, kInferredAttributes };

constexpr std::array<IterativeVariant, 3> kIterativeVariants{
    IterativeVariant::kWithoutAttributes, IterativeVariant::kRemainingAttributes,
    IterativeVariant::kInferredAttributes};

std::string to_string(IterativeVariant variant);   // "without", "remaining", "inferred"
std::string column_name(IterativeVariant variant);  // table headers

struct IterativeExperiment {
  SnapshotPair validation;
  SnapshotPair test;
  Scope scope = Scope::kHop2Cat1;
  LabelOptions labels;
  GridSpec grid;  // searched once per setting on the validation pair
  double sample_fraction = 0.1;
  int top_k = 4;
  ScorerSpec inference = {ScorerKind::kAdamicAdar};
  bool mutex_postprocessing = true;
  double inferred_weight = 1.0;
  // Rounds of inference; round r scores attributes on the network produced
  // by round r-1. Values above 1 are experimental.
  int iterations = 1;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> descriptor;
};

struct IterativeTrial {
  std::vector<std::uint32_t> users;
  std::vector<AttributeDecision> decisions;  // last round
  std::size_t demoted = 0;
  std::size_t inferred_links = 0;
  std::size_t violations = 0;  // mutex violations of the augmented network
  std::array<double, 3> auc{};
};

struct IterativeOutcome {
  // Metrics "auc_without", "auc_remaining", "auc_inferred".
  MetricsReport report;
  std::array<GridResult, 3> selection;
  std::vector<IterativeTrial> trials;
};

IterativeOutcome run_iterative_experiment(const IterativeExperiment& experiment, const ScorerSpec& scorer);

// Inferred network for one trial: removes attributes of `users` from
// `network`, then runs the configured rounds of top-K inference.
struct InferenceResult {
  AttributeRemoval removal;
  SocialAttributeNetwork augmented;
  std::vector<AttributeDecision> decisions;
  std::size_t demoted = 0;
  std::size_t inferred_links = 0;
};

InferenceResult infer_attributes(const SocialAttributeNetwork& network,
                                 const std::vector<std::uint32_t>& users, const IterativeExperiment& config);

}  // namespace san
