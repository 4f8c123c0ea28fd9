#include "san/pipeline.hpp"

#include <sstream>

#include "san/errors.hpp"

namespace san {

std::string to_string(IterativeVariant variant) {
  switch (variant) {
    case IterativeVariant::kWithoutAttributes: return "without";
    case IterativeVariant::kRemainingAttributes: return "remaining";
    case IterativeVariant::kInferredAttributes: return "inferred";
  }
  return "";
}

std::string column_name(IterativeVariant variant) {
  switch (variant) {
    case IterativeVariant::kWithoutAttributes: return "w/o Attri";
    case IterativeVariant::kRemainingAttributes: return "With only remaining Attri";
    case IterativeVariant::kInferredAttributes: return "With Inferred Attri";
  }
  return "";
}

InferenceResult infer_attributes(const SocialAttributeNetwork& network,
                                 const std::vector<std::uint32_t>& users, const IterativeExperiment& config) {
  if (config.top_k < 0) throw DomainError("top-K must be non-negative");
  if (config.iterations < 1) throw DomainError("iterations must be at least 1");
  InferenceResult result;
  result.removal = remove_user_attributes(network, users);
  result.augmented = result.removal.network;
  if (config.top_k == 0 || users.empty()) return result;

  const auto candidates = attribute_candidates(result.removal.network, users);
  ScorerSpec spec = config.inference;
  if (spec.uses_rank()) {
    spec.rank = std::min(spec.rank, max_rank(result.removal.network, spec.kind, Task::kAttributeLink));
  }
  for (int round = 0; round < config.iterations; ++round) {
    const auto table = score_pairs(result.augmented, Task::kAttributeLink, candidates, spec);
    result.decisions = top_k_decisions(table, config.top_k);
    result.demoted = config.mutex_postprocessing
                         ? mutex_postprocess(result.decisions, result.removal.network)
                         : 0;
    result.augmented =
        with_inferred_attributes(result.removal.network, result.decisions, config.inferred_weight);
  }
  result.inferred_links =
      result.augmented.num_attribute_links(LinkSign::kPositive) -
      result.removal.network.num_attribute_links(LinkSign::kPositive);
  return result;
}

namespace {

double labeled_auc(const CandidateSet& set, const std::vector<double>& scores) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    if (set.pairs[i].label == Label::kPositive) pos.push_back(scores[i]);
    if (set.pairs[i].label == Label::kNegative) neg.push_back(scores[i]);
  }
  return auc(pos, neg);
}

std::string format_value(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

IterativeOutcome run_iterative_experiment(const IterativeExperiment& ex, const ScorerSpec& spec) {
  if (ex.trials < 1) throw DomainError("trials must be at least 1");
  if (!(ex.sample_fraction >= 0.0 && ex.sample_fraction <= 1.0)) {
    throw DomainError("sample fraction must lie in [0, 1]");
  }
  IterativeOutcome outcome;
  const LinkScorer social = unsupervised_link_scorer(spec, true);
  const LinkScorer full = unsupervised_link_scorer(spec, false);
  const GridSpec grid = grid_for(spec, ex.grid);

  // Settings (ii) and (iii) share the hyperparameters picked on the full
  // validation network.
  if (!grid.empty()) {
    LabelOptions opts = ex.labels;
    opts.seed = ex.seed;
    const auto validation =
        extract_labels(ex.validation.train, ex.validation.test, Task::kSocialLink, ex.scope, opts);
    outcome.selection[0] = grid_search(grid, [&](const GridPoint& p) {
      return labeled_auc(validation, social(ex.validation.train.network, validation, p, ex.seed));
    });
    outcome.selection[1] = grid_search(grid, [&](const GridPoint& p) {
      return labeled_auc(validation, full(ex.validation.train.network, validation, p, ex.seed));
    });
    outcome.selection[2] = outcome.selection[1];
  }

  const bool fixed_labels =
      ex.scope == Scope::kHop2Cat1 || ex.labels.negatives == NegativeMode::kExhaustive;
  const auto& train = ex.test.train.network;
  CandidateSet labels;
  std::array<std::vector<double>, 3> values;
  for (std::size_t t = 0; t < ex.trials; ++t) {
    const std::uint64_t seed = trial_seed(ex.seed, t);
    if (t == 0 || !fixed_labels) {
      LabelOptions opts = ex.labels;
      opts.seed = seed;
      labels = extract_labels(ex.test.train, ex.test.test, Task::kSocialLink, ex.scope, opts);
    }
    IterativeTrial trial;
    trial.users = sample_users(train.num_social(), ex.sample_fraction, seed);
    auto inferred = infer_attributes(train, trial.users, ex);
    trial.decisions = std::move(inferred.decisions);
    trial.demoted = inferred.demoted;
    trial.inferred_links = inferred.inferred_links;
    for (const auto& v : validate(inferred.augmented)) {
      trial.violations += v.kind == Violation::Kind::kMutexViolation;
    }

    trial.auc[0] = labeled_auc(labels, social(train, labels, outcome.selection[0].best, seed));
    trial.auc[1] = labeled_auc(labels, full(inferred.removal.network, labels, outcome.selection[1].best, seed));
    trial.auc[2] = labeled_auc(labels, full(inferred.augmented, labels, outcome.selection[2].best, seed));
    for (int v = 0; v < 3; ++v) values[v].push_back(trial.auc[v]);
    outcome.trials.push_back(std::move(trial));
  }

  auto& report = outcome.report;
  report.descriptor = ex.descriptor;
  report.descriptor["scorer"] = spec.describe();
  report.descriptor["train"] = ex.test.train.label;
  report.descriptor["test"] = ex.test.test.label;
  report.descriptor["validation_train"] = ex.validation.train.label;
  report.descriptor["validation_test"] = ex.validation.test.label;
  report.descriptor["scope"] = to_string(ex.scope);
  report.descriptor["positives"] = std::to_string(labels.count(Label::kPositive));
  report.descriptor["negative_count"] = std::to_string(labels.count(Label::kNegative));
  report.descriptor["sample_fraction"] = format_value(ex.sample_fraction);
  report.descriptor["top_k"] = std::to_string(ex.top_k);
  report.descriptor["inference"] = ex.inference.describe();
  report.descriptor["inferred_weight"] = format_value(ex.inferred_weight);
  report.descriptor["iterations"] = std::to_string(ex.iterations);
  report.descriptor["mutex_postprocessing"] = ex.mutex_postprocessing ? "true" : "false";
  report.descriptor["seed"] = std::to_string(ex.seed);
  for (int v = 0; v < 3; ++v) {
    for (const auto& [name, value] : outcome.selection[v].best) {
      report.descriptor["selected." + to_string(kIterativeVariants[v]) + "." + name] = format_value(value);
    }
  }
  report.trials = ex.trials;
  for (int v = 0; v < 3; ++v) {
    report.metrics.push_back(summarize("auc_" + to_string(kIterativeVariants[v]), values[v]));
  }
  return outcome;
}

}  // namespace san
