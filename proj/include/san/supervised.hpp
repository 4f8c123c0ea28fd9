#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "san/candidates.hpp"
#include "san/evaluation.hpp"
#include "san/network.hpp"

namespace san {

enum class FeatureVariant { kSlp1, kSlp2, kSlpSan3, kSlpSan6, kSai };

std::string to_string(FeatureVariant variant);
FeatureVariant parse_variant(const std::string& text);  // slp1, slp2, slpsan3, slpsan6, sai
std::string display_name(FeatureVariant variant);        // SLP-I, ..., SAI-SAN

// 6, 7, 6, 12 and 9 columns respectively.
std::vector<std::string> feature_names(FeatureVariant variant);

// Hyperparameters of the global scorers used as features.
struct GlobalHyper {
  int lra_rank = 10;
  int cn_lra_rank = 10;
  int aa_lra_rank = 10;
  double alpha = 0.7;
  std::uint64_t seed = 0;
};

struct LinkFeatureConfig {
  GlobalHyper social;  // for features on project_social
  GlobalHyper san;     // for features on the full network
};

struct AttributeFeatureConfig {
  int rank1 = 100;
  int rank2 = 1000;
  double alpha = 0.7;
  std::uint64_t seed = 0;
};

struct FeatureMatrix {
  FeatureVariant variant = FeatureVariant::kSlp1;
  std::vector<std::string> names;
  Eigen::MatrixXd values;  // one row per pair
  std::vector<CandidatePair> pairs;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// Rank parameters are clamped to the matrix dimensions of `network`.
FeatureMatrix extract_link_features(const SocialAttributeNetwork& network,
                                    const std::vector<CandidatePair>& pairs, FeatureVariant variant,
                                    const LinkFeatureConfig& config);
FeatureMatrix extract_attribute_features(const SocialAttributeNetwork& network,
                                         const std::vector<CandidatePair>& pairs,
                                         const AttributeFeatureConfig& config);

// Header of feature names, then "u,v,label,<features>" rows.
void write_feature_csv(std::ostream& out, const FeatureMatrix& features,
                       const SocialAttributeNetwork& network);

struct Downsampled {
  std::vector<std::size_t> rows;  // ascending
  bool short_of_negatives = false;
};

// All positives plus an equal number of negatives drawn without replacement.
// With fewer negatives than positives every negative is kept and the flag is
// raised. Unlabeled rows are ignored. Throws DomainError with no positives.
Downsampled downsample(const std::vector<Label>& labels, std::uint64_t seed);

// Column z-scores with population statistics; constant columns get scale 1.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

struct TrainOptions {
  double lambda = 1e-2;
  int max_epochs = 20000;
  double tol = 1e-8;  // max-norm of the gradient
  std::uint64_t seed = 0;
};

// L2-regularized logistic regression on standardized features, fitted by
// full-batch gradient descent with step 1/L. The bias is not regularized.
class LinearModel {
 public:
  LinearModel() = default;

  static LinearModel train(const Eigen::MatrixXd& x, const std::vector<bool>& positive,
                           const TrainOptions& options);

  double decision(const Eigen::VectorXd& raw_features) const;
  Eigen::VectorXd decisions(const Eigen::MatrixXd& raw_features) const;

  const Eigen::VectorXd& weights() const { return weights_; }
  double bias() const { return bias_; }
  const Standardizer& standardizer() const { return standardizer_; }
  const TrainOptions& options() const { return options_; }
  int epochs() const { return epochs_; }

  std::string to_json() const;
  static LinearModel from_json(const std::string& text);

 private:
  Eigen::VectorXd weights_;
  double bias_ = 0.0;
  Standardizer standardizer_;
  TrainOptions options_;
  int epochs_ = 0;
};

struct SupervisedOptions {
  std::vector<double> lambdas{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  int folds = 5;  // stratified cross-validation folds
  std::uint64_t seed = 0;
};

struct ModelSelection {
  LinearModel model;
  double lambda = 0.0;
  std::vector<std::pair<double, double>> validation_auc;  // (lambda, mean fold AUC)
  bool short_of_negatives = false;
};

// Picks lambda by mean AUC over seeded stratified folds (larger lambda wins
// ties; the largest lambda when a class has fewer than two rows), then
// refits on every row.
ModelSelection select_and_train(const Eigen::MatrixXd& x, const std::vector<bool>& positive,
                                const SupervisedOptions& options);

struct SlpResult {
  CandidateSet test;
  std::vector<double> scores;
  ModelSelection selection;
  FeatureMatrix train_features;
  FeatureMatrix test_features;
};

// Labels from the training pair, features from its training snapshot,
// downsampling and fitting, then decision values for every test candidate.
SlpResult slp_pipeline(const SnapshotPair& training, const SocialAttributeNetwork& test_network,
                       const CandidateSet& test_candidates, Scope scope, const LabelOptions& labels,
                       FeatureVariant variant, const LinkFeatureConfig& config,
                       const SupervisedOptions& options);

LinkScorer slp_link_scorer(SnapshotPair training, Scope scope, LabelOptions labels,
                           FeatureVariant variant, LinkFeatureConfig config, SupervisedOptions options);

struct SaiResult {
  std::vector<double> scores;
  ModelSelection selection;
  FeatureMatrix train_features;
  FeatureMatrix test_features;
};

// Positive and negative attribute links of the users that kept their
// attributes are the training examples.
SaiResult sai_pipeline(const AttributeRemoval& removal, const std::vector<CandidatePair>& candidates,
                       const AttributeFeatureConfig& config, const SupervisedOptions& options);

AttributeScorer sai_attribute_scorer(AttributeFeatureConfig config, SupervisedOptions options);

}  // namespace san
