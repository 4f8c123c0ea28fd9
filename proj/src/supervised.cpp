#include "san/supervised.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "san/errors.hpp"
#include "san/scorers.hpp"

namespace san {

namespace {

struct VariantInfo {
  FeatureVariant variant;
  const char* id;
  const char* display;
};

constexpr VariantInfo kVariants[] = {
    {FeatureVariant::kSlp1, "slp1", "SLP-I"},
    {FeatureVariant::kSlp2, "slp2", "SLP-II"},
    {FeatureVariant::kSlpSan3, "slpsan3", "SLP-SAN-III"},
    {FeatureVariant::kSlpSan6, "slpsan6", "SLP-SAN-VI"},
    {FeatureVariant::kSai, "sai", "SAI-SAN"},
};

const VariantInfo& info(FeatureVariant v) {
  for (const auto& i : kVariants) {
    if (i.variant == v) return i;
  }
  throw DomainError("unknown feature variant");
}

const std::vector<std::string> kLinkBase{"cn", "aa", "lra", "cn_lra", "aa_lra", "rwwr"};

std::vector<std::string> suffixed(const std::string& suffix) {
  std::vector<std::string> out;
  for (const auto& n : kLinkBase) out.push_back(n + suffix);
  return out;
}

}  // namespace

std::string to_string(FeatureVariant variant) { return info(variant).id; }
std::string display_name(FeatureVariant variant) { return info(variant).display; }

FeatureVariant parse_variant(const std::string& text) {
  for (const auto& i : kVariants) {
    if (text == i.id) return i.variant;
  }
  throw DomainError("unknown variant '" + text + "'");
}

std::vector<std::string> feature_names(FeatureVariant variant) {
  switch (variant) {
    case FeatureVariant::kSlp1: return suffixed("_social");
    case FeatureVariant::kSlp2: {
      auto names = suffixed("_social");
      names.push_back("common_attributes");
      return names;
    }
    case FeatureVariant::kSlpSan3: return suffixed("_san");
    case FeatureVariant::kSlpSan6: {
      auto names = suffixed("_social");
      for (const auto& n : suffixed("_san")) names.push_back(n);
      return names;
    }
    case FeatureVariant::kSai:
      return {"cn",        "aa",        "rwwr",      "lra_r1",   "lra_r2",
              "cn_lra_r1", "cn_lra_r2", "aa_lra_r1", "aa_lra_r2"};
  }
  return {};
}

// ---- features --------------------------------------------------------------

namespace {

std::vector<double> column(const SocialAttributeNetwork& net, Task task,
                           const std::vector<CandidatePair>& pairs, ScorerSpec spec) {
  if (spec.uses_rank()) spec.rank = std::max(1, std::min(spec.rank, max_rank(net, spec.kind, task)));
  auto table = score_pairs(net, task, pairs, spec);
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& e : table.entries) out.push_back(e.score);
  return out;
}

ScorerSpec spec_of(ScorerKind kind, int rank, double alpha, std::uint64_t seed) {
  ScorerSpec s;
  s.kind = kind;
  s.rank = rank;
  s.alpha = alpha;
  s.seed = seed;
  return s;
}

// The six link scorers on one network, as columns.
std::vector<std::vector<double>> link_block(const SocialAttributeNetwork& net,
                                            const std::vector<CandidatePair>& pairs,
                                            const GlobalHyper& h) {
  const Task task = Task::kSocialLink;
  return {
      column(net, task, pairs, spec_of(ScorerKind::kCommonNeighbors, 0, h.alpha, h.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kAdamicAdar, 0, h.alpha, h.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kLowRank, h.lra_rank, h.alpha, h.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kCnLowRank, h.cn_lra_rank, h.alpha, h.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kAaLowRank, h.aa_lra_rank, h.alpha, h.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kRwwr, 0, h.alpha, h.seed)),
  };
}

FeatureMatrix assemble(FeatureVariant variant, const std::vector<CandidatePair>& pairs,
                       const std::vector<std::vector<double>>& columns) {
  FeatureMatrix f;
  f.variant = variant;
  f.names = feature_names(variant);
  f.pairs = pairs;
  if (columns.size() != f.names.size()) throw DomainError("feature count mismatch");
  f.values.resize(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 0; r < pairs.size(); ++r) f.values(r, c) = columns[c][r];
  }
  return f;
}

}  // namespace

FeatureMatrix extract_link_features(const SocialAttributeNetwork& net,
                                    const std::vector<CandidatePair>& pairs, FeatureVariant variant,
                                    const LinkFeatureConfig& config) {
  if (variant == FeatureVariant::kSai) throw DomainError("SAI features describe attribute links");
  for (const auto& p : pairs) {
    if (!p.u.is_social() || !p.v.is_social()) throw DomainError("link features need social pairs");
  }
  std::vector<std::vector<double>> columns;
  if (variant != FeatureVariant::kSlpSan3) {
    columns = link_block(project_social(net), pairs, config.social);
  }
  if (variant == FeatureVariant::kSlp2) {
    std::vector<double> common;
    common.reserve(pairs.size());
    for (const auto& p : pairs) {
      auto a = net.attributes_of(p.u.index, LinkSign::kPositive);
      auto b = net.attributes_of(p.v.index, LinkSign::kPositive);
      std::vector<std::uint32_t> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
      common.push_back(static_cast<double>(both.size()));
    }
    columns.push_back(std::move(common));
  }
  if (variant == FeatureVariant::kSlpSan3 || variant == FeatureVariant::kSlpSan6) {
    for (auto& c : link_block(net, pairs, config.san)) columns.push_back(std::move(c));
  }
  return assemble(variant, pairs, columns);
}

FeatureMatrix extract_attribute_features(const SocialAttributeNetwork& net,
                                         const std::vector<CandidatePair>& pairs,
                                         const AttributeFeatureConfig& config) {
  const Task task = Task::kAttributeLink;
  auto ranked = [&](ScorerKind kind) {
    const int cap = max_rank(net, kind, task);
    const int r1 = std::max(1, std::min(config.rank1, cap));
    const int r2 = std::max(1, std::min(config.rank2, cap));
    auto first = column(net, task, pairs, spec_of(kind, r1, config.alpha, config.seed));
    auto second = r2 == r1 ? first : column(net, task, pairs, spec_of(kind, r2, config.alpha, config.seed));
    return std::make_pair(std::move(first), std::move(second));
  };
  auto [lra1, lra2] = ranked(ScorerKind::kLowRank);
  auto [cn1, cn2] = ranked(ScorerKind::kCnLowRank);
  auto [aa1, aa2] = ranked(ScorerKind::kAaLowRank);
  std::vector<std::vector<double>> columns{
      column(net, task, pairs, spec_of(ScorerKind::kCommonNeighbors, 0, config.alpha, config.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kAdamicAdar, 0, config.alpha, config.seed)),
      column(net, task, pairs, spec_of(ScorerKind::kRwwr, 0, config.alpha, config.seed)),
      std::move(lra1), std::move(lra2), std::move(cn1), std::move(cn2), std::move(aa1), std::move(aa2)};
  return assemble(FeatureVariant::kSai, pairs, columns);
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& f, const SocialAttributeNetwork& net) {
  out << "u,v,label";
  for (const auto& n : f.names) out << ',' << n;
  out << '\n';
  std::ostringstream line;
  line.precision(17);
  for (Eigen::Index r = 0; r < f.rows(); ++r) {
    const auto& p = f.pairs[r];
    line.str("");
    line << net.node_name(p.u) << ',' << net.node_name(p.v) << ','
         << (p.label == Label::kPositive ? "1" : p.label == Label::kNegative ? "0" : "");
    for (Eigen::Index c = 0; c < f.cols(); ++c) line << ',' << f.values(r, c);
    out << line.str() << '\n';
  }
}

// ---- sampling and model ----------------------------------------------------

Downsampled downsample(const std::vector<Label>& labels, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::kPositive) pos.push_back(i);
    if (labels[i] == Label::kNegative) neg.push_back(i);
  }
  if (pos.empty()) throw DomainError("downsampling needs at least one positive example");
  Downsampled out;
  if (neg.size() < pos.size()) out.short_of_negatives = true;
  const std::size_t keep = std::min(neg.size(), pos.size());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, neg.size() - 1);
    std::swap(neg[i], neg[pick(rng)]);
  }
  neg.resize(keep);
  out.rows = pos;
  out.rows.insert(out.rows.end(), neg.begin(), neg.end());
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  Standardizer s;
  const double n = static_cast<double>(std::max<Eigen::Index>(x.rows(), 1));
  s.mean = x.colwise().sum().transpose() / n;
  s.scale.resize(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double var = (x.col(c).array() - s.mean(c)).square().sum() / n;
    const double sd = std::sqrt(var);
    s.scale(c) = sd > 1e-12 * std::max(1.0, std::abs(s.mean(c))) ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd z = x.rowwise() - mean.transpose();
  return z.array().rowwise() / scale.transpose().array();
}

namespace {

Eigen::VectorXd sigmoid(const Eigen::VectorXd& z) {
  return z.unaryExpr([](double v) {
    return v >= 0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  });
}

}  // namespace

LinearModel LinearModel::train(const Eigen::MatrixXd& x, const std::vector<bool>& positive,
                               const TrainOptions& options) {
  if (static_cast<std::size_t>(x.rows()) != positive.size()) throw DomainError("label count mismatch");
  const auto n_pos = std::count(positive.begin(), positive.end(), true);
  if (n_pos == 0 || n_pos == static_cast<long>(positive.size())) {
    throw DomainError("training data holds a single class");
  }
  if (!x.allFinite()) throw DomainError("non-finite feature value");
  if (!(options.lambda >= 0.0)) throw DomainError("lambda must be non-negative");

  LinearModel model;
  model.options_ = options;
  model.standardizer_ = Standardizer::fit(x);
  const Eigen::MatrixXd z = model.standardizer_.apply(x);
  const Eigen::Index n = z.rows(), d = z.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  Eigen::MatrixXd a(n, d + 1);
  a << z, Eigen::VectorXd::Ones(n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = positive[i] ? 1.0 : 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a * inv_n, Eigen::EigenvaluesOnly);
  const double lipschitz = 0.25 * eig.eigenvalues().maxCoeff() + options.lambda;
  const double step = 1.0 / lipschitz;

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  int epoch = 0;
  for (; epoch < options.max_epochs; ++epoch) {
    Eigen::VectorXd grad = a.transpose() * (sigmoid(a * theta) - y) * inv_n;
    grad.head(d) += options.lambda * theta.head(d);
    if (grad.cwiseAbs().maxCoeff() < options.tol) break;
    theta -= step * grad;
  }
  model.weights_ = theta.head(d);
  model.bias_ = theta(d);
  model.epochs_ = epoch;
  return model;
}

double LinearModel::decision(const Eigen::VectorXd& raw) const {
  const Eigen::VectorXd z = (raw - standardizer_.mean).cwiseQuotient(standardizer_.scale);
  return z.dot(weights_) + bias_;
}

Eigen::VectorXd LinearModel::decisions(const Eigen::MatrixXd& raw) const {
  if (raw.rows() == 0) return Eigen::VectorXd();
  return (standardizer_.apply(raw) * weights_).array() + bias_;
}

std::string LinearModel::to_json() const {
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json doc = {
      {"loss", "logistic-l2"},
      {"weights", vec(weights_)},
      {"bias", bias_},
      {"mean", vec(standardizer_.mean)},
      {"scale", vec(standardizer_.scale)},
      {"lambda", options_.lambda},
      {"max_epochs", options_.max_epochs},
      {"tol", options_.tol},
      {"seed", options_.seed},
      {"epochs", epochs_},
  };
  return doc.dump(2);
}

LinearModel LinearModel::from_json(const std::string& text) {
  LinearModel m;
  try {
    auto doc = nlohmann::json::parse(text);
    auto vec = [&](const char* key) {
      auto v = doc.at(key).get<std::vector<double>>();
      return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    m.weights_ = vec("weights");
    m.bias_ = doc.at("bias").get<double>();
    m.standardizer_.mean = vec("mean");
    m.standardizer_.scale = vec("scale");
    m.options_.lambda = doc.at("lambda").get<double>();
    m.options_.max_epochs = doc.at("max_epochs").get<int>();
    m.options_.tol = doc.at("tol").get<double>();
    m.options_.seed = doc.at("seed").get<std::uint64_t>();
    m.epochs_ = doc.at("epochs").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model", 0, e.what());
  }
  if (m.weights_.size() != m.standardizer_.mean.size() || m.weights_.size() != m.standardizer_.scale.size()) {
    throw ParseError("model", 0, "weight and standardization sizes differ");
  }
  return m;
}

ModelSelection select_and_train(const Eigen::MatrixXd& x, const std::vector<bool>& positive,
                                const SupervisedOptions& options) {
  if (options.lambdas.empty()) throw DomainError("empty lambda grid");
  ModelSelection sel;
  std::vector<double> lambdas = options.lambdas;
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  sel.lambda = lambdas.front();

  // Stratified folds: row i of a shuffled class goes to fold i mod k.
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < positive.size(); ++i) (positive[i] ? pos : neg).push_back(i);
  std::mt19937_64 rng(options.seed);
  auto shuffle = [&](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(v[i - 1], v[pick(rng)]);
    }
  };
  shuffle(pos);
  shuffle(neg);
  const std::size_t folds = std::min({static_cast<std::size_t>(std::max(options.folds, 0)), pos.size(), neg.size()});

  if (folds >= 2 && lambdas.size() > 1) {
    std::vector<int> fold_of(positive.size());
    for (std::size_t i = 0; i < pos.size(); ++i) fold_of[pos[i]] = static_cast<int>(i % folds);
    for (std::size_t i = 0; i < neg.size(); ++i) fold_of[neg[i]] = static_cast<int>(i % folds);
    auto take = [&](const std::vector<std::size_t>& rows) {
      Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
      for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
      return out;
    };
    struct Split {
      Eigen::MatrixXd x_fit, x_hold;
      std::vector<bool> y_fit, y_hold;
    };
    std::vector<Split> splits(folds);
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<std::size_t> fit_rows, hold_rows;
      for (std::size_t i = 0; i < positive.size(); ++i) {
        (fold_of[i] == static_cast<int>(f) ? hold_rows : fit_rows).push_back(i);
      }
      for (auto r : fit_rows) splits[f].y_fit.push_back(positive[r]);
      for (auto r : hold_rows) splits[f].y_hold.push_back(positive[r]);
      splits[f].x_fit = take(fit_rows);
      splits[f].x_hold = take(hold_rows);
    }

    double best = -1.0;
    for (double lambda : lambdas) {
      TrainOptions t;
      t.lambda = lambda;
      t.seed = options.seed;
      double value = 0.0;
      for (const auto& s : splits) {
        const auto scores = LinearModel::train(s.x_fit, s.y_fit, t).decisions(s.x_hold);
        std::vector<double> sp, sn;
        for (std::size_t i = 0; i < s.y_hold.size(); ++i) (s.y_hold[i] ? sp : sn).push_back(scores(i));
        value += auc(sp, sn) / static_cast<double>(folds);
      }
      sel.validation_auc.emplace_back(lambda, value);
      if (value > best) {
        best = value;
        sel.lambda = lambda;
      }
    }
  }
  TrainOptions t;
  t.lambda = sel.lambda;
  t.seed = options.seed;
  sel.model = LinearModel::train(x, positive, t);
  return sel;
}

// ---- pipelines -------------------------------------------------------------

SlpResult slp_pipeline(const SnapshotPair& training, const SocialAttributeNetwork& test_network,
                       const CandidateSet& test_candidates, Scope scope, const LabelOptions& labels,
                       FeatureVariant variant, const LinkFeatureConfig& config,
                       const SupervisedOptions& options) {
  SlpResult result;
  const auto train_set = extract_labels(training.train, training.test, Task::kSocialLink, scope, labels);
  std::vector<Label> train_labels;
  for (const auto& p : train_set.pairs) train_labels.push_back(p.label);
  const auto kept = downsample(train_labels, options.seed);
  std::vector<CandidatePair> pairs;
  std::vector<bool> positive;
  for (auto r : kept.rows) {
    pairs.push_back(train_set.pairs[r]);
    positive.push_back(train_set.pairs[r].label == Label::kPositive);
  }
  result.train_features = extract_link_features(training.train.network, pairs, variant, config);
  result.selection = select_and_train(result.train_features.values, positive, options);
  result.selection.short_of_negatives = kept.short_of_negatives;
  result.test = test_candidates;
  result.test_features = extract_link_features(test_network, test_candidates.pairs, variant, config);
  const auto d = result.selection.model.decisions(result.test_features.values);
  result.scores.assign(d.data(), d.data() + d.size());
  return result;
}

LinkScorer slp_link_scorer(SnapshotPair training, Scope scope, LabelOptions labels,
                           FeatureVariant variant, LinkFeatureConfig config, SupervisedOptions options) {
  return [=](const SocialAttributeNetwork& train, const CandidateSet& candidates, const GridPoint&,
             std::uint64_t seed) {
    SupervisedOptions o = options;
    o.seed = seed;
    return slp_pipeline(training, train, candidates, scope, labels, variant, config, o).scores;
  };
}

SaiResult sai_pipeline(const AttributeRemoval& removal, const std::vector<CandidatePair>& candidates,
                       const AttributeFeatureConfig& config, const SupervisedOptions& options) {
  SaiResult result;
  const auto& net = removal.network;
  std::vector<CandidatePair> examples;
  std::vector<Label> labels;
  for (const auto& l : net.attribute_links()) {
    const Label label = l.sign == LinkSign::kPositive ? Label::kPositive : Label::kNegative;
    examples.push_back({NodeRef::social(l.user), NodeRef::attribute(l.attribute), label});
    labels.push_back(label);
  }
  const auto kept = downsample(labels, options.seed);
  std::vector<CandidatePair> pairs;
  std::vector<bool> positive;
  for (auto r : kept.rows) {
    pairs.push_back(examples[r]);
    positive.push_back(examples[r].label == Label::kPositive);
  }
  result.train_features = extract_attribute_features(net, pairs, config);
  result.selection = select_and_train(result.train_features.values, positive, options);
  result.selection.short_of_negatives = kept.short_of_negatives;
  result.test_features = extract_attribute_features(net, candidates, config);
  const auto d = result.selection.model.decisions(result.test_features.values);
  result.scores.assign(d.data(), d.data() + d.size());
  return result;
}

AttributeScorer sai_attribute_scorer(AttributeFeatureConfig config, SupervisedOptions options) {
  return [=](const AttributeRemoval& removal, const std::vector<CandidatePair>& candidates,
             std::uint64_t seed) {
    SupervisedOptions o = options;
    o.seed = seed;
    return sai_pipeline(removal, candidates, config, o).scores;
  };
}

}  // namespace san
