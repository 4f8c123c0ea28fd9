#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "san/candidates.hpp"
#include "san/ingest.hpp"
#include "san/network.hpp"
#include "san/scorers.hpp"

namespace san {

// ---- metrics ---------------------------------------------------------------

// Probability that a positive outscores a negative, ties counting half.
// Computed from midranks in O(n log n); throws DomainError on an empty class.
double auc(const std::vector<double>& positive, const std::vector<double>& negative);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

// One point per distinct threshold, from (0, 0) to (1, 1).
std::vector<RocPoint> roc_curve(const std::vector<double>& positive, const std::vector<double>& negative);

// Scores of one user's candidates and whether each is a true positive.
struct UserRanking {
  std::vector<double> scores;
  std::vector<bool> relevant;
};

// Expected number of relevant items in the top k when ties are ordered
// uniformly at random. Users with fewer than k candidates contribute all of
// theirs.
double expected_hits_at_k(const UserRanking& user, int k);

// Unnormalized Pre@K: sum of expected hits over users divided by the number
// of users. Throws DomainError for k < 1.
double precision_at_k(const std::vector<UserRanking>& users, int k);

// ---- mutex post-processing -------------------------------------------------

struct AttributeDecision {
  std::uint32_t user = 0;
  std::uint32_t attribute = 0;
  double score = 0.0;
  bool positive = false;  // putative positive
  bool demoted = false;   // positive turned negative by the mutex rule
};

// Marks each user's k best-scored candidates (ties broken by attribute id)
// as putative positives. Entries must be (user, attribute) pairs.
std::vector<AttributeDecision> top_k_decisions(const ScoreTable& table, int k);

// Walks each user's putative positives from best to worst and demotes any
// that is mutex with one already kept. Returns the number demoted. Running it
// again on its own output demotes nothing.
std::size_t mutex_postprocess(std::vector<AttributeDecision>& decisions,
                              const SocialAttributeNetwork& network);

// Scores for ranking metrics: demoted links move below every other score of
// the table while keeping their relative order.
std::vector<double> adjusted_scores(const std::vector<AttributeDecision>& decisions);

// `base` plus every putative positive that survived as a positive link of
// the given weight.
SocialAttributeNetwork with_inferred_attributes(const SocialAttributeNetwork& base,
                                                const std::vector<AttributeDecision>& decisions,
                                                double weight = 1.0);

// ---- grid search -----------------------------------------------------------

using GridPoint = std::map<std::string, double>;

// Named hyperparameter lists. Values are kept in a canonical order (rank
// ascending, alpha and lambda descending, anything else ascending) so the
// first point of the enumeration wins ties.
class GridSpec {
 public:
  GridSpec() = default;

  void set(const std::string& name, std::vector<double> values);
  bool empty() const { return values_.empty(); }
  const std::map<std::string, std::vector<double>>& values() const { return values_; }
  std::vector<GridPoint> points() const;
  std::string to_string() const;

 private:
  std::map<std::string, std::vector<double>> values_;
};

// "rank=5,10,20;alpha=0.5,0.7". Throws ParseError on malformed text.
GridSpec parse_grid(const std::string& text);

struct GridResult {
  GridPoint best;
  double best_value = 0.0;
  std::vector<std::pair<GridPoint, double>> evaluated;
};

// Evaluates every point and returns the first strict maximum.
GridResult grid_search(const GridSpec& grid, const std::function<double(const GridPoint&)>& metric);

// Copies grid values named "rank" and "alpha" into a scorer spec.
ScorerSpec apply_grid_point(ScorerSpec spec, const GridPoint& point);

// The part of a grid that affects a scorer (rank for the LRA family, alpha
// for RWwR, nothing otherwise).
GridSpec grid_for(const ScorerSpec& spec, const GridSpec& grid);

// ---- reports ---------------------------------------------------------------

struct MetricSummary {
  std::string name;
  std::vector<double> values;  // one per trial
  double mean = 0.0;
  std::optional<double> stddev;  // sample std; present iff more than one trial
};

MetricSummary summarize(const std::string& name, const std::vector<double>& values);

struct MetricsReport {
  std::map<std::string, std::string> descriptor;
  std::size_t trials = 0;
  std::vector<MetricSummary> metrics;

  const MetricSummary& metric(const std::string& name) const;
  std::string to_json() const;
  static MetricsReport from_json(const std::string& text);
};

// Trial seeds derived from a base seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// ---- result tables ---------------------------------------------------------

struct TableCell {
  double mean = 0.0;
  std::optional<double> stddev;
};

struct TableRow {
  std::string label;
  std::vector<std::optional<TableCell>> cells;
};

struct ResultTable {
  std::vector<std::string> columns;  // excluding the leading label column
  std::vector<TableRow> rows;
};

TableCell cell_of(const MetricSummary& summary);

// CSV with a header row; cells read "0.6730(0.0021)", or "0.6730" without a
// std, or empty.
std::string format_table(const ResultTable& table, const std::string& corner = "Algorithm");
ResultTable parse_table(const std::string& csv);

// ---- experiments -----------------------------------------------------------

// Scores candidate pairs given the training network of a pair, the
// hyperparameters picked by grid search, and a seed.
using LinkScorer = std::function<std::vector<double>(
    const SocialAttributeNetwork& train, const CandidateSet& candidates, const GridPoint& hyper,
    std::uint64_t seed)>;

// An unsupervised scorer, optionally on project_social of the network.
LinkScorer unsupervised_link_scorer(const ScorerSpec& spec, bool social_only);

// How snapshots of a pair are read: the new-link direction compares
// backfilled edge sets; the missing-link direction compares the observed
// train edges against the backfilled earlier snapshot.
struct SnapshotPair {
  Snapshot train;
  Snapshot test;
};
SnapshotPair load_pair(const SnapshotStore& store, const std::string& train, const std::string& test);

struct LinkExperiment {
  SnapshotPair validation;
  SnapshotPair test;
  Scope scope = Scope::kHop2Cat1;
  LabelOptions labels;
  GridSpec grid;  // empty: no search
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> descriptor;
};

struct LinkOutcome {
  MetricsReport report;
  GridResult selection;
  ScoreTable last_scores;  // test scores of the final trial
  CandidateSet last_labels;
};

// Grid search on the validation pair, then AUC on the test pair per trial.
// Labels with sampled negatives are redrawn per trial.
LinkOutcome run_link_experiment(const LinkExperiment& experiment, const LinkScorer& scorer);

// Scores attribute candidates for held-out users on the network that lacks
// their attribute links.
using AttributeScorer = std::function<std::vector<double>(
    const AttributeRemoval& removal, const std::vector<CandidatePair>& candidates,
    std::uint64_t seed)>;

AttributeScorer unsupervised_attribute_scorer(const ScorerSpec& spec);

struct AttributeExperiment {
  SocialAttributeNetwork network;
  double sample_fraction = 0.1;
  std::vector<int> ks{2, 3, 4};
  bool mutex_postprocessing = true;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> descriptor;
};

struct AttributeTrial {
  std::vector<std::uint32_t> users;
  std::vector<AttributeDecision> decisions;
  std::size_t demoted = 0;
  std::size_t violations = 0;  // mutex violations after post-processing
};

struct AttributeOutcome {
  MetricsReport report;  // "auc", "pre@K" for each K
  std::vector<AttributeTrial> trials;
};

// Per trial: sample users, remove their attribute links, score every
// attribute for them, apply mutex post-processing to the top max(ks), then
// AUC over removed positives vs their negatives and Pre@K per K.
AttributeOutcome run_attribute_experiment(const AttributeExperiment& experiment,
                                          const AttributeScorer& scorer);

// Every attribute for each user, as (user, attribute) pairs.
std::vector<CandidatePair> attribute_candidates(const SocialAttributeNetwork& network,
                                                const std::vector<std::uint32_t>& users);

}  // namespace san
