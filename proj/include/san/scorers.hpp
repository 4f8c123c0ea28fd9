#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "san/candidates.hpp"
#include "san/lowrank.hpp"
#include "san/network.hpp"
#include "san/rwwr.hpp"

namespace san {

enum class ScorerKind {
  kCommonNeighbors,
  kAdamicAdar,
  kLowRank,
  kCnLowRank,
  kAaLowRank,
  kRwwr,
  kBaseline,
  kRandom,
};

struct ScorerSpec {
  ScorerKind kind = ScorerKind::kCommonNeighbors;
  int rank = 10;        // LRA family
  double alpha = 0.7;   // RWwR restart probability
  std::uint64_t seed = 0;

  bool is_global() const;
  bool uses_rank() const;
  // Short machine id ("cn", "aa_lra", ...) and table label ("CN-SAN", ...).
  std::string id() const;
  std::string display_name() const;
  // "scorer=aa_lra rank=10" style; only hyperparameters that matter.
  std::string describe() const;
};

ScorerKind parse_scorer_kind(const std::string& id);

struct ScoredPair {
  NodeRef u;
  NodeRef v;
  double score = 0.0;
};

struct ScoreTable {
  Task task = Task::kSocialLink;
  ScorerSpec scorer;
  std::vector<ScoredPair> entries;
};

// Sum of w(t) over t in Gamma+(u) & Gamma+(v).
double cn_san(const SocialAttributeNetwork& network, const NodeRef& u, const NodeRef& v);

// Adamic-Adar. Social pairs weight a common neighbor t by 1/ln|Gamma_s+(t)|;
// user-attribute pairs weight a common social neighbor t by 1/ln|Gamma+(t)|.
// A common neighbor with degree < 2 cannot occur in valid data; its term is
// skipped and counted in `skipped` when provided.
double aa_san(const SocialAttributeNetwork& network, const NodeRef& u, const NodeRef& v,
              std::size_t* skipped = nullptr);

// Marginal share of positive attribute links held by attribute a.
double baseline_attribute(const SocialAttributeNetwork& network, std::uint32_t attribute);

// X = [X_S X_A] over positive links.
SparseMatrix adjacency_matrix(const SocialAttributeNetwork& network);

// Full CN-SAN / AA-SAN score matrix for a task: S_S (N x N, zero diagonal)
// or S_A (N x M). Nonzero only where a common neighbor exists.
SparseMatrix cn_score_matrix(const SocialAttributeNetwork& network, Task task);
SparseMatrix aa_score_matrix(const SocialAttributeNetwork& network, Task task);

// Entry of the reconstruction addressed by a candidate pair. For the
// adjacency source attribute columns sit at offset N.
double lra_score(const LowRankModel& model, const NodeRef& u, const NodeRef& v,
                 std::uint32_t num_social);

// (P_uv + P_vu) / 2 for social pairs, P_ua for user-attribute pairs.
double rwwr_score(const SocialAttributeNetwork& network, const NodeRef& u, const NodeRef& v,
                  const RwwrParams& params, Task task);

int max_rank(const SocialAttributeNetwork& network, ScorerKind kind, Task task);

// Scores every candidate. Global scorers fit once (or walk once per distinct
// source) for the whole batch. Output order follows candidates.pairs.
ScoreTable score_candidates(const SocialAttributeNetwork& network, const CandidateSet& candidates,
                            const ScorerSpec& spec);
ScoreTable score_pairs(const SocialAttributeNetwork& network, Task task,
                       const std::vector<CandidatePair>& pairs, const ScorerSpec& spec);

// "# <describe>" line, then "u,v,score" rows using external node names.
void write_score_table(std::ostream& out, const ScoreTable& table,
                       const SocialAttributeNetwork& network);

}  // namespace san
