#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "san/errors.hpp"
#include "san/scorers.hpp"

namespace san {
namespace {

std::vector<CandidatePair> all_social_pairs(std::uint32_t n) {
  std::vector<CandidatePair> out;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) out.push_back({NodeRef::social(u), NodeRef::social(v)});
  }
  return out;
}

std::vector<CandidatePair> all_attribute_pairs(std::uint32_t n, std::uint32_t m) {
  std::vector<CandidatePair> out;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t a = 0; a < m; ++a) out.push_back({NodeRef::social(u), NodeRef::attribute(a)});
  }
  return out;
}

// Smallest rank >= want whose spectral gap is clear, so the truncation is unique.
int gapped_rank(const Eigen::MatrixXd& m, int want) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double top = std::max(s(0), 1e-300);
  for (int r = want; r < s.size(); ++r) {
    if ((s(r - 1) - s(r)) / top > 1e-3) return r;
  }
  return static_cast<int>(s.size());
}

TEST(CnSanTest, SocialAndAttributeCommonNeighbors) {
  NetworkBuilder b(3, 1);
  b.add_social_edge(0, 2).add_social_edge(1, 2);
  b.add_attribute_link(0, 0).add_attribute_link(1, 0);
  auto net = b.build();
  EXPECT_DOUBLE_EQ(cn_san(net, NodeRef::social(0), NodeRef::social(1)), 2.0);
}

TEST(CnSanTest, DisjointNeighborhoods) {
  NetworkBuilder b(4, 2);
  b.add_social_edge(0, 1).add_social_edge(2, 3);
  b.add_attribute_link(0, 0).add_attribute_link(2, 1);
  auto net = b.build();
  EXPECT_EQ(cn_san(net, NodeRef::social(0), NodeRef::social(2)), 0.0);
}

TEST(AaSanTest, SingleCommonNeighborOfDegreeTwo) {
  NetworkBuilder b(3, 0);
  b.add_social_edge(0, 2).add_social_edge(1, 2);
  auto net = b.build();
  EXPECT_NEAR(aa_san(net, NodeRef::social(0), NodeRef::social(1)), 1.4426950408889634, 1e-12);
  EXPECT_EQ(aa_san(net, NodeRef::social(0), NodeRef::social(2)), 0.0);
}

TEST(AaSanTest, AttributeFormUsesTotalDegree) {
  // t = 1 has social neighbors {0, 2} and attributes {0, 1}: total degree 4.
  NetworkBuilder b(3, 2);
  b.add_social_edge(0, 1).add_social_edge(1, 2);
  b.add_attribute_link(1, 0).add_attribute_link(1, 1);
  auto net = b.build();
  EXPECT_NEAR(aa_san(net, NodeRef::social(0), NodeRef::attribute(0)), 1.0 / std::log(4.0), 1e-12);
}

TEST(ScorerOracleTest, CnAaMatchNaive) {
  testing::RandomSanOptions o;
  o.random_node_weights = true;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto d = testing::random_san(seed, o);
    auto net = d.build();
    for (const auto& p : all_social_pairs(d.n)) {
      EXPECT_NEAR(cn_san(net, p.u, p.v), testing::naive_cn(d, p.u, p.v), 1e-12);
      EXPECT_NEAR(aa_san(net, p.u, p.v), testing::naive_aa(d, p.u, p.v), 1e-12);
      EXPECT_EQ(cn_san(net, p.u, p.v), cn_san(net, p.v, p.u));
      EXPECT_EQ(aa_san(net, p.u, p.v), aa_san(net, p.v, p.u));
    }
    for (const auto& p : all_attribute_pairs(d.n, d.m)) {
      EXPECT_NEAR(cn_san(net, p.u, p.v), testing::naive_cn(d, p.u, p.v), 1e-12);
      EXPECT_NEAR(aa_san(net, p.u, p.v), testing::naive_aa(d, p.u, p.v), 1e-12);
    }
  }
}

TEST(ScorerOracleTest, ScoreMatricesMatchDense) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = testing::random_san(seed);
    auto net = d.build();
    for (bool attr : {false, true}) {
      Task task = attr ? Task::kAttributeLink : Task::kSocialLink;
      EXPECT_LE((Eigen::MatrixXd(cn_score_matrix(net, task)) - testing::dense_cn_matrix(d, attr))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
      EXPECT_LE((Eigen::MatrixXd(aa_score_matrix(net, task)) - testing::dense_aa_matrix(d, attr))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
    }
    EXPECT_EQ(Eigen::MatrixXd(adjacency_matrix(net)), testing::dense_adjacency(d));
  }
}

TEST(ScorerOracleTest, LowRankFamilyMatchesDensePipeline) {
  testing::RandomSanOptions o;
  o.max_social = 30;
  o.max_attributes = 15;
  o.edge_density = 0.15;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto d = testing::random_san(seed, o);
    auto net = d.build();
    for (bool attr : {false, true}) {
      const Task task = attr ? Task::kAttributeLink : Task::kSocialLink;
      auto pairs = attr ? all_attribute_pairs(d.n, d.m) : all_social_pairs(d.n);
      struct Case {
        ScorerKind kind;
        Eigen::MatrixXd dense;
      };
      std::vector<Case> cases{{ScorerKind::kLowRank, testing::dense_adjacency(d)},
                              {ScorerKind::kCnLowRank, testing::dense_cn_matrix(d, attr)},
                              {ScorerKind::kAaLowRank, testing::dense_aa_matrix(d, attr)}};
      for (const auto& c : cases) {
        ScorerSpec spec;
        spec.kind = c.kind;
        spec.rank = gapped_rank(c.dense, 4);
        auto want = testing::dense_truncated(c.dense, spec.rank);
        auto table = score_pairs(net, task, pairs, spec);
        const double scale = std::max(want.cwiseAbs().maxCoeff(), 1e-12);
        for (const auto& e : table.entries) {
          const auto col = e.v.is_social() || c.kind != ScorerKind::kLowRank ? e.v.index : d.n + e.v.index;
          EXPECT_LE(std::abs(e.score - want(e.u.index, col)) / scale, 1e-6)
              << spec.describe() << " seed " << seed;
        }
      }
    }
  }
}

TEST(ScorerOracleTest, FullRankReproducesRawScores) {
  auto d = testing::random_san(21);
  auto net = d.build();
  ScorerSpec spec;
  spec.kind = ScorerKind::kCnLowRank;
  spec.rank = static_cast<int>(d.n);
  auto pairs = all_social_pairs(d.n);
  auto table = score_pairs(net, Task::kSocialLink, pairs, spec);
  for (const auto& e : table.entries) EXPECT_NEAR(e.score, cn_san(net, e.u, e.v), 1e-9);

  spec.kind = ScorerKind::kLowRank;
  table = score_pairs(net, Task::kSocialLink, pairs, spec);
  for (const auto& e : table.entries) {
    EXPECT_NEAR(e.score, net.has_social_edge(e.u.index, e.v.index) ? 1.0 : 0.0, 1e-9);
  }
}

TEST(ScorerOracleTest, RwwrBatchMatchesDense) {
  testing::RandomSanOptions o;
  o.max_social = 20;
  o.max_attributes = 10;
  auto d = testing::random_san(3, o);
  auto net = d.build();
  ScorerSpec spec;
  spec.kind = ScorerKind::kRwwr;
  auto table = score_pairs(net, Task::kSocialLink, all_social_pairs(d.n), spec);
  for (const auto& e : table.entries) {
    double want = 0.5 * (testing::dense_rwwr(d, e.u.index, 0.7)(e.v.index) +
                         testing::dense_rwwr(d, e.v.index, 0.7)(e.u.index));
    EXPECT_NEAR(e.score, want, 1e-8);
    EXPECT_NEAR(e.score, rwwr_score(net, e.u, e.v, {}, Task::kSocialLink), 1e-15);
  }
  table = score_pairs(net, Task::kAttributeLink, all_attribute_pairs(d.n, d.m), spec);
  for (const auto& e : table.entries) {
    EXPECT_NEAR(e.score, testing::dense_rwwr(d, e.u.index, 0.7)(d.n + e.v.index), 1e-8);
  }
}

TEST(RwwrScoreTest, SymmetricTwoNode) {
  NetworkBuilder b(2, 1);
  b.add_social_edge(0, 1);
  auto net = b.build();
  RwwrParams p;
  p.alpha = 0.5;
  EXPECT_NEAR(rwwr_score(net, NodeRef::social(0), NodeRef::social(1), p, Task::kSocialLink), 1.0 / 3, 1e-10);
  EXPECT_EQ(rwwr_score(net, NodeRef::social(0), NodeRef::attribute(0), p, Task::kAttributeLink), 0.0);
}

TEST(BaselineTest, MarginalFrequency) {
  NetworkBuilder b(10, 3);
  for (std::uint32_t u = 0; u < 10; ++u) b.add_attribute_link(u, 0);
  for (std::uint32_t u = 0; u < 5; ++u) b.add_attribute_link(u, 1);
  b.add_attribute_link(0, 2, LinkSign::kNegative);
  auto net = b.build();
  EXPECT_DOUBLE_EQ(baseline_attribute(net, 0), 10.0 / 15);
  EXPECT_DOUBLE_EQ(baseline_attribute(net, 0) + baseline_attribute(net, 1) + baseline_attribute(net, 2), 1.0);

  NetworkBuilder empty(2, 2);
  EXPECT_EQ(baseline_attribute(empty.build(), 1), 0.0);
}

TEST(ScoreCandidatesTest, EmptyCandidates) {
  auto net = testing::random_san(1).build();
  CandidateSet none;
  for (auto kind : {ScorerKind::kCommonNeighbors, ScorerKind::kLowRank, ScorerKind::kRwwr}) {
    ScorerSpec spec;
    spec.kind = kind;
    EXPECT_TRUE(score_candidates(net, none, spec).entries.empty());
  }
}

TEST(ScoreCandidatesTest, BatchEqualsPerPair) {
  auto d = testing::random_san(8);
  auto net = d.build();
  CandidateSet set;
  set.pairs = all_social_pairs(d.n);
  ScorerSpec spec;
  spec.kind = ScorerKind::kAdamicAdar;
  auto table = score_candidates(net, set, spec);
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    EXPECT_EQ(table.entries[i].score, aa_san(net, set.pairs[i].u, set.pairs[i].v));
  }
}

TEST(ScoreCandidatesTest, RejectsSelfPairsAndWrongKinds) {
  auto net = testing::random_san(2).build();
  ScorerSpec spec;
  EXPECT_THROW(score_pairs(net, Task::kSocialLink, {{NodeRef::social(1), NodeRef::social(1)}}, spec),
               DomainError);
  EXPECT_THROW(score_pairs(net, Task::kAttributeLink, {{NodeRef::social(1), NodeRef::social(2)}}, spec),
               DomainError);
  EXPECT_THROW(score_pairs(net, Task::kSocialLink, {{NodeRef::social(1), NodeRef::social(999)}}, spec),
               DomainError);
}

TEST(ScoreCandidatesTest, Deterministic) {
  auto net = testing::random_san(6).build();
  auto pairs = all_social_pairs(net.num_social());
  for (auto kind : {ScorerKind::kLowRank, ScorerKind::kRwwr, ScorerKind::kRandom}) {
    ScorerSpec spec;
    spec.kind = kind;
    spec.rank = 3;
    spec.seed = 99;
    auto a = score_pairs(net, Task::kSocialLink, pairs, spec);
    auto b = score_pairs(net, Task::kSocialLink, pairs, spec);
    for (std::size_t i = 0; i < pairs.size(); ++i) EXPECT_EQ(a.entries[i].score, b.entries[i].score);
  }
}

TEST(ReductionTest, ProjectedScorersEqualClassic) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = testing::random_san(seed);
    auto net = project_social(d.build());
    auto g = testing::adjacency_list(d);
    auto pairs = all_social_pairs(d.n);
    for (const auto& p : pairs) {
      EXPECT_EQ(cn_san(net, p.u, p.v), testing::classic_cn(g, p.u.index, p.v.index));
      EXPECT_EQ(aa_san(net, p.u, p.v), testing::classic_aa(g, p.u.index, p.v.index));
    }
    auto walks = testing::classic_rwwr_matrix(g, 0.7);
    ScorerSpec spec;
    spec.kind = ScorerKind::kRwwr;
    auto table = score_pairs(net, Task::kSocialLink, pairs, spec);
    for (const auto& e : table.entries) {
      EXPECT_NEAR(e.score, 0.5 * (walks(e.u.index, e.v.index) + walks(e.v.index, e.u.index)), 1e-8);
    }
  }
}

TEST(ScoreTableTest, CsvHeaderNamesScorer) {
  NetworkBuilder b(3, 0);
  b.add_social_edge(0, 1).add_social_edge(1, 2);
  auto net = b.build();
  ScorerSpec spec;
  spec.kind = ScorerKind::kRwwr;
  spec.alpha = 0.5;
  auto table = score_pairs(net, Task::kSocialLink, {{NodeRef::social(0), NodeRef::social(2)}}, spec);
  std::ostringstream out;
  write_score_table(out, table, net);
  EXPECT_EQ(out.str().substr(0, 42), "# scorer=rwwr alpha=0.5 task=links\nu,v,sco");
}

}  // namespace
}  // namespace san
