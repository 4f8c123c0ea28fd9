#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "san/errors.hpp"
#include "san/evaluation.hpp"

namespace san {
namespace {

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t n, int levels) {
  std::uniform_int_distribution<int> pick(0, levels - 1);
  std::vector<double> out(n);
  for (auto& v : out) v = pick(rng) * 0.25;
  return out;
}

TEST(AucTest, MatchesPairwiseEnumerationExactly) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 60);
    const auto pos = random_scores(rng, size(rng), 1 + trial % 7);
    const auto neg = random_scores(rng, size(rng), 1 + trial % 7);
    EXPECT_EQ(auc(pos, neg), testing::pairwise_auc(pos, neg)) << "trial " << trial;
  }
}

TEST(AucTest, KnownValues) {
  EXPECT_EQ(auc({0.9, 0.8}, {0.1, 0.2}), 1.0);
  EXPECT_EQ(auc({0.1}, {0.9}), 0.0);
  EXPECT_EQ(auc({0.5, 0.5}, {0.5}), 0.5);
  EXPECT_EQ(auc({0.8, 0.4}, {0.6}), 0.5);
}

TEST(AucTest, ComplementAndMonotoneInvariance) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> pos(40), neg(50);
  for (auto& v : pos) v = g(rng) + 0.5;
  for (auto& v : neg) v = g(rng);
  EXPECT_NEAR(auc(pos, neg) + auc(neg, pos), 1.0, 1e-15);
  auto warp = [](std::vector<double> v) {
    for (auto& x : v) x = std::exp(3 * x) - 7;
    return v;
  };
  EXPECT_EQ(auc(pos, neg), auc(warp(pos), warp(neg)));
}

TEST(AucTest, EmptyClassThrows) {
  EXPECT_THROW(auc({}, {1.0}), DomainError);
  EXPECT_THROW(auc({1.0}, {}), DomainError);
}

TEST(RocTest, EndpointsAndMonotone) {
  const auto roc = roc_curve({0.9, 0.5, 0.5}, {0.5, 0.1});
  ASSERT_GE(roc.size(), 2u);
  EXPECT_EQ(roc.front().fpr, 0.0);
  EXPECT_EQ(roc.front().tpr, 0.0);
  EXPECT_EQ(roc.back().fpr, 1.0);
  EXPECT_EQ(roc.back().tpr, 1.0);
  for (std::size_t i = 1; i < roc.size(); ++i) {
    EXPECT_GE(roc[i].fpr, roc[i - 1].fpr);
    EXPECT_GE(roc[i].tpr, roc[i - 1].tpr);
  }
}

TEST(PrecisionAtKTest, AllTiedExample) {
  UserRanking user{{1, 1, 1, 1}, {true, true, false, false}};
  EXPECT_DOUBLE_EQ(expected_hits_at_k(user, 2), 1.0);
}

TEST(PrecisionAtKTest, ShortListsContributeEverything) {
  UserRanking user{{0.3, 0.1}, {true, true}};
  EXPECT_DOUBLE_EQ(expected_hits_at_k(user, 4), 2.0);
  EXPECT_THROW(precision_at_k({user}, 0), DomainError);
}

TEST(PrecisionAtKTest, MatchesShuffleSimulation) {
  std::mt19937_64 rng(2024);
  for (int config = 0; config < 20; ++config) {
    std::uniform_int_distribution<int> len(3, 12), lv(1, 4);
    UserRanking user;
    const int n = len(rng);
    const int levels = lv(rng);
    std::uniform_int_distribution<int> level(0, levels - 1);
    std::bernoulli_distribution rel(0.4);
    for (int i = 0; i < n; ++i) {
      user.scores.push_back(level(rng));
      user.relevant.push_back(rel(rng));
    }
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const double expected = expected_hits_at_k(user, k);

    // Rank by score with ties in a fresh random order each time.
    const int draws = 100000;
    double sum = 0, sum2 = 0;
    std::vector<int> order(n);
    std::uniform_real_distribution<double> key(0, 1);
    std::vector<double> jitter(n);
    for (int d = 0; d < draws; ++d) {
      std::iota(order.begin(), order.end(), 0);
      for (auto& j : jitter) j = key(rng);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (user.scores[a] != user.scores[b]) return user.scores[a] > user.scores[b];
        return jitter[a] < jitter[b];
      });
      int hits = 0;
      for (int i = 0; i < k; ++i) hits += user.relevant[order[i]];
      sum += hits;
      sum2 += double(hits) * hits;
    }
    const double mean = sum / draws;
    const double se = std::sqrt(std::max(0.0, sum2 / draws - mean * mean) / draws);
    EXPECT_LE(std::abs(mean - expected), 3 * se + 1e-12) << "config " << config;
  }
}

TEST(PrecisionAtKTest, MonotoneInK) {
  std::mt19937_64 rng(8);
  std::vector<UserRanking> users(5);
  for (auto& u : users) {
    for (int i = 0; i < 8; ++i) {
      u.scores.push_back(rng() % 3);
      u.relevant.push_back(rng() % 2);
    }
  }
  for (int k = 1; k < 8; ++k) EXPECT_LE(precision_at_k(users, k), precision_at_k(users, k + 1));
}

// ---- mutex -----------------------------------------------------------------

ScoreTable attribute_table(const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& rows) {
  ScoreTable t;
  t.task = Task::kAttributeLink;
  for (auto [u, a, s] : rows) t.entries.push_back({NodeRef::social(u), NodeRef::attribute(a), s});
  return t;
}

TEST(MutexTest, KeepsHigherRankedOfAPair) {
  auto net = NetworkBuilder(1, 3).add_mutex(0, 1).build();  // attr0 = Female, attr1 = Male
  auto d = top_k_decisions(attribute_table({{0, 0, 0.9}, {0, 1, 0.6}, {0, 2, 0.1}}), 2);
  EXPECT_EQ(mutex_postprocess(d, net), 1u);
  EXPECT_TRUE(d[0].positive);
  EXPECT_FALSE(d[1].positive);
  EXPECT_TRUE(d[1].demoted);
  EXPECT_FALSE(d[2].positive);
  EXPECT_FALSE(d[2].demoted);
}

TEST(MutexTest, NoMutexIsIdentity) {
  auto net = NetworkBuilder(2, 3).build();
  auto d = top_k_decisions(attribute_table({{0, 0, 0.9}, {0, 1, 0.6}, {1, 2, 0.3}}), 3);
  const auto before = d;
  EXPECT_EQ(mutex_postprocess(d, net), 0u);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d[i].positive, before[i].positive);
}

TEST(MutexTest, MatchesBruteForceAndValidates) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t n = 6, m = 10;
    NetworkBuilder b(n, m);
    std::set<std::pair<std::uint32_t, std::uint32_t>> mutex;
    for (int i = 0; i < 8; ++i) {
      std::uint32_t a = rng() % m, c = rng() % m;
      if (a == c) continue;
      mutex.emplace(std::min(a, c), std::max(a, c));
    }
    for (auto [a, c] : mutex) b.add_mutex(a, c);
    const auto net = b.build();

    ScoreTable table;
    table.task = Task::kAttributeLink;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t a = 0; a < m; ++a) {
        table.entries.push_back({NodeRef::social(u), NodeRef::attribute(a), double(rng() % 5)});
      }
    }
    const int k = 1 + trial % 6;
    auto d = top_k_decisions(table, k);
    const auto putative = d;
    const auto demoted = mutex_postprocess(d, net);

    std::size_t brute_demoted = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < putative.size(); ++i) {
        if (putative[i].user == u && putative[i].positive) idx.push_back(i);
      }
      std::sort(idx.begin(), idx.end(), [&](auto x, auto y) {
        if (putative[x].score != putative[y].score) return putative[x].score > putative[y].score;
        return putative[x].attribute < putative[y].attribute;
      });
      std::vector<std::uint32_t> ranked;
      for (auto i : idx) ranked.push_back(putative[i].attribute);
      const auto keep = testing::brute_force_mutex_keep(ranked, mutex);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        EXPECT_EQ(d[idx[r]].positive, bool(keep[r]));
        brute_demoted += !keep[r];
      }
    }
    EXPECT_EQ(demoted, brute_demoted);

    for (const auto& v : validate(with_inferred_attributes(net, d))) {
      EXPECT_NE(v.kind, Violation::Kind::kMutexViolation) << v.message;
    }
    auto again = d;
    EXPECT_EQ(mutex_postprocess(again, net), 0u);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(again[i].positive, d[i].positive);
  }
}

TEST(MutexTest, ExistingPositivesTakePriority) {
  auto net = NetworkBuilder(1, 3).add_mutex(0, 1).add_attribute_link(0, 0).build();
  auto d = top_k_decisions(attribute_table({{0, 1, 0.9}, {0, 2, 0.5}}), 2);
  EXPECT_EQ(mutex_postprocess(d, net), 1u);
  EXPECT_TRUE(d[0].demoted);
  EXPECT_TRUE(d[1].positive);
}

TEST(MutexTest, AdjustedScoresSinkDemotedLinks) {
  std::vector<AttributeDecision> d{{0, 0, 0.9, true, false}, {0, 1, 0.8, false, true}, {0, 2, -0.5, false, false}};
  const auto s = adjusted_scores(d);
  EXPECT_EQ(s[0], 0.9);
  EXPECT_EQ(s[2], -0.5);
  EXPECT_LT(s[1], s[2]);
}

TEST(MutexTest, InferredLinksCarryTheWeight) {
  auto net = NetworkBuilder(2, 2).add_attribute_link(1, 0).build();
  std::vector<AttributeDecision> d{{0, 1, 1.0, true, false}, {1, 0, 1.0, true, false}};
  const auto out = with_inferred_attributes(net, d, 0.5);
  EXPECT_EQ(out.attribute_sign(0, 1), LinkSign::kPositive);
  EXPECT_EQ(out.attribute_weights_of(0, LinkSign::kPositive)[0], 0.5);
  EXPECT_EQ(out.num_attribute_links(LinkSign::kPositive), 2u);
}

// ---- grid ------------------------------------------------------------------

TEST(GridTest, ParseAndCanonicalOrder) {
  const auto g = parse_grid("rank=20,5,10;alpha=0.5,0.9");
  EXPECT_EQ(g.values().at("rank"), (std::vector<double>{5, 10, 20}));
  EXPECT_EQ(g.values().at("alpha"), (std::vector<double>{0.9, 0.5}));
  EXPECT_EQ(g.points().size(), 6u);
  EXPECT_THROW(parse_grid("rank"), ParseError);
  EXPECT_THROW(parse_grid("rank=a"), ParseError);
  EXPECT_EQ(parse_grid(g.to_string()).values(), g.values());
}

TEST(GridTest, SinglePointAndOrderInvariance) {
  GridSpec single;
  single.set("rank", {7});
  EXPECT_EQ(grid_search(single, [](const GridPoint&) { return 0.0; }).best.at("rank"), 7);

  auto metric = [](const GridPoint& p) { return p.at("rank") >= 10 ? 1.0 : 0.5; };
  GridSpec a, b;
  a.set("rank", {40, 10, 20});
  b.set("rank", {20, 40, 10});
  EXPECT_EQ(grid_search(a, metric).best, grid_search(b, metric).best);
  EXPECT_EQ(grid_search(a, metric).best.at("rank"), 10);  // smallest rank wins the tie
}

TEST(GridTest, AlphaTiesGoToLarger) {
  GridSpec g;
  g.set("alpha", {0.1, 0.7, 0.3});
  EXPECT_EQ(grid_search(g, [](const GridPoint&) { return 1.0; }).best.at("alpha"), 0.7);
}

TEST(GridTest, PlantedRankSelected) {
  // Rank-4 signal plus small noise; held-out entries score best at rank 4.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const int n = 60, planted = 4;
  Eigen::MatrixXd u(n, planted), v(n, planted);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < planted; ++j) {
      u(i, j) = g(rng);
      v(i, j) = g(rng);
    }
  }
  Eigen::MatrixXd truth = u * v.transpose();
  Eigen::MatrixXd observed = truth;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) observed(i, j) += 0.5 * g(rng);
  }
  GridSpec grid;
  grid.set("rank", {1, 2, 3, 4, 5, 6, 8, 10});
  const auto result = grid_search(grid, [&](const GridPoint& p) {
    const auto approx = testing::dense_truncated(observed, static_cast<int>(p.at("rank")));
    return -(approx - truth).norm();
  });
  EXPECT_EQ(result.best.at("rank"), planted);
}

TEST(GridTest, GridForPicksRelevantNames) {
  GridSpec g;
  g.set("rank", {5});
  g.set("alpha", {0.5});
  ScorerSpec s;
  s.kind = ScorerKind::kCnLowRank;
  EXPECT_EQ(grid_for(s, g).values().count("rank"), 1u);
  EXPECT_EQ(grid_for(s, g).values().count("alpha"), 0u);
  s.kind = ScorerKind::kRwwr;
  EXPECT_EQ(apply_grid_point(s, {{"alpha", 0.5}}).alpha, 0.5);
  s.kind = ScorerKind::kAdamicAdar;
  EXPECT_TRUE(grid_for(s, g).empty());
}

// ---- reports and tables ----------------------------------------------------

TEST(ReportTest, SummaryStatistics) {
  const auto one = summarize("auc", {0.7});
  EXPECT_EQ(one.mean, 0.7);
  EXPECT_FALSE(one.stddev);
  const auto two = summarize("auc", {0.6, 0.8});
  EXPECT_NEAR(two.mean, 0.7, 1e-15);
  EXPECT_NEAR(*two.stddev, std::sqrt(0.02), 1e-15);
  EXPECT_EQ(*summarize("auc", {0.5, 0.5, 0.5}).stddev, 0.0);
}

TEST(ReportTest, JsonRoundTrip) {
  MetricsReport r;
  r.descriptor = {{"scorer", "cn"}, {"seed", "3"}};
  r.trials = 2;
  r.metrics = {summarize("auc", {0.61, 0.63}), summarize("pre@2", {1.25, 1.5})};
  const auto back = MetricsReport::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_EQ(back.metric("pre@2").values, r.metric("pre@2").values);
  EXPECT_THROW(r.metric("missing"), DomainError);
}

TEST(ReportTest, TrialSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::size_t t = 0; t < 100; ++t) seen.insert(trial_seed(42, t));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(trial_seed(42, 3), trial_seed(42, 3));
}

TEST(TableTest, FormatsParenthesizedStd) {
  ResultTable t;
  t.columns = {"w/o Attri", "With Attri"};
  t.rows.push_back({"CN-SAN", {TableCell{0.673, 0.0}, TableCell{0.68, 0.0021}}});
  t.rows.push_back({"Random", {TableCell{0.5, std::nullopt}, std::nullopt}});
  const auto csv = format_table(t);
  EXPECT_NE(csv.find("0.6730(0)"), std::string::npos) << csv;
  EXPECT_NE(csv.find("0.6800(0.0021)"), std::string::npos) << csv;
  const auto back = parse_table(csv);
  EXPECT_EQ(format_table(back), csv);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_FALSE(back.rows[1].cells[1]);
}

TEST(TableTest, ReportThroughFormatter) {
  const auto s = summarize("auc", {0.6612, 0.6788});
  ResultTable t;
  t.columns = {"AUC"};
  t.rows.push_back({"AA-SAN", {cell_of(MetricsReport::from_json([&] {
                                 MetricsReport r;
                                 r.trials = 2;
                                 r.metrics = {s};
                                 return r.to_json();
                               }()).metric("auc"))}});
  const auto parsed = parse_table(format_table(t));
  EXPECT_NEAR(parsed.rows[0].cells[0]->mean, s.mean, 5e-5);
  EXPECT_EQ(format_table(parse_table(format_table(t))), format_table(t));
}

}  // namespace
}  // namespace san
