#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "san/errors.hpp"
#include "san/network.hpp"

namespace san {
namespace {

// u0..u5 with attributes; mirrors the running example of a small SAN where
// u2 and u5 both live in San Francisco.
SocialAttributeNetwork example_network() {
  NetworkBuilder b(6, 4);
  b.set_attribute_names({"San Francisco", "Google", "Female", "Male"});
  b.add_social_edge(0, 1).add_social_edge(1, 2).add_social_edge(2, 3).add_social_edge(3, 4);
  b.add_attribute_link(2, 0).add_attribute_link(5, 0).add_attribute_link(1, 1);
  b.add_attribute_link(2, 2).add_attribute_link(5, 3, LinkSign::kPositive);
  b.add_attribute_link(2, 3, LinkSign::kNegative);
  b.add_mutex(2, 3);
  return b.build();
}

TEST(NetworkTest, AttributeSocialNeighbors) {
  auto net = example_network();
  auto sf = NodeRef::attribute(*net.find_attribute("San Francisco"));
  auto got = net.neighbors(sf, LinkSign::kPositive, Restrict::kSocialOnly);
  std::vector<NodeRef> want{NodeRef::social(2), NodeRef::social(5)};
  EXPECT_EQ(got, want);
}

TEST(NetworkTest, IsolatedNodeHasNoNeighbors) {
  NetworkBuilder b(3, 1);
  b.add_social_edge(0, 1);
  auto net = b.build();
  EXPECT_TRUE(net.neighbors(NodeRef::social(2), LinkSign::kPositive, Restrict::kAll).empty());
  EXPECT_TRUE(net.neighbors(NodeRef::social(2), LinkSign::kNegative, Restrict::kAll).empty());
}

TEST(NetworkTest, MutexNeverANeighbor) {
  auto net = example_network();
  for (auto sign : {LinkSign::kPositive, LinkSign::kNegative}) {
    for (auto r : {Restrict::kAll, Restrict::kSocialOnly}) {
      for (auto n : net.neighbors(NodeRef::attribute(2), sign, r)) EXPECT_TRUE(n.is_social());
    }
  }
}

TEST(NetworkTest, DegreeCounting) {
  NetworkBuilder b(3, 3);
  b.add_social_edge(0, 1).add_social_edge(0, 2);
  b.add_attribute_link(0, 0).add_attribute_link(0, 1).add_attribute_link(0, 2);
  b.add_attribute_link(1, 0).add_attribute_link(2, 0);
  auto net = b.build();
  EXPECT_EQ(net.degree(NodeRef::social(0), LinkSign::kPositive, Restrict::kAll), 5u);
  EXPECT_EQ(net.degree(NodeRef::social(0), LinkSign::kPositive, Restrict::kSocialOnly), 2u);
  EXPECT_EQ(net.degree(NodeRef::attribute(0), LinkSign::kPositive, Restrict::kAll), 3u);
  EXPECT_EQ(net.degree(NodeRef::attribute(0), LinkSign::kPositive, Restrict::kSocialOnly), 3u);
}

TEST(NetworkTest, UnknownNodeThrows) {
  auto net = example_network();
  EXPECT_THROW(net.neighbors(NodeRef::social(6), LinkSign::kPositive, Restrict::kAll), DomainError);
  EXPECT_THROW(net.degree(NodeRef::attribute(4), LinkSign::kPositive, Restrict::kAll), DomainError);
}

TEST(NetworkTest, NeighborsMatchEdgeScan) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto d = testing::random_san(seed);
    auto net = d.build();
    for (std::uint32_t u = 0; u < d.n; ++u) {
      std::vector<NodeRef> want_pos, want_soc, want_neg;
      for (auto v : testing::social_neighbors(d, u)) {
        want_pos.push_back(NodeRef::social(v));
        want_soc.push_back(NodeRef::social(v));
        want_neg.push_back(NodeRef::social(v));
      }
      for (const auto& [key, sign] : d.signs) {
        if (key.first != u) continue;
        (sign > 0 ? want_pos : want_neg).push_back(NodeRef::attribute(key.second));
      }
      std::sort(want_pos.begin(), want_pos.end());
      std::sort(want_neg.begin(), want_neg.end());
      const auto node = NodeRef::social(u);
      EXPECT_EQ(net.neighbors(node, LinkSign::kPositive, Restrict::kAll), want_pos);
      EXPECT_EQ(net.neighbors(node, LinkSign::kPositive, Restrict::kSocialOnly), want_soc);
      EXPECT_EQ(net.neighbors(node, LinkSign::kNegative, Restrict::kAll), want_neg);
      for (auto s : {LinkSign::kPositive, LinkSign::kNegative}) {
        for (auto r : {Restrict::kAll, Restrict::kSocialOnly}) {
          EXPECT_EQ(net.degree(node, s, r), net.neighbors(node, s, r).size());
        }
      }
    }
    for (std::uint32_t a = 0; a < d.m; ++a) {
      std::vector<NodeRef> want;
      for (auto v : testing::positive_members(d, a)) want.push_back(NodeRef::social(v));
      EXPECT_EQ(net.neighbors(NodeRef::attribute(a), LinkSign::kPositive, Restrict::kAll), want);
      EXPECT_EQ(net.degree(NodeRef::attribute(a), LinkSign::kPositive, Restrict::kSocialOnly), want.size());
    }
  }
}

TEST(NetworkTest, SymmetricNeighbors) {
  auto net = testing::random_san(7).build();
  for (std::uint32_t u = 0; u < net.num_social(); ++u) {
    for (auto v : net.social_neighbors(u)) {
      EXPECT_TRUE(net.has_social_edge(v, u));
      EXPECT_EQ(net.social_edge_weight(u, v), net.social_edge_weight(v, u));
    }
  }
}

TEST(ValidateTest, MutexViolationNamed) {
  auto raw = example_network().to_raw();
  raw.attribute_links.push_back({0, 2, LinkSign::kPositive, 1.0});
  raw.attribute_links.push_back({0, 3, LinkSign::kPositive, 1.0});
  auto net = SocialAttributeNetwork::from_raw_unchecked(raw);
  auto violations = validate(net);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].kind, Violation::Kind::kMutexViolation);
  std::vector<NodeRef> want{NodeRef::social(0), NodeRef::attribute(2), NodeRef::attribute(3)};
  EXPECT_EQ(violations[0].nodes, want);
}

TEST(ValidateTest, CheckedConstructionIsClean) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(validate(testing::random_san(seed).build()).empty());
  }
}

TEST(ValidateTest, AsymmetricEntryReported) {
  auto raw = example_network().to_raw();
  // Drop the (1 -> 0) half of edge {0, 1} by rebuilding row 1 without it.
  Adjacency adj;
  for (std::size_t r = 0; r < raw.social.rows(); ++r) {
    auto row = raw.social.row(r);
    auto w = raw.social.row_weights(r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (r == 1 && row[i] == 0) continue;
      adj.targets.push_back(row[i]);
      adj.weights.push_back(w[i]);
    }
    adj.offsets.push_back(adj.targets.size());
  }
  raw.social = adj;
  auto violations = validate(SocialAttributeNetwork::from_raw_unchecked(raw));
  ASSERT_FALSE(violations.empty());
  EXPECT_TRUE(std::any_of(violations.begin(), violations.end(),
                          [](const Violation& v) { return v.kind == Violation::Kind::kAsymmetric; }));
}

TEST(BuilderTest, RejectsBadInput) {
  NetworkBuilder b(3, 2);
  EXPECT_THROW(b.add_social_edge(1, 1), DomainError);
  EXPECT_THROW(b.add_social_edge(0, 3), DomainError);
  b.add_mutex(0, 1);
  b.add_attribute_link(0, 0).add_attribute_link(0, 1);
  EXPECT_THROW(b.build(), DomainError);
}

TEST(BuilderTest, RejectsNegativeWeight) {
  NetworkBuilder b(2, 1);
  b.add_social_edge(0, 1, -1.0);
  EXPECT_THROW(b.build(), DomainError);
}

TEST(ProjectSocialTest, KeepsOnlySocialStructure) {
  auto net = example_network();
  auto p = project_social(net);
  EXPECT_EQ(p.num_social(), net.num_social());
  EXPECT_EQ(p.num_attribute_links(LinkSign::kPositive), 0u);
  EXPECT_EQ(p.num_attribute_links(LinkSign::kNegative), 0u);
  EXPECT_TRUE(p.mutex_pairs().empty());
  auto a = net.social_edges(), b = p.social_edges();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].u, b[i].u);
    EXPECT_EQ(a[i].v, b[i].v);
    EXPECT_EQ(b[i].weight, 1.0);
  }
}

TEST(ProjectSocialTest, Idempotent) {
  testing::RandomSanOptions o;
  o.random_node_weights = true;
  auto once = project_social(testing::random_san(3, o).build());
  auto twice = project_social(once);
  EXPECT_EQ(once.social_edges().size(), twice.social_edges().size());
  for (std::uint32_t u = 0; u < once.num_social(); ++u) {
    EXPECT_EQ(once.node_weight(NodeRef::social(u)), 1.0);
    auto x = once.social_neighbors(u), y = twice.social_neighbors(u);
    EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
  }
}

TEST(NetworkTest, DefaultNames) {
  NetworkBuilder b(2, 2);
  auto net = b.build();
  EXPECT_EQ(net.node_name(NodeRef::social(1)), "1");
  EXPECT_EQ(net.node_name(NodeRef::attribute(0)), "attr0");
  EXPECT_EQ(net.find_social("1"), 1u);
}

}  // namespace
}  // namespace san
