#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "san/errors.hpp"
#include "san/rwwr.hpp"

namespace san {
namespace {

SocialAttributeNetwork two_nodes() {
  NetworkBuilder b(2, 0);
  b.add_social_edge(0, 1);
  return b.build();
}

TEST(RwwrTest, TwoStateClosedForm) {
  for (double alpha : {0.1, 0.5, 0.7, 0.9}) {
    RwwrParams p;
    p.alpha = alpha;
    auto dist = rwwr(two_nodes(), NodeRef::social(0), p);
    EXPECT_NEAR(dist[1], (1 - alpha) / (2 - alpha), 1e-10);
    EXPECT_NEAR(dist[0], 1 / (2 - alpha), 1e-10);
  }
}

TEST(RwwrTest, ImmediateRestart) {
  RwwrParams p;
  p.alpha = 1.0;
  auto net = testing::random_san(4).build();
  auto dist = rwwr(net, NodeRef::social(3), p);
  for (std::size_t i = 0; i < dist.size(); ++i) EXPECT_EQ(dist[i], i == 3 ? 1.0 : 0.0);
}

TEST(RwwrTest, MatchesDenseSolve) {
  testing::RandomSanOptions o;
  o.max_social = 20;
  o.max_attributes = 10;
  o.edge_density = 0.15;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = testing::random_san(seed, o);
    auto net = d.build();
    WalkGraph g(net);
    for (std::uint32_t s = 0; s < d.n + d.m; ++s) {
      NodeRef src = s < d.n ? NodeRef::social(s) : NodeRef::attribute(s - d.n);
      auto dist = g.stationary(src, {});
      auto want = testing::dense_rwwr(d, s, 0.7);
      for (std::uint32_t i = 0; i < d.n + d.m; ++i) EXPECT_NEAR(dist[i], want(i), 1e-8);
    }
  }
}

TEST(RwwrTest, DistributionsSumToOne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto net = testing::random_san(seed).build();
    WalkGraph g(net);
    for (double alpha : {0.1, 0.5, 0.7, 0.9}) {
      RwwrParams p;
      p.alpha = alpha;
      for (std::uint32_t s = 0; s < net.num_social(); ++s) {
        auto dist = g.stationary(NodeRef::social(s), p);
        for (double x : dist) EXPECT_GE(x, 0.0);
        EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, 1e-8);
      }
    }
  }
}

TEST(RwwrTest, BadParams) {
  RwwrParams p;
  p.alpha = 0.0;
  EXPECT_THROW(rwwr(two_nodes(), NodeRef::social(0), p), DomainError);
  p.alpha = 1.5;
  EXPECT_THROW(rwwr(two_nodes(), NodeRef::social(0), p), DomainError);
  p.alpha = 0.5;
  EXPECT_THROW(rwwr(two_nodes(), NodeRef::social(2), p), DomainError);
}

TEST(RwwrTest, NonConvergenceReportsResidual) {
  RwwrParams p;
  p.alpha = 0.01;
  p.max_iters = 2;
  auto net = testing::random_san(1).build();
  std::uint32_t source = 0;
  while (net.social_neighbors(source).empty()) ++source;
  try {
    rwwr(net, NodeRef::social(source), p);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.residual(), p.tol);
  }
}

}  // namespace
}  // namespace san
