#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "san/errors.hpp"
#include "san/synthetic.hpp"
#include "small_synthetic.hpp"

namespace san {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("san_synthetic_" + name);
  fs::remove_all(dir);
  return dir;
}

// Share of positive attribute links that fall in the user's own pool.
double own_pool_share(const SyntheticData& d) {
  const auto& net = d.backfilled[0].network;
  const auto apc = d.params.attributes_per_community;
  std::size_t own = 0, all = 0;
  for (std::uint32_t u = 0; u < net.num_social(); ++u) {
    for (auto a : net.attributes_of(u, LinkSign::kPositive)) {
      own += a / apc == d.community[u];
      ++all;
    }
  }
  return double(own) / double(all);
}

TEST(GeneratorTest, PlantedEdgeCounts) {
  const auto p = testing::small_params();
  const auto d = generate(p, 1);
  ASSERT_EQ(d.backfilled.size(), 3u);
  ASSERT_EQ(d.new_links.size(), 2u);
  for (std::uint32_t s = 0; s < 3; ++s) {
    EXPECT_EQ(d.backfilled[s].network.num_social_edges(), p.initial_edges + s * p.new_edges);
    EXPECT_EQ(d.backfilled[s].label, synthetic_label(s));
  }
  for (std::uint32_t s = 1; s < 3; ++s) {
    EXPECT_EQ(d.new_links[s - 1].size(), p.new_edges);
    EXPECT_EQ(d.hidden[s - 1].size(), s * p.missing_edges);
    EXPECT_EQ(d.observed[s].network.num_social_edges(), d.backfilled[s].network.num_social_edges() - s * p.missing_edges);
    for (const auto& e : d.new_links[s - 1]) {
      EXPECT_FALSE(d.backfilled[s - 1].network.has_social_edge(e.u, e.v));
      EXPECT_TRUE(d.backfilled[s].network.has_social_edge(e.u, e.v));
    }
    for (const auto& e : d.hidden[s - 1]) EXPECT_FALSE(d.observed[s].network.has_social_edge(e.u, e.v));
  }
  EXPECT_EQ(d.observed[0].network.num_social_edges(), p.initial_edges);
}

TEST(GeneratorTest, NetworksSatisfyInvariants) {
  const auto d = generate(testing::small_params(), 2);
  for (const auto& s : d.backfilled) EXPECT_TRUE(validate(s.network).empty());
  EXPECT_EQ(d.backfilled[0].network.mutex_pairs().size(), testing::small_params().mutex_pairs);
}

TEST(GeneratorTest, HomophilyControlsPoolShare) {
  auto p = testing::small_params();
  p.homophily = 0.8;
  EXPECT_GT(own_pool_share(generate(p, 3)), 0.75);
  p.homophily = 0.0;
  const double chance = 1.0 / p.communities;
  EXPECT_NEAR(own_pool_share(generate(p, 3)), chance, 0.05);
}

TEST(GeneratorTest, RejectsBadParameters) {
  auto p = testing::small_params();
  p.homophily = 1.5;
  EXPECT_THROW(generate(p, 0), DomainError);
  p = testing::small_params();
  p.mutex_pairs = 30;  // six pairs per pool of eight
  EXPECT_THROW(p.validate(), DomainError);
  p = testing::small_params();
  p.p_in = 0.9;
  p.p_triadic = 0.2;
  EXPECT_THROW(p.validate(), DomainError);
  EXPECT_THROW(synthetic_pair(generate(testing::small_params(), 0), 0, 7), DomainError);
}

TEST(GeneratorTest, SameSeedWritesIdenticalFiles) {
  const auto a = scratch("a"), b = scratch("b"), c = scratch("c");
  write_synthetic(a, generate(testing::small_params(), 5));
  write_synthetic(b, generate(testing::small_params(), 5));
  write_synthetic(c, generate(testing::small_params(), 6));
  for (const char* f : {"t1.edges", "t2.edges", "t3.all.edges", "attributes.tsv", "mutex.tsv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_NE(slurp(a / "t3.all.edges"), slurp(c / "t3.all.edges"));
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST(GeneratorTest, FilesRoundTripThroughTheStore) {
  const auto dir = scratch("store");
  const auto data = generate(testing::small_params(), 7);
  const SnapshotStore store(read_manifest(write_synthetic(dir, data)));
  for (std::uint32_t s = 0; s < 3; ++s) {
    const auto label = synthetic_label(s);
    const auto obs = store.load(label, EdgeChoice::kObserved).network;
    const auto all = store.load(label, EdgeChoice::kBackfilled).network;
    EXPECT_EQ(obs.num_social_edges(), data.observed[s].network.num_social_edges());
    EXPECT_EQ(all.num_social_edges(), data.backfilled[s].network.num_social_edges());
    EXPECT_EQ(all.num_attribute_links(LinkSign::kPositive),
              data.backfilled[s].network.num_attribute_links(LinkSign::kPositive));
    EXPECT_EQ(all.mutex_pairs().size(), data.backfilled[s].network.mutex_pairs().size());
  }
  // Both directions of load_pair agree with the in-memory pairs.
  for (auto [tr, te] : {std::pair{0u, 1u}, std::pair{2u, 1u}}) {
    const auto disk = load_pair(store, synthetic_label(tr), synthetic_label(te));
    const auto mem = synthetic_pair(data, tr, te);
    const auto a = extract_labels(disk.train, disk.test, Task::kSocialLink, Scope::kHop2Cat1);
    const auto b = extract_labels(mem.train, mem.test, Task::kSocialLink, Scope::kHop2Cat1);
    EXPECT_EQ(a.count(Label::kPositive), b.count(Label::kPositive));
    EXPECT_EQ(a.count(Label::kNegative), b.count(Label::kNegative));
    EXPECT_GT(a.count(Label::kPositive), 0u);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace san
