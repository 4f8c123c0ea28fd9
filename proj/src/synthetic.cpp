#include "san/synthetic.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "san/errors.hpp"

namespace san {

void GeneratorParams::validate() const {
  auto fail = [](const std::string& what) { throw DomainError("generator: " + what); };
  if (nodes < 3) fail("nodes must be at least 3");
  if (communities < 1 || communities > nodes) fail("communities must lie in [1, nodes]");
  if (attributes_per_community < 1) fail("attributes_per_community must be positive");
  const std::uint64_t m = std::uint64_t{communities} * attributes_per_community;
  if (min_attributes < 0 || max_attributes < min_attributes) fail("attribute count range is empty");
  if (static_cast<std::uint64_t>(max_attributes) > m) fail("max_attributes exceeds the attribute count");
  if (!(homophily >= 0.0 && homophily <= 1.0)) fail("homophily must lie in [0, 1]");
  const std::uint64_t per_pool = (std::uint64_t{mutex_pairs} + communities - 1) / communities;
  if (2 * per_pool > attributes_per_community) fail("too many mutex pairs for the pool size");
  if (extra_negative_attributes < 0) fail("extra_negative_attributes must be non-negative");
  if (!(p_in >= 0.0 && p_triadic >= 0.0 && p_in + p_triadic <= 1.0)) {
    fail("p_in and p_triadic must be probabilities with sum at most 1");
  }
  if (snapshots < 1) fail("snapshots must be positive");
  if (initial_edges < 1) fail("initial_edges must be positive");
  const std::uint64_t total = initial_edges + std::uint64_t{snapshots - 1} * new_edges;
  const std::uint64_t possible = std::uint64_t{nodes} * (nodes - 1) / 2;
  if (2 * total > possible) fail("edge budget exceeds half of all node pairs");
  if (snapshots > 1 && missing_edges * std::uint64_t{snapshots - 1} > initial_edges) {
    fail("missing_edges too large for the first snapshot");
  }
}

std::string synthetic_label(std::uint32_t index) { return "t" + std::to_string(index + 1); }

namespace {

std::uint64_t key(std::uint32_t u, std::uint32_t v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

template <typename T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

}  // namespace

SyntheticData generate(const GeneratorParams& p, std::uint64_t seed) {
  p.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint32_t n = p.nodes;
  const std::uint32_t m = p.communities * p.attributes_per_community;

  SyntheticData data;
  data.params = p;
  data.seed = seed;
  data.community.resize(n);
  std::vector<std::vector<std::uint32_t>> members(p.communities);
  for (std::uint32_t u = 0; u < n; ++u) {
    data.community[u] = u % p.communities;
    members[u % p.communities].push_back(u);
  }

  // Mutex pairs sit inside community pools: pair i joins attributes 2j and
  // 2j+1 of pool i mod C, with j = i div C.
  std::vector<std::int64_t> partner(m, -1);
  std::vector<MutexPair> mutex;
  for (std::uint32_t i = 0; i < p.mutex_pairs; ++i) {
    const std::uint32_t a = (i % p.communities) * p.attributes_per_community + 2 * (i / p.communities);
    partner[a] = a + 1;
    partner[a + 1] = a;
    mutex.push_back({a, a + 1});
  }

  NetworkBuilder base(n, m);
  std::vector<std::string> user_names(n), attr_names(m);
  for (std::uint32_t u = 0; u < n; ++u) user_names[u] = "u" + std::to_string(u);
  for (std::uint32_t a = 0; a < m; ++a) attr_names[a] = "attr" + std::to_string(a);
  base.set_social_names(user_names).set_attribute_names(attr_names);
  for (const auto& mp : mutex) base.add_mutex(mp.a, mp.b);

  std::uniform_int_distribution<int> count_dist(p.min_attributes, p.max_attributes);
  std::uniform_int_distribution<std::uint32_t> any_attr(0, m - 1);
  std::uniform_int_distribution<std::uint32_t> own_attr(0, p.attributes_per_community - 1);
  for (std::uint32_t u = 0; u < n; ++u) {
    const int want = count_dist(rng);
    std::vector<std::uint32_t> positive;
    std::vector<char> blocked(m, 0);  // already held or mutex with a held one
    for (int attempt = 0; static_cast<int>(positive.size()) < want && attempt < 64 * (want + 1); ++attempt) {
      const std::uint32_t a = unit(rng) < p.homophily
                                  ? data.community[u] * p.attributes_per_community + own_attr(rng)
                                  : any_attr(rng);
      if (blocked[a]) continue;
      positive.push_back(a);
      blocked[a] = 1;
      if (partner[a] >= 0) blocked[partner[a]] = 1;
    }
    std::sort(positive.begin(), positive.end());
    std::vector<char> negative(m, 0);
    for (auto a : positive) {
      base.add_attribute_link(u, a, LinkSign::kPositive);
      if (partner[a] >= 0) negative[partner[a]] = 1;
    }
    for (int k = 0, attempt = 0; k < p.extra_negative_attributes && attempt < 64; ++attempt) {
      const auto a = any_attr(rng);
      if (std::binary_search(positive.begin(), positive.end(), a) || negative[a]) continue;
      negative[a] = 1;
      ++k;
    }
    for (std::uint32_t a = 0; a < m; ++a) {
      if (negative[a]) base.add_attribute_link(u, a, LinkSign::kNegative);
    }
  }

  // Social edges in creation order.
  const std::size_t total = p.initial_edges + std::size_t{p.snapshots - 1} * p.new_edges;
  std::vector<SocialEdge> edges;
  edges.reserve(total);
  std::unordered_set<std::uint64_t> present;
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::uniform_int_distribution<std::uint32_t> any_node(0, n - 1);
  while (edges.size() < total) {
    const std::uint32_t u = any_node(rng);
    const double r = unit(rng);
    std::uint32_t v;
    if (r < p.p_in) {
      v = pick(members[data.community[u]], rng);
    } else if (r < p.p_in + p.p_triadic && !adj[u].empty()) {
      const auto w = pick(adj[u], rng);
      v = pick(adj[w], rng);
    } else {
      v = any_node(rng);
    }
    if (u == v || !present.insert(key(u, v)).second) continue;
    edges.push_back({std::min(u, v), std::max(u, v), 1.0});
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  // Hidden edges accumulate: snapshot s hides the edges hidden before plus
  // missing_edges more drawn from snapshot s-1.
  std::vector<char> hidden(total, 0);
  for (std::uint32_t s = 0; s < p.snapshots; ++s) {
    const std::size_t prefix = p.initial_edges + std::size_t{s} * p.new_edges;
    if (s > 0) {
      const std::size_t previous = prefix - p.new_edges;
      std::vector<std::size_t> visible;
      for (std::size_t i = 0; i < previous; ++i) {
        if (!hidden[i]) visible.push_back(i);
      }
      std::shuffle(visible.begin(), visible.end(), rng);
      visible.resize(std::min(visible.size(), p.missing_edges));
      std::sort(visible.begin(), visible.end());
      for (auto i : visible) hidden[i] = 1;
      std::vector<SocialEdge> now_hidden;
      for (std::size_t i = 0; i < previous; ++i) {
        if (hidden[i]) now_hidden.push_back(edges[i]);
      }
      data.hidden.push_back(std::move(now_hidden));
      data.new_links.emplace_back(edges.begin() + previous, edges.begin() + prefix);
    }
    NetworkBuilder all(base), seen(base);
    for (std::size_t i = 0; i < prefix; ++i) {
      all.add_social_edge(edges[i].u, edges[i].v);
      if (!hidden[i]) seen.add_social_edge(edges[i].u, edges[i].v);
    }
    const auto label = synthetic_label(s);
    const int ordinal = static_cast<int>(s) + 1;
    data.backfilled.push_back({all.build(), label, ordinal});
    data.observed.push_back({seen.build(), label, ordinal});
  }
  return data;
}

SnapshotPair synthetic_pair(const SyntheticData& data, std::uint32_t train, std::uint32_t test) {
  if (train >= data.observed.size() || test >= data.observed.size()) {
    throw DomainError("synthetic snapshot index out of range");
  }
  return {train < test ? data.backfilled[train] : data.observed[train], data.backfilled[test]};
}

std::filesystem::path write_synthetic(const std::filesystem::path& dir, const SyntheticData& data) {
  std::filesystem::create_directories(dir);
  Manifest manifest;
  manifest.base_dir = dir;
  manifest.nodes_file = "nodes.tsv";
  write_node_list(dir / manifest.nodes_file, data.backfilled.front().network.social_names());
  write_attribute_links(dir / "attributes.tsv", data.backfilled.front().network);
  write_mutex_pairs(dir / "mutex.tsv", data.backfilled.front().network);
  for (std::size_t s = 0; s < data.observed.size(); ++s) {
    ManifestEntry e;
    e.label = data.observed[s].label;
    e.ordinal = data.observed[s].ordinal;
    e.edge_file = e.label + ".edges";
    e.all_edge_file = e.label + ".all.edges";
    e.attribute_file = "attributes.tsv";
    e.mutex_file = "mutex.tsv";
    write_social_edges(dir / e.edge_file, data.observed[s].network);
    write_social_edges(dir / e.all_edge_file, data.backfilled[s].network);
    manifest.entries.push_back(e);
  }
  const auto path = dir / "manifest.json";
  write_manifest(path, manifest);
  return path;
}

}  // namespace san
