#include "san/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "san/errors.hpp"
#include "san/parallel.hpp"

namespace san {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

// Calls f(fields, line_number) for every non-blank, non-comment line.
template <typename F>
void for_each_record(std::istream& in, F&& f) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    f(split_tabs(line), number);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

LinkSign parse_sign(const std::string& text, const std::string& source, std::size_t line) {
  if (text == "1" || text == "+1" || text == "+") return LinkSign::kPositive;
  if (text == "-1" || text == "-") return LinkSign::kNegative;
  throw ParseError(source, line, "bad sign '" + text + "'");
}

}  // namespace

RawDirectedGraph read_edges(std::istream& in, const std::string& source_name) {
  RawDirectedGraph edges;
  for_each_record(in, [&](const std::vector<std::string>& f, std::size_t line) {
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError(source_name, line, "expected 'u<TAB>v'");
    }
    edges.push_back({f[0], f[1]});
  });
  return edges;
}

std::vector<AttributeRecord> read_attribute_records(std::istream& in,
                                                    const std::string& source_name) {
  std::vector<AttributeRecord> records;
  for_each_record(in, [&](const std::vector<std::string>& f, std::size_t line) {
    if ((f.size() != 2 && f.size() != 3) || f[0].empty() || f[1].empty()) {
      throw ParseError(source_name, line, "expected 'user<TAB>attribute[<TAB>sign]'");
    }
    LinkSign sign = f.size() == 3 ? parse_sign(f[2], source_name, line) : LinkSign::kPositive;
    records.push_back({f[0], f[1], sign});
  });
  return records;
}

std::vector<NamedMutex> read_mutex_pairs(std::istream& in, const std::string& source_name) {
  std::vector<NamedMutex> pairs;
  for_each_record(in, [&](const std::vector<std::string>& f, std::size_t line) {
    if (f.size() != 2 || f[0].empty() || f[1].empty() || f[0] == f[1]) {
      throw ParseError(source_name, line, "expected 'attribute<TAB>attribute'");
    }
    pairs.push_back({f[0], f[1]});
  });
  return pairs;
}

std::vector<std::string> read_node_list(std::istream& in, const std::string& source_name) {
  std::vector<std::string> nodes;
  for_each_record(in, [&](const std::vector<std::string>& f, std::size_t line) {
    if (f.size() != 1 || f[0].empty()) throw ParseError(source_name, line, "expected one node id");
    nodes.push_back(f[0]);
  });
  return nodes;
}

RawDirectedGraph read_edges(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edges(in, path.string());
}

std::vector<AttributeRecord> read_attribute_records(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_attribute_records(in, path.string());
}

std::vector<NamedMutex> read_mutex_pairs(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_mutex_pairs(in, path.string());
}

std::vector<std::string> read_node_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_node_list(in, path.string());
}

std::vector<UndirectedEdge> as_undirected(const RawDirectedGraph& edges) {
  std::vector<UndirectedEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.source == e.target) continue;
    out.push_back(e.source < e.target ? UndirectedEdge{e.source, e.target}
                                      : UndirectedEdge{e.target, e.source});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<UndirectedEdge> mutualize(const RawDirectedGraph& raw) {
  // Count distinct directions per unordered pair.
  std::map<UndirectedEdge, int> directions;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : raw) {
    if (e.source == e.target) continue;
    if (!seen.emplace(e.source, e.target).second) continue;
    auto key = e.source < e.target ? UndirectedEdge{e.source, e.target}
                                   : UndirectedEdge{e.target, e.source};
    ++directions[key];
  }
  std::vector<UndirectedEdge> out;
  for (const auto& [edge, count] : directions) {
    if (count == 2) out.push_back(edge);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::uint32_t> AttributeVocabulary::find(const std::string& name) const {
  auto it = index.find(name);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

AttributeVocabulary build_vocabulary(const std::vector<AttributeRecord>& records, int min_freq) {
  if (min_freq < 1) throw DomainError("min_freq must be at least 1");
  std::map<std::string, std::set<std::string>> holders;
  for (const auto& r : records) {
    if (r.sign == LinkSign::kPositive) holders[r.attribute].insert(r.user);
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [name, users] : holders) {
    if (users.size() >= static_cast<std::size_t>(min_freq)) kept.emplace_back(name, users.size());
  }
  std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  AttributeVocabulary vocab;
  for (const auto& [name, freq] : kept) {
    vocab.index.emplace(name, static_cast<std::uint32_t>(vocab.names.size()));
    vocab.names.push_back(name);
    vocab.frequency.push_back(freq);
  }
  return vocab;
}

SocialAttributeNetwork assemble_network(const std::vector<std::string>& users,
                                        const std::vector<std::string>& attributes,
                                        const std::vector<UndirectedEdge>& edges,
                                        const std::vector<AttributeRecord>& records,
                                        const std::vector<NamedMutex>& mutex) {
  std::unordered_map<std::string, std::uint32_t> user_index, attr_index;
  for (std::uint32_t i = 0; i < users.size(); ++i) {
    if (!user_index.emplace(users[i], i).second) throw DomainError("duplicate user " + users[i]);
  }
  for (std::uint32_t i = 0; i < attributes.size(); ++i) {
    if (!attr_index.emplace(attributes[i], i).second) {
      throw DomainError("duplicate attribute " + attributes[i]);
    }
  }
  NetworkBuilder builder(static_cast<std::uint32_t>(users.size()),
                         static_cast<std::uint32_t>(attributes.size()));
  builder.set_social_names(users);
  builder.set_attribute_names(attributes);
  for (const auto& e : edges) {
    auto u = user_index.find(e.u);
    auto v = user_index.find(e.v);
    if (u == user_index.end() || v == user_index.end() || u->second == v->second) continue;
    builder.add_social_edge(u->second, v->second);
  }
  for (const auto& r : records) {
    auto u = user_index.find(r.user);
    auto a = attr_index.find(r.attribute);
    if (u == user_index.end() || a == attr_index.end()) continue;
    builder.add_attribute_link(u->second, a->second, r.sign);
  }
  for (const auto& m : mutex) {
    auto a = attr_index.find(m.a);
    auto b = attr_index.find(m.b);
    if (a == attr_index.end() || b == attr_index.end()) continue;
    builder.add_mutex(a->second, b->second);
  }
  return builder.build();
}

SocialAttributeNetwork induced_subnetwork(const SocialAttributeNetwork& network,
                                          const std::vector<std::uint32_t>& users) {
  const std::uint32_t absent = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> remap(network.num_social(), absent);
  for (std::uint32_t i = 0; i < users.size(); ++i) remap[users[i]] = i;

  NetworkBuilder builder(static_cast<std::uint32_t>(users.size()), network.num_attributes());
  std::vector<std::string> names;
  names.reserve(users.size());
  for (auto u : users) names.push_back(network.social_name(u));
  builder.set_social_names(std::move(names));
  builder.set_attribute_names(network.attribute_names());
  for (const auto& e : network.social_edges()) {
    if (remap[e.u] != absent && remap[e.v] != absent) builder.add_social_edge(remap[e.u], remap[e.v], e.weight);
  }
  for (const auto& l : network.attribute_links()) {
    if (remap[l.user] != absent) builder.add_attribute_link(remap[l.user], l.attribute, l.sign, l.weight);
  }
  for (const auto& m : network.mutex_pairs()) builder.add_mutex(m.a, m.b);
  for (std::uint32_t i = 0; i < users.size(); ++i) {
    builder.set_node_weight(NodeRef::social(i), network.node_weight(NodeRef::social(users[i])));
  }
  for (std::uint32_t a = 0; a < network.num_attributes(); ++a) {
    builder.set_node_weight(NodeRef::attribute(a), network.node_weight(NodeRef::attribute(a)));
  }
  return builder.build();
}

SocialAttributeNetwork select_core(const SocialAttributeNetwork& network, int k) {
  if (k < 0) throw DomainError("k must be non-negative");
  const std::uint32_t n = network.num_social();
  std::vector<char> alive(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) {
    alive[u] = network.attributes_of(u, LinkSign::kPositive).size() >= static_cast<std::size_t>(k);
  }
  // Attribute counts do not depend on which other users survive, so one
  // filtering pass already reaches the fixpoint; the component step follows.
  std::vector<std::int64_t> component(n, -1);
  std::vector<std::uint32_t> best;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (!alive[start] || component[start] >= 0) continue;
    std::vector<std::uint32_t> members{start};
    component[start] = start;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (auto v : network.social_neighbors(members[head])) {
        if (alive[v] && component[v] < 0) {
          component[v] = start;
          members.push_back(v);
        }
      }
    }
    if (members.size() > best.size()) best = std::move(members);
  }
  if (best.empty()) {
    throw EmptyCoreError("no user has at least " + std::to_string(k) + " positive attributes");
  }
  std::sort(best.begin(), best.end());
  return induced_subnetwork(network, best);
}

SocialAttributeNetwork drop_unused_attributes(const SocialAttributeNetwork& network) {
  std::vector<std::uint32_t> remap(network.num_attributes(), std::numeric_limits<std::uint32_t>::max());
  std::vector<std::string> names;
  for (std::uint32_t a = 0; a < network.num_attributes(); ++a) {
    if (!network.members_of(a, LinkSign::kPositive).empty()) {
      remap[a] = static_cast<std::uint32_t>(names.size());
      names.push_back(network.attribute_name(a));
    }
  }
  const auto absent = std::numeric_limits<std::uint32_t>::max();
  NetworkBuilder builder(network.num_social(), static_cast<std::uint32_t>(names.size()));
  builder.set_social_names(network.social_names());
  builder.set_attribute_names(names);
  for (const auto& e : network.social_edges()) builder.add_social_edge(e.u, e.v, e.weight);
  for (const auto& l : network.attribute_links()) {
    if (remap[l.attribute] != absent) builder.add_attribute_link(l.user, remap[l.attribute], l.sign, l.weight);
  }
  for (const auto& m : network.mutex_pairs()) {
    if (remap[m.a] != absent && remap[m.b] != absent) builder.add_mutex(remap[m.a], remap[m.b]);
  }
  for (std::uint32_t u = 0; u < network.num_social(); ++u) {
    builder.set_node_weight(NodeRef::social(u), network.node_weight(NodeRef::social(u)));
  }
  for (std::uint32_t a = 0; a < network.num_attributes(); ++a) {
    if (remap[a] != absent) {
      builder.set_node_weight(NodeRef::attribute(remap[a]), network.node_weight(NodeRef::attribute(a)));
    }
  }
  return builder.build();
}

Snapshot backfill_missing_links(const Snapshot& earlier, const Snapshot& later) {
  if (!earlier.network.same_universe(later.network)) {
    throw DomainError("backfill: snapshots " + earlier.label + " and " + later.label +
                      " have different node universes");
  }
  if (earlier.ordinal > later.ordinal) {
    throw DomainError("backfill: " + earlier.label + " is not earlier than " + later.label);
  }
  NetworkBuilder builder(later.network);
  for (const auto& e : earlier.network.social_edges()) {
    if (!later.network.has_social_edge(e.u, e.v)) builder.add_social_edge(e.u, e.v, e.weight);
  }
  return {builder.build(), later.label, later.ordinal};
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t pair_key(std::uint32_t u, std::uint32_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

CandidateSet extract_labels(const Snapshot& train, const Snapshot& test, Task task, Scope scope,
                            const LabelOptions& options) {
  if (task != Task::kSocialLink) {
    throw DomainError("extract_labels handles social links; use remove_user_attributes for attributes");
  }
  const auto& g_train = train.network;
  const auto& g_test = test.network;
  if (!g_train.same_universe(g_test)) {
    throw DomainError("snapshots " + train.label + " and " + test.label +
                      " have different node universes");
  }
  const std::uint32_t n = g_train.num_social();
  CandidateSet set;
  set.task = task;
  set.scope = scope;

  if (scope == Scope::kHop2Cat1) {
    std::vector<std::vector<CandidatePair>> per_source(n);
    parallel_for(n, [&](std::size_t source) {
      const auto u = static_cast<std::uint32_t>(source);
      std::vector<std::uint32_t> reach;
      for (auto t : g_train.social_neighbors(u)) {
        for (auto v : g_train.social_neighbors(t)) {
          if (v > u && !g_train.has_social_edge(u, v)) reach.push_back(v);
        }
      }
      std::sort(reach.begin(), reach.end());
      reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
      auto& out = per_source[source];
      for (auto v : reach) {
        out.push_back({NodeRef::social(u), NodeRef::social(v),
                       g_test.has_social_edge(u, v) ? Label::kPositive : Label::kNegative});
      }
    });
    for (auto& chunk : per_source) set.pairs.insert(set.pairs.end(), chunk.begin(), chunk.end());
    return set;
  }

  // Any-hop scopes.
  for (const auto& e : g_test.social_edges()) {
    if (g_train.has_social_edge(e.u, e.v)) continue;
    if (scope == Scope::kCategory1 &&
        (g_train.social_neighbors(e.u).empty() || g_train.social_neighbors(e.v).empty())) {
      continue;
    }
    set.pairs.push_back({NodeRef::social(e.u), NodeRef::social(e.v), Label::kPositive});
  }
  auto is_negative = [&](std::uint32_t u, std::uint32_t v) {
    return u != v && !g_train.has_social_edge(u, v) && !g_test.has_social_edge(u, v);
  };

  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
  std::uint64_t linked = 0;
  {
    std::unordered_set<std::uint64_t> union_edges;
    for (const auto& e : g_train.social_edges()) union_edges.insert(pair_key(e.u, e.v));
    for (const auto& e : g_test.social_edges()) union_edges.insert(pair_key(e.u, e.v));
    linked = union_edges.size();
  }
  const std::uint64_t available = total_pairs - linked;
  const auto wanted = static_cast<std::uint64_t>(
      std::llround(options.negative_ratio * static_cast<double>(set.pairs.size())));

  if (options.negatives == NegativeMode::kExhaustive || wanted >= available) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (is_negative(u, v)) set.pairs.push_back({NodeRef::social(u), NodeRef::social(v), Label::kNegative});
      }
    }
    return set;
  }

  set.negatives_sampled = true;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < wanted) {
    std::uint32_t u = pick(rng), v = pick(rng);
    if (!is_negative(u, v)) continue;
    chosen.insert(pair_key(u, v));
  }
  for (auto key : chosen) {
    set.pairs.push_back({NodeRef::social(static_cast<std::uint32_t>(key >> 32)),
                         NodeRef::social(static_cast<std::uint32_t>(key & 0xffffffffu)),
                         Label::kNegative});
  }
  return set;
}

AttributeRemoval remove_user_attributes(const SocialAttributeNetwork& network,
                                        const std::vector<std::uint32_t>& users) {
  AttributeRemoval result;
  NetworkBuilder builder(network);
  std::vector<std::uint32_t> sorted = users;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto u : sorted) {
    if (u >= network.num_social()) throw DomainError("user " + std::to_string(u) + " out of range");
    auto pos = network.attributes_of(u, LinkSign::kPositive);
    auto pw = network.attribute_weights_of(u, LinkSign::kPositive);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      result.removed_positive.push_back({u, pos[i], LinkSign::kPositive, pw[i]});
    }
    auto neg = network.attributes_of(u, LinkSign::kNegative);
    auto nw = network.attribute_weights_of(u, LinkSign::kNegative);
    for (std::size_t i = 0; i < neg.size(); ++i) {
      result.retained_negative.push_back({u, neg[i], LinkSign::kNegative, nw[i]});
    }
    builder.remove_attribute_links(u);
  }
  result.network = sorted.empty() ? network : builder.build();
  return result;
}

std::vector<std::uint32_t> sample_users(std::uint32_t n, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DomainError("sample fraction must be in [0, 1]");
  const auto count = static_cast<std::uint32_t>(std::llround(fraction * n));
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates.
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::uint32_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

// ---------------------------------------------------------------------------

const ManifestEntry& Manifest::entry(const std::string& label) const {
  for (const auto& e : entries) {
    if (e.label == label) return e;
  }
  throw DomainError("snapshot '" + label + "' not in manifest");
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open manifest");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  Manifest m;
  m.base_dir = path.parent_path();
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    m.nodes_file = doc.value("nodes_file", "");
    if (!doc.contains("snapshots")) throw ParseError(path.string(), 0, "missing 'snapshots'");
    list = &doc.at("snapshots");
  }
  if (!list->is_array()) throw ParseError(path.string(), 0, "snapshots must be an array");
  std::set<std::string> labels;
  for (const auto& item : *list) {
    try {
      ManifestEntry e;
      e.label = item.at("label").get<std::string>();
      e.ordinal = item.at("ordinal").get<int>();
      e.edge_file = item.at("edge_file").get<std::string>();
      e.all_edge_file = item.value("all_edge_file", "");
      e.attribute_file = item.value("attribute_file", "");
      e.mutex_file = item.value("mutex_file", "");
      if (!labels.insert(e.label).second) {
        throw ParseError(path.string(), 0, "duplicate snapshot label " + e.label);
      }
      m.entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(path.string(), 0, ex.what());
    }
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.ordinal < b.ordinal; });
  for (std::size_t i = 1; i < m.entries.size(); ++i) {
    if (m.entries[i].ordinal == m.entries[i - 1].ordinal) {
      throw ParseError(path.string(), 0, "snapshot ordinals must be distinct");
    }
  }
  return m;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : manifest.entries) {
    nlohmann::json item = {{"label", e.label}, {"ordinal", e.ordinal}, {"edge_file", e.edge_file}};
    if (!e.all_edge_file.empty()) item["all_edge_file"] = e.all_edge_file;
    if (!e.attribute_file.empty()) item["attribute_file"] = e.attribute_file;
    if (!e.mutex_file.empty()) item["mutex_file"] = e.mutex_file;
    list.push_back(item);
  }
  nlohmann::json doc;
  if (!manifest.nodes_file.empty()) doc["nodes_file"] = manifest.nodes_file;
  doc["snapshots"] = list;
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

SnapshotStore::SnapshotStore(Manifest manifest) : manifest_(std::move(manifest)) {
  std::unordered_set<std::string> seen_users, seen_attrs;
  auto add_user = [&](const std::string& u) {
    if (seen_users.insert(u).second) users_.push_back(u);
  };
  auto add_attr = [&](const std::string& a) {
    if (seen_attrs.insert(a).second) attributes_.push_back(a);
  };
  if (!manifest_.nodes_file.empty()) {
    for (const auto& u : read_node_list(resolve(manifest_.nodes_file))) add_user(u);
  }
  const bool fixed_users = !manifest_.nodes_file.empty();
  for (const auto& e : manifest_.entries) {
    if (!fixed_users) {
      for (const auto& file : {e.edge_file, e.all_edge_file}) {
        if (file.empty()) continue;
        for (const auto& edge : read_edges(resolve(file))) {
          add_user(edge.source);
          add_user(edge.target);
        }
      }
    }
    if (!e.attribute_file.empty()) {
      for (const auto& r : read_attribute_records(resolve(e.attribute_file))) {
        if (!fixed_users) add_user(r.user);
        add_attr(r.attribute);
      }
    }
    if (!e.mutex_file.empty()) {
      for (const auto& m : read_mutex_pairs(resolve(e.mutex_file))) {
        add_attr(m.a);
        add_attr(m.b);
      }
    }
  }
}

std::filesystem::path SnapshotStore::resolve(const std::string& file) const {
  std::filesystem::path p(file);
  return p.is_absolute() ? p : manifest_.base_dir / p;
}

Snapshot SnapshotStore::load(const std::string& label, EdgeChoice edges) const {
  const auto& e = manifest_.entry(label);
  const std::string& edge_file =
      edges == EdgeChoice::kBackfilled && !e.all_edge_file.empty() ? e.all_edge_file : e.edge_file;
  auto undirected = as_undirected(read_edges(resolve(edge_file)));
  std::vector<AttributeRecord> records;
  if (!e.attribute_file.empty()) records = read_attribute_records(resolve(e.attribute_file));
  std::vector<NamedMutex> mutex;
  if (!e.mutex_file.empty()) mutex = read_mutex_pairs(resolve(e.mutex_file));
  return {assemble_network(users_, attributes_, undirected, records, mutex), e.label, e.ordinal};
}

void write_social_edges(const std::filesystem::path& path, const SocialAttributeNetwork& network) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  for (const auto& e : network.social_edges()) {
    out << network.social_name(e.u) << '\t' << network.social_name(e.v) << '\n';
  }
}

void write_attribute_links(const std::filesystem::path& path, const SocialAttributeNetwork& network) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  for (const auto& l : network.attribute_links()) {
    out << network.social_name(l.user) << '\t' << network.attribute_name(l.attribute) << '\t'
        << (l.sign == LinkSign::kPositive ? "1" : "-1") << '\n';
  }
}

void write_mutex_pairs(const std::filesystem::path& path, const SocialAttributeNetwork& network) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  for (const auto& m : network.mutex_pairs()) {
    out << network.attribute_name(m.a) << '\t' << network.attribute_name(m.b) << '\n';
  }
}

void write_node_list(const std::filesystem::path& path, const std::vector<std::string>& names) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  for (const auto& n : names) out << n << '\n';
}

}  // namespace san
