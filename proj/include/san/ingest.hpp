#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "san/candidates.hpp"
#include "san/network.hpp"

namespace san {

// ---- raw records -----------------------------------------------------------

struct DirectedEdge {
  std::string source;
  std::string target;
};
using RawDirectedGraph = std::vector<DirectedEdge>;

// Canonical undirected edge, u < v lexicographically.
struct UndirectedEdge {
  std::string u;
  std::string v;
  friend auto operator<=>(const UndirectedEdge&, const UndirectedEdge&) = default;
};

struct AttributeRecord {
  std::string user;
  std::string attribute;
  LinkSign sign = LinkSign::kPositive;
};

struct NamedMutex {
  std::string a;
  std::string b;
};

// Tab-separated readers. Blank lines and lines starting with '#' are
// skipped; anything else malformed raises ParseError with the line number.
RawDirectedGraph read_edges(std::istream& in, const std::string& source_name);
std::vector<AttributeRecord> read_attribute_records(std::istream& in, const std::string& source_name);
std::vector<NamedMutex> read_mutex_pairs(std::istream& in, const std::string& source_name);
std::vector<std::string> read_node_list(std::istream& in, const std::string& source_name);

RawDirectedGraph read_edges(const std::filesystem::path& path);
std::vector<AttributeRecord> read_attribute_records(const std::filesystem::path& path);
std::vector<NamedMutex> read_mutex_pairs(const std::filesystem::path& path);
std::vector<std::string> read_node_list(const std::filesystem::path& path);

// Treats each line as an undirected edge; drops self-loops and duplicates.
std::vector<UndirectedEdge> as_undirected(const RawDirectedGraph& edges);

// Keeps (u, v) iff both (u, v) and (v, u) were present.
std::vector<UndirectedEdge> mutualize(const RawDirectedGraph& raw);

// ---- vocabulary and network assembly ---------------------------------------

struct AttributeVocabulary {
  std::vector<std::string> names;      // id -> name
  std::vector<std::size_t> frequency;  // id -> distinct positive users
  std::unordered_map<std::string, std::uint32_t> index;

  std::optional<std::uint32_t> find(const std::string& name) const;
};

// Attributes held positively by at least min_freq distinct users. Ids run by
// descending frequency, ties broken lexicographically.
AttributeVocabulary build_vocabulary(const std::vector<AttributeRecord>& records, int min_freq);

// Network over a fixed user universe. Edges, records and mutex pairs that
// mention users or attributes outside the universe are ignored.
SocialAttributeNetwork assemble_network(const std::vector<std::string>& users,
                                        const std::vector<std::string>& attributes,
                                        const std::vector<UndirectedEdge>& edges,
                                        const std::vector<AttributeRecord>& records,
                                        const std::vector<NamedMutex>& mutex);

// Users with at least k positive attributes, restricted to the largest
// connected component of their social graph (ties go to the component
// holding the lowest index). Attribute nodes are kept as they are.
SocialAttributeNetwork select_core(const SocialAttributeNetwork& network, int k);

// Restriction of a network to a subset of its users, renumbered in the given
// order. Social links leaving the subset are dropped.
SocialAttributeNetwork induced_subnetwork(const SocialAttributeNetwork& network,
                                          const std::vector<std::uint32_t>& users);

// Drops attribute nodes that have no positive link.
SocialAttributeNetwork drop_unused_attributes(const SocialAttributeNetwork& network);

// later's social links united with earlier's; attribute links untouched.
Snapshot backfill_missing_links(const Snapshot& earlier, const Snapshot& later);

// ---- labels ----------------------------------------------------------------

enum class NegativeMode { kSampled, kExhaustive };

struct LabelOptions {
  NegativeMode negatives = NegativeMode::kSampled;
  double negative_ratio = 10.0;  // sampled negatives per positive (any-hop scopes)
  std::uint64_t seed = 0;
};

// Positives are social links of test missing from train (new links when
// train precedes test, missing links otherwise); negatives are pairs linked
// in neither. Hop2Cat1 restricts both classes to unlinked pairs with a common
// social neighbor in train; the any-hop scopes sample or enumerate negatives.
CandidateSet extract_labels(const Snapshot& train, const Snapshot& test, Task task, Scope scope,
                            const LabelOptions& options = {});

struct AttributeRemoval {
  SocialAttributeNetwork network;
  std::vector<AttributeLink> removed_positive;   // inference targets
  std::vector<AttributeLink> retained_negative;  // evaluation negatives
};

AttributeRemoval remove_user_attributes(const SocialAttributeNetwork& network,
                                        const std::vector<std::uint32_t>& users);

// round(fraction * n) distinct users, sorted.
std::vector<std::uint32_t> sample_users(std::uint32_t n, double fraction, std::uint64_t seed);

// ---- manifests and snapshot files ------------------------------------------

struct ManifestEntry {
  std::string label;
  int ordinal = 0;
  std::string edge_file;
  std::string all_edge_file;  // backfilled edges; optional
  std::string attribute_file;
  std::string mutex_file;     // optional
};

struct Manifest {
  std::filesystem::path base_dir;
  std::string nodes_file;  // optional fixed user universe
  std::vector<ManifestEntry> entries;

  const ManifestEntry& entry(const std::string& label) const;
};

// Accepts either a JSON array of entries or {"nodes_file": ..., "snapshots": [...]}.
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

enum class EdgeChoice { kObserved, kBackfilled };

// Loads snapshots of one manifest over a shared node universe: the nodes
// file when present, else users in order of first appearance across files
// sorted by ordinal. Attribute names likewise.
class SnapshotStore {
 public:
  explicit SnapshotStore(Manifest manifest);

  Snapshot load(const std::string& label, EdgeChoice edges = EdgeChoice::kObserved) const;
  const Manifest& manifest() const { return manifest_; }
  const std::vector<std::string>& users() const { return users_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

 private:
  std::filesystem::path resolve(const std::string& file) const;

  Manifest manifest_;
  std::vector<std::string> users_;
  std::vector<std::string> attributes_;
};

void write_social_edges(const std::filesystem::path& path, const SocialAttributeNetwork& network);
void write_attribute_links(const std::filesystem::path& path, const SocialAttributeNetwork& network);
void write_mutex_pairs(const std::filesystem::path& path, const SocialAttributeNetwork& network);
void write_node_list(const std::filesystem::path& path, const std::vector<std::string>& names);

}  // namespace san
