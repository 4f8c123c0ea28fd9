#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace san {

enum class NodeKind : std::uint8_t { kSocial, kAttribute };

// A node of the social-attribute network. Social indices live in [0, N),
// attribute indices in [0, M); the two ranges are independent.
struct NodeRef {
  NodeKind kind = NodeKind::kSocial;
  std::uint32_t index = 0;

  static constexpr NodeRef social(std::uint32_t i) { return {NodeKind::kSocial, i}; }
  static constexpr NodeRef attribute(std::uint32_t i) { return {NodeKind::kAttribute, i}; }
  constexpr bool is_social() const { return kind == NodeKind::kSocial; }

  friend constexpr auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

std::string to_string(const NodeRef& node);

enum class LinkSign : std::int8_t { kPositive = 1, kNegative = -1 };
enum class Restrict : std::uint8_t { kAll, kSocialOnly };

struct SocialEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 1.0;
};

struct AttributeLink {
  std::uint32_t user = 0;
  std::uint32_t attribute = 0;
  LinkSign sign = LinkSign::kPositive;
  double weight = 1.0;
};

// Unordered pair of mutually exclusive attributes, stored with a < b.
struct MutexPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  friend auto operator<=>(const MutexPair&, const MutexPair&) = default;
};

// Compressed sparse rows. Row i occupies [offsets[i], offsets[i+1]).
struct Adjacency {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;

  std::size_t rows() const { return offsets.size() - 1; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {targets.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  std::span<const double> row_weights(std::size_t i) const {
    return {weights.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  std::size_t row_size(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
};

// Everything a network is made of, with no invariants enforced. Used for
// deserialization and for injecting corrupt data in tests.
struct RawNetworkData {
  std::uint32_t num_social = 0;
  std::uint32_t num_attributes = 0;
  Adjacency social;  // must have num_social rows; symmetry is not checked
  std::vector<AttributeLink> attribute_links;
  std::vector<MutexPair> mutex_pairs;
  std::vector<double> social_node_weights;     // empty means all 1.0
  std::vector<double> attribute_node_weights;  // empty means all 1.0
  std::vector<std::string> social_names;       // empty means generated
  std::vector<std::string> attribute_names;
};

// Immutable weighted social-attribute network: an undirected social graph
// over N users, signed links from users to M attribute nodes, and a set of
// mutually exclusive attribute pairs. Mutex pairs are constraints only and
// never show up as neighbors.
class SocialAttributeNetwork {
 public:
  SocialAttributeNetwork() = default;

  // Builds the query structures without checking any invariant.
  static SocialAttributeNetwork from_raw_unchecked(RawNetworkData raw);

  std::uint32_t num_social() const { return num_social_; }
  std::uint32_t num_attributes() const { return num_attributes_; }
  std::size_t num_social_edges() const { return social_.targets.size() / 2; }
  std::size_t num_attribute_links(LinkSign sign) const;

  bool contains(const NodeRef& node) const;

  std::span<const std::uint32_t> social_neighbors(std::uint32_t u) const { return social_.row(u); }
  std::span<const double> social_weights(std::uint32_t u) const { return social_.row_weights(u); }

  // Attribute nodes linked to user u with the given sign.
  std::span<const std::uint32_t> attributes_of(std::uint32_t u, LinkSign sign) const;
  std::span<const double> attribute_weights_of(std::uint32_t u, LinkSign sign) const;
  // Users linked to attribute a with the given sign.
  std::span<const std::uint32_t> members_of(std::uint32_t a, LinkSign sign) const;
  std::span<const double> member_weights_of(std::uint32_t a, LinkSign sign) const;

  std::span<const std::uint32_t> mutex_partners(std::uint32_t a) const { return mutex_adj_.row(a); }
  const std::vector<MutexPair>& mutex_pairs() const { return mutex_pairs_; }
  bool is_mutex(std::uint32_t a, std::uint32_t b) const;

  bool has_social_edge(std::uint32_t u, std::uint32_t v) const;
  double social_edge_weight(std::uint32_t u, std::uint32_t v) const;  // 0 when absent
  std::optional<LinkSign> attribute_sign(std::uint32_t u, std::uint32_t a) const;

  double node_weight(const NodeRef& node) const;

  // Gamma sets. For sign=Positive and restrict=All this is every node joined
  // to `node` by a social link or a positive attribute link. SocialOnly keeps
  // the social nodes among them. Negative sign swaps positive attribute links
  // for negative ones (social links count for both signs).
  std::vector<NodeRef> neighbors(const NodeRef& node, LinkSign sign, Restrict restrict) const;
  std::size_t degree(const NodeRef& node, LinkSign sign, Restrict restrict) const;

  std::vector<SocialEdge> social_edges() const;  // u < v
  std::vector<AttributeLink> attribute_links() const;

  const std::string& social_name(std::uint32_t u) const { return social_names_[u]; }
  const std::string& attribute_name(std::uint32_t a) const { return attribute_names_[a]; }
  const std::vector<std::string>& social_names() const { return social_names_; }
  const std::vector<std::string>& attribute_names() const { return attribute_names_; }
  std::optional<std::uint32_t> find_social(const std::string& name) const;
  std::optional<std::uint32_t> find_attribute(const std::string& name) const;
  std::string node_name(const NodeRef& node) const;

  // Same node counts and the same external names.
  bool same_universe(const SocialAttributeNetwork& other) const;

  RawNetworkData to_raw() const;

  const Adjacency& social_adjacency() const { return social_; }

 private:
  void require(const NodeRef& node) const;

  std::uint32_t num_social_ = 0;
  std::uint32_t num_attributes_ = 0;
  Adjacency social_;
  Adjacency user_pos_, user_neg_;      // user -> attributes
  Adjacency attr_pos_, attr_neg_;      // attribute -> users
  Adjacency mutex_adj_;                // attribute -> mutex partners (no weights)
  std::vector<MutexPair> mutex_pairs_;
  std::vector<double> social_node_weights_;
  std::vector<double> attribute_node_weights_;
  std::vector<std::string> social_names_;
  std::vector<std::string> attribute_names_;
  std::unordered_map<std::string, std::uint32_t> social_index_;
  std::unordered_map<std::string, std::uint32_t> attribute_index_;
};

// Collects links and produces a checked, frozen network. Repeated links keep
// the last weight given.
class NetworkBuilder {
 public:
  NetworkBuilder(std::uint32_t num_social, std::uint32_t num_attributes);
  explicit NetworkBuilder(const SocialAttributeNetwork& network);

  NetworkBuilder& add_social_edge(std::uint32_t u, std::uint32_t v, double weight = 1.0);
  NetworkBuilder& add_attribute_link(std::uint32_t user, std::uint32_t attribute,
                                     LinkSign sign = LinkSign::kPositive, double weight = 1.0);
  NetworkBuilder& add_mutex(std::uint32_t a, std::uint32_t b);
  NetworkBuilder& set_node_weight(const NodeRef& node, double weight);
  NetworkBuilder& set_social_names(std::vector<std::string> names);
  NetworkBuilder& set_attribute_names(std::vector<std::string> names);

  // Drops every attribute link (both signs) of the given user.
  NetworkBuilder& remove_attribute_links(std::uint32_t user);

  // Throws DomainError naming the first violations when an invariant fails.
  SocialAttributeNetwork build() const;

 private:
  RawNetworkData assemble() const;

  std::uint32_t num_social_;
  std::uint32_t num_attributes_;
  std::vector<SocialEdge> social_edges_;
  std::vector<AttributeLink> attribute_links_;
  std::vector<MutexPair> mutex_pairs_;
  std::vector<double> social_node_weights_;
  std::vector<double> attribute_node_weights_;
  std::vector<std::string> social_names_;
  std::vector<std::string> attribute_names_;
};

struct Violation {
  enum class Kind {
    kIndexOutOfRange,
    kSelfLoop,
    kAsymmetric,
    kDuplicateLink,
    kSignConflict,
    kMutexViolation,
    kBadWeight,
  };
  Kind kind;
  std::vector<NodeRef> nodes;
  std::string message;
};

// Every invariant violation in the network. Empty iff the network is valid.
std::vector<Violation> validate(const SocialAttributeNetwork& network);

// Same social structure, attribute nodes kept but unlinked, no mutex pairs,
// every weight reset to 1.0.
SocialAttributeNetwork project_social(const SocialAttributeNetwork& network);

struct Snapshot {
  SocialAttributeNetwork network;
  std::string label;
  int ordinal = 0;
};

}  // namespace san
