#include "san/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "san/errors.hpp"

namespace san {

std::string to_string(const NodeRef& node) {
  return (node.is_social() ? "social:" : "attribute:") + std::to_string(node.index);
}

namespace {

// Builds CSR from (row, col, weight) triplets; rows sorted by column,
// duplicates preserved.
struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  double weight;
};

Adjacency to_csr(std::size_t rows, std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  Adjacency adj;
  adj.offsets.assign(rows + 1, 0);
  adj.targets.reserve(triplets.size());
  adj.weights.reserve(triplets.size());
  for (const auto& t : triplets) {
    ++adj.offsets[t.row + 1];
    adj.targets.push_back(t.col);
    adj.weights.push_back(t.weight);
  }
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  return adj;
}

bool sorted_contains(std::span<const std::uint32_t> row, std::uint32_t x) {
  return std::binary_search(row.begin(), row.end(), x);
}

std::vector<std::string> default_names(const std::string& prefix, std::uint32_t n) {
  std::vector<std::string> names(n);
  for (std::uint32_t i = 0; i < n; ++i) names[i] = prefix + std::to_string(i);
  return names;
}

}  // namespace

SocialAttributeNetwork SocialAttributeNetwork::from_raw_unchecked(RawNetworkData raw) {
  SocialAttributeNetwork net;
  net.num_social_ = raw.num_social;
  net.num_attributes_ = raw.num_attributes;
  net.social_ = std::move(raw.social);
  if (net.social_.offsets.size() != static_cast<std::size_t>(raw.num_social) + 1) {
    throw DomainError("social adjacency has " + std::to_string(net.social_.rows()) +
                      " rows, expected " + std::to_string(raw.num_social));
  }

  std::vector<Triplet> up, un, ap, an;
  for (const auto& link : raw.attribute_links) {
    if (link.user >= raw.num_social || link.attribute >= raw.num_attributes) {
      throw DomainError("attribute link (" + std::to_string(link.user) + ", " +
                        std::to_string(link.attribute) + ") out of range");
    }
    auto& forward = link.sign == LinkSign::kPositive ? up : un;
    auto& backward = link.sign == LinkSign::kPositive ? ap : an;
    forward.push_back({link.user, link.attribute, link.weight});
    backward.push_back({link.attribute, link.user, link.weight});
  }
  net.user_pos_ = to_csr(raw.num_social, std::move(up));
  net.user_neg_ = to_csr(raw.num_social, std::move(un));
  net.attr_pos_ = to_csr(raw.num_attributes, std::move(ap));
  net.attr_neg_ = to_csr(raw.num_attributes, std::move(an));

  std::vector<Triplet> mx;
  for (auto pair : raw.mutex_pairs) {
    if (pair.a >= raw.num_attributes || pair.b >= raw.num_attributes) {
      throw DomainError("mutex pair out of range");
    }
    if (pair.a > pair.b) std::swap(pair.a, pair.b);
    net.mutex_pairs_.push_back(pair);
    mx.push_back({pair.a, pair.b, 1.0});
    mx.push_back({pair.b, pair.a, 1.0});
  }
  std::sort(net.mutex_pairs_.begin(), net.mutex_pairs_.end());
  net.mutex_adj_ = to_csr(raw.num_attributes, std::move(mx));

  net.social_node_weights_ = raw.social_node_weights.empty()
                                 ? std::vector<double>(raw.num_social, 1.0)
                                 : std::move(raw.social_node_weights);
  net.attribute_node_weights_ = raw.attribute_node_weights.empty()
                                    ? std::vector<double>(raw.num_attributes, 1.0)
                                    : std::move(raw.attribute_node_weights);
  if (net.social_node_weights_.size() != raw.num_social ||
      net.attribute_node_weights_.size() != raw.num_attributes) {
    throw DomainError("node weight vector size mismatch");
  }

  net.social_names_ = raw.social_names.empty() ? default_names("", raw.num_social)
                                               : std::move(raw.social_names);
  net.attribute_names_ = raw.attribute_names.empty() ? default_names("attr", raw.num_attributes)
                                                     : std::move(raw.attribute_names);
  if (net.social_names_.size() != raw.num_social ||
      net.attribute_names_.size() != raw.num_attributes) {
    throw DomainError("name vector size mismatch");
  }
  for (std::uint32_t i = 0; i < raw.num_social; ++i) net.social_index_.emplace(net.social_names_[i], i);
  for (std::uint32_t i = 0; i < raw.num_attributes; ++i) {
    net.attribute_index_.emplace(net.attribute_names_[i], i);
  }
  return net;
}

std::size_t SocialAttributeNetwork::num_attribute_links(LinkSign sign) const {
  return (sign == LinkSign::kPositive ? user_pos_ : user_neg_).targets.size();
}

bool SocialAttributeNetwork::contains(const NodeRef& node) const {
  return node.is_social() ? node.index < num_social_ : node.index < num_attributes_;
}

void SocialAttributeNetwork::require(const NodeRef& node) const {
  if (!contains(node)) throw DomainError("unknown node " + to_string(node));
}

std::span<const std::uint32_t> SocialAttributeNetwork::attributes_of(std::uint32_t u,
                                                                     LinkSign sign) const {
  return (sign == LinkSign::kPositive ? user_pos_ : user_neg_).row(u);
}

std::span<const double> SocialAttributeNetwork::attribute_weights_of(std::uint32_t u,
                                                                    LinkSign sign) const {
  return (sign == LinkSign::kPositive ? user_pos_ : user_neg_).row_weights(u);
}

std::span<const std::uint32_t> SocialAttributeNetwork::members_of(std::uint32_t a,
                                                                  LinkSign sign) const {
  return (sign == LinkSign::kPositive ? attr_pos_ : attr_neg_).row(a);
}

std::span<const double> SocialAttributeNetwork::member_weights_of(std::uint32_t a,
                                                                 LinkSign sign) const {
  return (sign == LinkSign::kPositive ? attr_pos_ : attr_neg_).row_weights(a);
}

bool SocialAttributeNetwork::is_mutex(std::uint32_t a, std::uint32_t b) const {
  return sorted_contains(mutex_adj_.row(a), b);
}

bool SocialAttributeNetwork::has_social_edge(std::uint32_t u, std::uint32_t v) const {
  return sorted_contains(social_.row(u), v);
}

double SocialAttributeNetwork::social_edge_weight(std::uint32_t u, std::uint32_t v) const {
  auto row = social_.row(u);
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return 0.0;
  return social_.row_weights(u)[static_cast<std::size_t>(it - row.begin())];
}

std::optional<LinkSign> SocialAttributeNetwork::attribute_sign(std::uint32_t u,
                                                               std::uint32_t a) const {
  if (sorted_contains(user_pos_.row(u), a)) return LinkSign::kPositive;
  if (sorted_contains(user_neg_.row(u), a)) return LinkSign::kNegative;
  return std::nullopt;
}

double SocialAttributeNetwork::node_weight(const NodeRef& node) const {
  require(node);
  return node.is_social() ? social_node_weights_[node.index] : attribute_node_weights_[node.index];
}

std::vector<NodeRef> SocialAttributeNetwork::neighbors(const NodeRef& node, LinkSign sign,
                                                       Restrict restrict) const {
  require(node);
  std::vector<NodeRef> out;
  if (node.is_social()) {
    for (auto v : social_neighbors(node.index)) out.push_back(NodeRef::social(v));
    if (restrict == Restrict::kAll) {
      for (auto a : attributes_of(node.index, sign)) out.push_back(NodeRef::attribute(a));
    }
  } else {
    for (auto u : members_of(node.index, sign)) out.push_back(NodeRef::social(u));
  }
  return out;
}

std::size_t SocialAttributeNetwork::degree(const NodeRef& node, LinkSign sign,
                                           Restrict restrict) const {
  require(node);
  if (!node.is_social()) return members_of(node.index, sign).size();
  std::size_t d = social_.row_size(node.index);
  if (restrict == Restrict::kAll) d += attributes_of(node.index, sign).size();
  return d;
}

std::vector<SocialEdge> SocialAttributeNetwork::social_edges() const {
  std::vector<SocialEdge> edges;
  edges.reserve(num_social_edges());
  for (std::uint32_t u = 0; u < num_social_; ++u) {
    auto row = social_.row(u);
    auto w = social_.row_weights(u);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (u < row[i]) edges.push_back({u, row[i], w[i]});
    }
  }
  return edges;
}

std::vector<AttributeLink> SocialAttributeNetwork::attribute_links() const {
  std::vector<AttributeLink> links;
  for (std::uint32_t u = 0; u < num_social_; ++u) {
    for (LinkSign sign : {LinkSign::kPositive, LinkSign::kNegative}) {
      auto row = attributes_of(u, sign);
      auto w = attribute_weights_of(u, sign);
      for (std::size_t i = 0; i < row.size(); ++i) links.push_back({u, row[i], sign, w[i]});
    }
  }
  return links;
}

std::optional<std::uint32_t> SocialAttributeNetwork::find_social(const std::string& name) const {
  auto it = social_index_.find(name);
  if (it == social_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> SocialAttributeNetwork::find_attribute(const std::string& name) const {
  auto it = attribute_index_.find(name);
  if (it == attribute_index_.end()) return std::nullopt;
  return it->second;
}

std::string SocialAttributeNetwork::node_name(const NodeRef& node) const {
  require(node);
  return node.is_social() ? social_names_[node.index] : attribute_names_[node.index];
}

bool SocialAttributeNetwork::same_universe(const SocialAttributeNetwork& other) const {
  return num_social_ == other.num_social_ && num_attributes_ == other.num_attributes_ &&
         social_names_ == other.social_names_ && attribute_names_ == other.attribute_names_;
}

RawNetworkData SocialAttributeNetwork::to_raw() const {
  RawNetworkData raw;
  raw.num_social = num_social_;
  raw.num_attributes = num_attributes_;
  raw.social = social_;
  raw.attribute_links = attribute_links();
  raw.mutex_pairs = mutex_pairs_;
  raw.social_node_weights = social_node_weights_;
  raw.attribute_node_weights = attribute_node_weights_;
  raw.social_names = social_names_;
  raw.attribute_names = attribute_names_;
  return raw;
}

// ---------------------------------------------------------------------------

NetworkBuilder::NetworkBuilder(std::uint32_t num_social, std::uint32_t num_attributes)
    : num_social_(num_social), num_attributes_(num_attributes) {}

NetworkBuilder::NetworkBuilder(const SocialAttributeNetwork& network)
    : num_social_(network.num_social()),
      num_attributes_(network.num_attributes()),
      social_edges_(network.social_edges()),
      attribute_links_(network.attribute_links()),
      mutex_pairs_(network.mutex_pairs()),
      social_names_(network.social_names()),
      attribute_names_(network.attribute_names()) {
  social_node_weights_.resize(num_social_);
  attribute_node_weights_.resize(num_attributes_);
  for (std::uint32_t u = 0; u < num_social_; ++u) {
    social_node_weights_[u] = network.node_weight(NodeRef::social(u));
  }
  for (std::uint32_t a = 0; a < num_attributes_; ++a) {
    attribute_node_weights_[a] = network.node_weight(NodeRef::attribute(a));
  }
}

NetworkBuilder& NetworkBuilder::add_social_edge(std::uint32_t u, std::uint32_t v, double weight) {
  if (u >= num_social_ || v >= num_social_) throw DomainError("social edge endpoint out of range");
  if (u == v) throw DomainError("self-loop on social node " + std::to_string(u));
  if (u > v) std::swap(u, v);
  social_edges_.push_back({u, v, weight});
  return *this;
}

NetworkBuilder& NetworkBuilder::add_attribute_link(std::uint32_t user, std::uint32_t attribute,
                                                   LinkSign sign, double weight) {
  if (user >= num_social_ || attribute >= num_attributes_) {
    throw DomainError("attribute link endpoint out of range");
  }
  attribute_links_.push_back({user, attribute, sign, weight});
  return *this;
}

NetworkBuilder& NetworkBuilder::add_mutex(std::uint32_t a, std::uint32_t b) {
  if (a >= num_attributes_ || b >= num_attributes_) throw DomainError("mutex attribute out of range");
  if (a == b) throw DomainError("attribute cannot be mutex with itself");
  if (a > b) std::swap(a, b);
  mutex_pairs_.push_back({a, b});
  return *this;
}

NetworkBuilder& NetworkBuilder::set_node_weight(const NodeRef& node, double weight) {
  auto& weights = node.is_social() ? social_node_weights_ : attribute_node_weights_;
  std::uint32_t n = node.is_social() ? num_social_ : num_attributes_;
  if (node.index >= n) throw DomainError("unknown node " + to_string(node));
  if (weights.empty()) weights.assign(n, 1.0);
  weights[node.index] = weight;
  return *this;
}

NetworkBuilder& NetworkBuilder::set_social_names(std::vector<std::string> names) {
  if (names.size() != num_social_) throw DomainError("social name count mismatch");
  social_names_ = std::move(names);
  return *this;
}

NetworkBuilder& NetworkBuilder::set_attribute_names(std::vector<std::string> names) {
  if (names.size() != num_attributes_) throw DomainError("attribute name count mismatch");
  attribute_names_ = std::move(names);
  return *this;
}

NetworkBuilder& NetworkBuilder::remove_attribute_links(std::uint32_t user) {
  std::erase_if(attribute_links_, [user](const AttributeLink& l) { return l.user == user; });
  return *this;
}

RawNetworkData NetworkBuilder::assemble() const {
  RawNetworkData raw;
  raw.num_social = num_social_;
  raw.num_attributes = num_attributes_;

  // Last write wins for repeated links.
  auto edges = social_edges_;
  std::stable_sort(edges.begin(), edges.end(), [](const SocialEdge& x, const SocialEdge& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  std::vector<Triplet> social;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i + 1 < edges.size() && edges[i + 1].u == edges[i].u && edges[i + 1].v == edges[i].v) continue;
    social.push_back({edges[i].u, edges[i].v, edges[i].weight});
    social.push_back({edges[i].v, edges[i].u, edges[i].weight});
  }
  raw.social = to_csr(num_social_, std::move(social));

  auto links = attribute_links_;
  std::stable_sort(links.begin(), links.end(), [](const AttributeLink& x, const AttributeLink& y) {
    if (x.user != y.user) return x.user < y.user;
    if (x.attribute != y.attribute) return x.attribute < y.attribute;
    return x.sign < y.sign;
  });
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    if (i + 1 < links.size() && links[i + 1].user == l.user &&
        links[i + 1].attribute == l.attribute && links[i + 1].sign == l.sign) {
      continue;
    }
    raw.attribute_links.push_back(l);
  }

  raw.mutex_pairs = mutex_pairs_;
  std::sort(raw.mutex_pairs.begin(), raw.mutex_pairs.end());
  raw.mutex_pairs.erase(std::unique(raw.mutex_pairs.begin(), raw.mutex_pairs.end()),
                        raw.mutex_pairs.end());

  raw.social_node_weights = social_node_weights_;
  raw.attribute_node_weights = attribute_node_weights_;
  raw.social_names = social_names_;
  raw.attribute_names = attribute_names_;
  return raw;
}

SocialAttributeNetwork NetworkBuilder::build() const {
  auto net = SocialAttributeNetwork::from_raw_unchecked(assemble());
  auto violations = validate(net);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << violations.size() << " invariant violation(s); first: " << violations.front().message;
    throw DomainError(msg.str());
  }
  return net;
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const SocialAttributeNetwork& net) {
  std::vector<Violation> out;
  const auto& adj = net.social_adjacency();
  const auto n = net.num_social();
  const auto m = net.num_attributes();
  auto bad_weight = [](double w) { return !std::isfinite(w) || w < 0.0; };

  for (std::uint32_t u = 0; u < n; ++u) {
    auto row = adj.row(u);
    auto w = adj.row_weights(u);
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::uint32_t v = row[i];
      if (v >= n) {
        out.push_back({Violation::Kind::kIndexOutOfRange, {NodeRef::social(u)},
                       "social neighbor " + std::to_string(v) + " of " + std::to_string(u) +
                           " out of range"});
        continue;
      }
      if (v == u) {
        out.push_back({Violation::Kind::kSelfLoop, {NodeRef::social(u)},
                       "self-loop on social node " + std::to_string(u)});
      }
      if (i > 0 && row[i - 1] == v) {
        out.push_back({Violation::Kind::kDuplicateLink, {NodeRef::social(u), NodeRef::social(v)},
                       "duplicate social edge " + std::to_string(u) + "-" + std::to_string(v)});
      }
      if (bad_weight(w[i])) {
        out.push_back({Violation::Kind::kBadWeight, {NodeRef::social(u), NodeRef::social(v)},
                       "bad weight on social edge " + std::to_string(u) + "-" + std::to_string(v)});
      }
      if (v != u && net.social_edge_weight(v, u) != w[i]) {
        out.push_back({Violation::Kind::kAsymmetric, {NodeRef::social(u), NodeRef::social(v)},
                       "social edge " + std::to_string(u) + "->" + std::to_string(v) +
                           " has no matching reverse entry"});
      }
    }
  }

  for (std::uint32_t u = 0; u < n; ++u) {
    auto pos = net.attributes_of(u, LinkSign::kPositive);
    auto neg = net.attributes_of(u, LinkSign::kNegative);
    for (LinkSign sign : {LinkSign::kPositive, LinkSign::kNegative}) {
      auto row = net.attributes_of(u, sign);
      auto w = net.attribute_weights_of(u, sign);
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0 && row[i - 1] == row[i]) {
          out.push_back({Violation::Kind::kDuplicateLink,
                         {NodeRef::social(u), NodeRef::attribute(row[i])},
                         "duplicate attribute link " + std::to_string(u) + "-" +
                             std::to_string(row[i])});
        }
        if (bad_weight(w[i])) {
          out.push_back({Violation::Kind::kBadWeight,
                         {NodeRef::social(u), NodeRef::attribute(row[i])},
                         "bad weight on attribute link " + std::to_string(u) + "-" +
                             std::to_string(row[i])});
        }
      }
    }
    std::vector<std::uint32_t> both;
    std::set_intersection(pos.begin(), pos.end(), neg.begin(), neg.end(), std::back_inserter(both));
    for (auto a : both) {
      out.push_back({Violation::Kind::kSignConflict, {NodeRef::social(u), NodeRef::attribute(a)},
                     "user " + net.social_name(u) + " is both positive and negative for " +
                         net.attribute_name(a)});
    }
  }

  // Mutex property: walk the smaller member list of each pair.
  for (const auto& pair : net.mutex_pairs()) {
    auto ma = net.members_of(pair.a, LinkSign::kPositive);
    auto mb = net.members_of(pair.b, LinkSign::kPositive);
    std::vector<std::uint32_t> both;
    std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(both));
    for (auto u : both) {
      out.push_back({Violation::Kind::kMutexViolation,
                     {NodeRef::social(u), NodeRef::attribute(pair.a), NodeRef::attribute(pair.b)},
                     "user " + net.social_name(u) + " positive for mutex pair (" +
                         net.attribute_name(pair.a) + ", " + net.attribute_name(pair.b) + ")"});
    }
  }

  for (std::uint32_t u = 0; u < n; ++u) {
    if (bad_weight(net.node_weight(NodeRef::social(u)))) {
      out.push_back({Violation::Kind::kBadWeight, {NodeRef::social(u)}, "bad node weight"});
    }
  }
  for (std::uint32_t a = 0; a < m; ++a) {
    if (bad_weight(net.node_weight(NodeRef::attribute(a)))) {
      out.push_back({Violation::Kind::kBadWeight, {NodeRef::attribute(a)}, "bad node weight"});
    }
  }
  return out;
}

SocialAttributeNetwork project_social(const SocialAttributeNetwork& network) {
  NetworkBuilder builder(network.num_social(), network.num_attributes());
  for (const auto& e : network.social_edges()) builder.add_social_edge(e.u, e.v, 1.0);
  builder.set_social_names(network.social_names());
  builder.set_attribute_names(network.attribute_names());
  return builder.build();
}

}  // namespace san
