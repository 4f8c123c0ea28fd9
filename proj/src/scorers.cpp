#include "san/scorers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "san/errors.hpp"
#include "san/parallel.hpp"

namespace san {

bool ScorerSpec::is_global() const {
  return kind == ScorerKind::kLowRank || kind == ScorerKind::kCnLowRank ||
         kind == ScorerKind::kAaLowRank || kind == ScorerKind::kRwwr;
}

bool ScorerSpec::uses_rank() const {
  return kind == ScorerKind::kLowRank || kind == ScorerKind::kCnLowRank ||
         kind == ScorerKind::kAaLowRank;
}

namespace {

struct KindInfo {
  ScorerKind kind;
  const char* id;
  const char* display;
};

constexpr KindInfo kKinds[] = {
    {ScorerKind::kCommonNeighbors, "cn", "CN-SAN"},
    {ScorerKind::kAdamicAdar, "aa", "AA-SAN"},
    {ScorerKind::kLowRank, "lra", "LRA-SAN"},
    {ScorerKind::kCnLowRank, "cn_lra", "CN+LRA-SAN"},
    {ScorerKind::kAaLowRank, "aa_lra", "AA+LRA-SAN"},
    {ScorerKind::kRwwr, "rwwr", "RWwR-SAN"},
    {ScorerKind::kBaseline, "baseline", "BASELINE"},
    {ScorerKind::kRandom, "random", "Random"},
};

const KindInfo& info(ScorerKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw DomainError("unknown scorer kind");
}

}  // namespace

std::string ScorerSpec::id() const { return info(kind).id; }
std::string ScorerSpec::display_name() const { return info(kind).display; }

std::string ScorerSpec::describe() const {
  std::ostringstream out;
  out << "scorer=" << id();
  if (uses_rank()) out << " rank=" << rank;
  if (kind == ScorerKind::kRwwr) out << " alpha=" << alpha;
  if (kind == ScorerKind::kRandom || uses_rank()) out << " seed=" << seed;
  return out.str();
}

ScorerKind parse_scorer_kind(const std::string& id) {
  for (const auto& k : kKinds) {
    if (id == k.id) return k.kind;
  }
  throw DomainError("unknown scorer '" + id + "'");
}

// ---------------------------------------------------------------------------

namespace {

// Social part of Gamma+: social neighbors of a user, positive members of an
// attribute.
std::span<const std::uint32_t> social_part(const SocialAttributeNetwork& net, const NodeRef& x) {
  return x.is_social() ? net.social_neighbors(x.index) : net.members_of(x.index, LinkSign::kPositive);
}

std::span<const std::uint32_t> attribute_part(const SocialAttributeNetwork& net,
                                              const NodeRef& x) {
  if (!x.is_social()) return {};
  return net.attributes_of(x.index, LinkSign::kPositive);
}

template <typename F>
void for_each_common(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, F&& f) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      f(a[i]);
      ++i;
      ++j;
    }
  }
}

void require_node(const SocialAttributeNetwork& net, const NodeRef& x) {
  if (!net.contains(x)) throw DomainError("unknown node " + to_string(x));
}

std::size_t social_degree(const SocialAttributeNetwork& net, const NodeRef& t) {
  return t.is_social() ? net.social_neighbors(t.index).size()
                       : net.members_of(t.index, LinkSign::kPositive).size();
}

std::size_t total_degree(const SocialAttributeNetwork& net, std::uint32_t user) {
  return net.social_neighbors(user).size() + net.attributes_of(user, LinkSign::kPositive).size();
}

}  // namespace

double cn_san(const SocialAttributeNetwork& net, const NodeRef& u, const NodeRef& v) {
  require_node(net, u);
  require_node(net, v);
  double score = 0.0;
  for_each_common(social_part(net, u), social_part(net, v),
                  [&](std::uint32_t t) { score += net.node_weight(NodeRef::social(t)); });
  for_each_common(attribute_part(net, u), attribute_part(net, v),
                  [&](std::uint32_t t) { score += net.node_weight(NodeRef::attribute(t)); });
  return score;
}

double aa_san(const SocialAttributeNetwork& net, const NodeRef& u, const NodeRef& v,
              std::size_t* skipped) {
  require_node(net, u);
  require_node(net, v);
  double score = 0.0;
  auto add = [&](double weight, std::size_t degree) {
    if (degree < 2) {
      if (skipped) ++*skipped;
      return;
    }
    score += weight / std::log(static_cast<double>(degree));
  };
  if (u.is_social() && v.is_social()) {
    for_each_common(social_part(net, u), social_part(net, v), [&](std::uint32_t t) {
      NodeRef node = NodeRef::social(t);
      add(net.node_weight(node), social_degree(net, node));
    });
    for_each_common(attribute_part(net, u), attribute_part(net, v), [&](std::uint32_t t) {
      NodeRef node = NodeRef::attribute(t);
      add(net.node_weight(node), social_degree(net, node));
    });
    return score;
  }
  if (u.is_social() == v.is_social()) {
    throw DomainError("AA-SAN is defined for social or user-attribute pairs only");
  }
  const NodeRef& user = u.is_social() ? u : v;
  const NodeRef& attr = u.is_social() ? v : u;
  for_each_common(net.social_neighbors(user.index), net.members_of(attr.index, LinkSign::kPositive),
                  [&](std::uint32_t t) {
                    add(net.node_weight(NodeRef::social(t)), total_degree(net, t));
                  });
  return score;
}

double baseline_attribute(const SocialAttributeNetwork& net, std::uint32_t attribute) {
  require_node(net, NodeRef::attribute(attribute));
  const std::size_t total = net.num_attribute_links(LinkSign::kPositive);
  if (total == 0) return 0.0;
  return static_cast<double>(net.members_of(attribute, LinkSign::kPositive).size()) /
         static_cast<double>(total);
}

// ---------------------------------------------------------------------------

SparseMatrix adjacency_matrix(const SocialAttributeNetwork& net) {
  const auto n = net.num_social();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * net.num_social_edges() + net.num_attribute_links(LinkSign::kPositive));
  for (std::uint32_t u = 0; u < n; ++u) {
    auto nb = net.social_neighbors(u);
    auto w = net.social_weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) triplets.emplace_back(u, nb[i], w[i]);
    auto attrs = net.attributes_of(u, LinkSign::kPositive);
    auto aw = net.attribute_weights_of(u, LinkSign::kPositive);
    for (std::size_t i = 0; i < attrs.size(); ++i) triplets.emplace_back(u, n + attrs[i], aw[i]);
  }
  SparseMatrix x(n, n + net.num_attributes());
  x.setFromTriplets(triplets.begin(), triplets.end());
  return x;
}

namespace {

enum class Local { kCommonNeighbors, kAdamicAdar };

// Row u of S_S or S_A accumulated into a dense buffer, then compacted.
SparseMatrix local_score_matrix(const SocialAttributeNetwork& net, Task task, Local local) {
  const std::uint32_t n = net.num_social();
  const std::uint32_t cols = task == Task::kSocialLink ? n : net.num_attributes();

  // Per-node contribution of a common neighbor.
  std::vector<double> social_factor(n), attribute_factor(net.num_attributes());
  for (std::uint32_t t = 0; t < n; ++t) {
    const double w = net.node_weight(NodeRef::social(t));
    if (local == Local::kCommonNeighbors) {
      social_factor[t] = w;
    } else {
      const std::size_t d = task == Task::kSocialLink ? net.social_neighbors(t).size()
                                                      : total_degree(net, t);
      social_factor[t] = d >= 2 ? w / std::log(static_cast<double>(d)) : 0.0;
    }
  }
  for (std::uint32_t a = 0; a < net.num_attributes(); ++a) {
    const double w = net.node_weight(NodeRef::attribute(a));
    const std::size_t d = net.members_of(a, LinkSign::kPositive).size();
    attribute_factor[a] = local == Local::kCommonNeighbors
                              ? w
                              : (d >= 2 ? w / std::log(static_cast<double>(d)) : 0.0);
  }

  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(n);
  parallel_for(n, [&](std::size_t row) {
    thread_local std::vector<double> acc;
    thread_local std::vector<char> seen;
    thread_local std::vector<std::uint32_t> touched;
    if (acc.size() != cols) {
      acc.assign(cols, 0.0);
      seen.assign(cols, 0);
    }
    touched.clear();
    const auto u = static_cast<std::uint32_t>(row);
    auto bump = [&](std::uint32_t col, double value) {
      if (!seen[col]) {
        seen[col] = 1;
        touched.push_back(col);
      }
      acc[col] += value;
    };
    for (auto t : net.social_neighbors(u)) {
      const double f = social_factor[t];
      if (task == Task::kSocialLink) {
        for (auto v : net.social_neighbors(t)) {
          if (v != u) bump(v, f);
        }
      } else {
        for (auto a : net.attributes_of(t, LinkSign::kPositive)) bump(a, f);
      }
    }
    if (task == Task::kSocialLink) {
      for (auto a : net.attributes_of(u, LinkSign::kPositive)) {
        const double f = attribute_factor[a];
        for (auto v : net.members_of(a, LinkSign::kPositive)) {
          if (v != u) bump(v, f);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& out = rows[row];
    out.reserve(touched.size());
    for (auto col : touched) {
      if (acc[col] != 0.0) out.emplace_back(col, acc[col]);
      acc[col] = 0.0;
      seen[col] = 0;
    }
  });

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (const auto& [col, value] : rows[u]) triplets.emplace_back(u, col, value);
  }
  SparseMatrix m(n, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

SparseMatrix cn_score_matrix(const SocialAttributeNetwork& net, Task task) {
  return local_score_matrix(net, task, Local::kCommonNeighbors);
}

SparseMatrix aa_score_matrix(const SocialAttributeNetwork& net, Task task) {
  return local_score_matrix(net, task, Local::kAdamicAdar);
}

double lra_score(const LowRankModel& model, const NodeRef& u, const NodeRef& v,
                 std::uint32_t num_social) {
  const NodeRef& row = u.is_social() ? u : v;
  const NodeRef& col = u.is_social() ? v : u;
  if (!row.is_social()) throw DomainError("low-rank scores need a social endpoint");
  Eigen::Index c = col.index;
  if (!col.is_social()) {
    if (model.source() == MatrixSource::kSocialScores) {
      throw DomainError("S_S model cannot score attribute links");
    }
    if (model.source() == MatrixSource::kAdjacency) c += num_social;
  } else if (model.source() == MatrixSource::kAttributeScores) {
    throw DomainError("S_A model cannot score social links");
  }
  return model.entry(row.index, c);
}

double rwwr_score(const SocialAttributeNetwork& net, const NodeRef& u, const NodeRef& v,
                  const RwwrParams& params, Task task) {
  require_node(net, u);
  require_node(net, v);
  WalkGraph graph(net);
  if (task == Task::kSocialLink) {
    const double puv = graph.stationary(u, params)[graph.flat_index(v)];
    const double pvu = graph.stationary(v, params)[graph.flat_index(u)];
    return 0.5 * (puv + pvu);
  }
  const NodeRef& user = u.is_social() ? u : v;
  const NodeRef& attr = u.is_social() ? v : u;
  return graph.stationary(user, params)[graph.flat_index(attr)];
}

int max_rank(const SocialAttributeNetwork& net, ScorerKind kind, Task task) {
  const int n = static_cast<int>(net.num_social());
  const int m = static_cast<int>(net.num_attributes());
  switch (kind) {
    case ScorerKind::kLowRank: return std::min(n, n + m);
    case ScorerKind::kCnLowRank:
    case ScorerKind::kAaLowRank: return task == Task::kSocialLink ? n : std::min(n, m);
    default: return 0;
  }
}

// ---------------------------------------------------------------------------

namespace {

void check_pair(const SocialAttributeNetwork& net, Task task, const CandidatePair& p) {
  require_node(net, p.u);
  require_node(net, p.v);
  if (task == Task::kSocialLink) {
    if (!p.u.is_social() || !p.v.is_social()) throw DomainError("social task needs social pairs");
    if (p.u == p.v) throw DomainError("self-pair " + to_string(p.u) + " is not a candidate");
  } else if (p.u.is_social() == p.v.is_social()) {
    throw DomainError("attribute task needs (user, attribute) pairs");
  }
}

NodeRef user_of(const CandidatePair& p) { return p.u.is_social() ? p.u : p.v; }
NodeRef other_of(const CandidatePair& p) { return p.u.is_social() ? p.v : p.u; }

std::vector<double> rwwr_batch(const SocialAttributeNetwork& net, Task task,
                               const std::vector<CandidatePair>& pairs, const RwwrParams& params) {
  WalkGraph graph(net);
  // source -> list of (pair index, slot) requests
  std::map<NodeRef, std::vector<std::pair<std::size_t, int>>> requests;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (task == Task::kSocialLink) {
      requests[pairs[i].u].emplace_back(i, 0);
      requests[pairs[i].v].emplace_back(i, 1);
    } else {
      requests[user_of(pairs[i])].emplace_back(i, 0);
    }
  }
  std::vector<NodeRef> sources;
  sources.reserve(requests.size());
  for (const auto& [s, _] : requests) sources.push_back(s);

  std::vector<double> first(pairs.size(), 0.0), second(pairs.size(), 0.0);
  parallel_for(sources.size(), [&](std::size_t k) {
    const NodeRef& s = sources[k];
    const auto p = graph.stationary(s, params);
    for (const auto& [i, slot] : requests.at(s)) {
      // Each (pair, slot) is requested by exactly one source.
      const NodeRef target = task == Task::kSocialLink ? (slot == 0 ? pairs[i].v : pairs[i].u)
                                                       : other_of(pairs[i]);
      (slot == 0 ? first : second)[i] = p[graph.flat_index(target)];
    }
  });
  std::vector<double> scores(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    scores[i] = task == Task::kSocialLink ? 0.5 * (first[i] + second[i]) : first[i];
  }
  return scores;
}

}  // namespace

ScoreTable score_pairs(const SocialAttributeNetwork& net, Task task,
                       const std::vector<CandidatePair>& pairs, const ScorerSpec& spec) {
  for (const auto& p : pairs) check_pair(net, task, p);
  ScoreTable table;
  table.task = task;
  table.scorer = spec;
  table.entries.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    table.entries[i].u = pairs[i].u;
    table.entries[i].v = pairs[i].v;
  }
  if (pairs.empty()) return table;

  auto fill = [&](auto&& score_one) {
    parallel_for(pairs.size(), [&](std::size_t i) { table.entries[i].score = score_one(pairs[i]); });
  };

  switch (spec.kind) {
    case ScorerKind::kCommonNeighbors:
      fill([&](const CandidatePair& p) { return cn_san(net, p.u, p.v); });
      break;
    case ScorerKind::kAdamicAdar:
      fill([&](const CandidatePair& p) { return aa_san(net, p.u, p.v); });
      break;
    case ScorerKind::kLowRank:
    case ScorerKind::kCnLowRank:
    case ScorerKind::kAaLowRank: {
      SvdOptions options;
      options.seed = spec.seed;
      LowRankModel model;
      if (spec.kind == ScorerKind::kLowRank) {
        model = fit_lra(adjacency_matrix(net), spec.rank, MatrixSource::kAdjacency, options);
      } else {
        const auto source = task == Task::kSocialLink ? MatrixSource::kSocialScores
                                                      : MatrixSource::kAttributeScores;
        const auto s = spec.kind == ScorerKind::kCnLowRank ? cn_score_matrix(net, task)
                                                           : aa_score_matrix(net, task);
        model = fit_lra(s, spec.rank, source, options);
      }
      fill([&](const CandidatePair& p) { return lra_score(model, p.u, p.v, net.num_social()); });
      break;
    }
    case ScorerKind::kRwwr: {
      RwwrParams params;
      params.alpha = spec.alpha;
      check_params(params);
      auto scores = rwwr_batch(net, task, pairs, params);
      for (std::size_t i = 0; i < pairs.size(); ++i) table.entries[i].score = scores[i];
      break;
    }
    case ScorerKind::kBaseline: {
      if (task != Task::kAttributeLink) throw DomainError("BASELINE scores attribute links only");
      fill([&](const CandidatePair& p) { return baseline_attribute(net, other_of(p).index); });
      break;
    }
    case ScorerKind::kRandom: {
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (auto& e : table.entries) e.score = unit(rng);
      break;
    }
  }
  return table;
}

ScoreTable score_candidates(const SocialAttributeNetwork& net, const CandidateSet& candidates,
                            const ScorerSpec& spec) {
  return score_pairs(net, candidates.task, candidates.pairs, spec);
}

void write_score_table(std::ostream& out, const ScoreTable& table,
                       const SocialAttributeNetwork& net) {
  out << "# " << table.scorer.describe() << " task=" << to_string(table.task) << "\n";
  out << "u,v,score\n";
  std::ostringstream line;
  line.precision(17);
  for (const auto& e : table.entries) {
    line.str("");
    line << net.node_name(e.u) << ',' << net.node_name(e.v) << ',' << e.score << '\n';
    out << line.str();
  }
}

}  // namespace san
