#include "san/rwwr.hpp"

#include <cmath>
#include <string>

#include "san/errors.hpp"

namespace san {

void check_params(const RwwrParams& params) {
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
    throw DomainError("restart probability must lie in (0, 1], got " + std::to_string(params.alpha));
  }
  if (!(params.tol > 0.0)) throw DomainError("RWwR tolerance must be positive");
  if (params.max_iters < 1) throw DomainError("RWwR max_iters must be positive");
}

WalkGraph::WalkGraph(const SocialAttributeNetwork& network) : num_social_(network.num_social()) {
  const std::size_t n = network.num_social();
  offsets_.reserve(n + network.num_attributes() + 1);
  for (std::uint32_t u = 0; u < n; ++u) {
    // Social neighbors and positive attributes form one row.
    auto social = network.social_neighbors(u);
    auto sw = network.social_weights(u);
    auto attrs = network.attributes_of(u, LinkSign::kPositive);
    auto aw = network.attribute_weights_of(u, LinkSign::kPositive);
    double sum = 0.0;
    for (double w : sw) sum += w;
    for (double w : aw) sum += w;
    for (std::size_t i = 0; i < social.size(); ++i) {
      if (sw[i] <= 0.0) continue;
      targets_.push_back(social[i]);
      probabilities_.push_back(sw[i] / sum);
    }
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      if (aw[i] <= 0.0) continue;
      targets_.push_back(static_cast<std::uint32_t>(n + attrs[i]));
      probabilities_.push_back(aw[i] / sum);
    }
    offsets_.push_back(targets_.size());
  }
  for (std::uint32_t a = 0; a < network.num_attributes(); ++a) {
    auto members = network.members_of(a, LinkSign::kPositive);
    auto mw = network.member_weights_of(a, LinkSign::kPositive);
    double sum = 0.0;
    for (double w : mw) sum += w;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (mw[i] <= 0.0) continue;
      targets_.push_back(members[i]);
      probabilities_.push_back(mw[i] / sum);
    }
    offsets_.push_back(targets_.size());
  }
}

std::vector<double> WalkGraph::stationary(const NodeRef& source, const RwwrParams& params) const {
  check_params(params);
  const std::size_t n = size();
  const std::size_t s = flat_index(source);
  if (s >= n || (source.is_social() && source.index >= num_social_)) throw DomainError("unknown walk source " + to_string(source));

  std::vector<double> p(n, 0.0), next(n, 0.0);
  p[s] = 1.0;
  const double keep = 1.0 - params.alpha;
  double change = 0.0;
  for (int iter = 0; iter < params.max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double mass = p[u];
      if (mass == 0.0) continue;
      const std::size_t begin = offsets_[u];
      const std::size_t end = offsets_[u + 1];
      if (begin == end) {
        dangling += mass;
        continue;
      }
      for (std::size_t k = begin; k < end; ++k) next[targets_[k]] += keep * mass * probabilities_[k];
    }
    next[s] += params.alpha + keep * dangling;
    change = 0.0;
    for (std::size_t u = 0; u < n; ++u) change += std::abs(next[u] - p[u]);
    p.swap(next);
    if (change < params.tol) return p;
  }
  throw SolverError("RWwR did not converge in " + std::to_string(params.max_iters) + " iterations",
                    change);
}

std::vector<double> rwwr(const SocialAttributeNetwork& network, const NodeRef& source,
                         const RwwrParams& params) {
  return WalkGraph(network).stationary(source, params);
}

}  // namespace san
